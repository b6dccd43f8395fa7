#ifndef DCX_DIAGRAM_HPP
#define DCX_DIAGRAM_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dcx/loops.hpp"
#include "dcx/triangulation.hpp"

namespace dcx {

// Arc diagrams on the 2-skeleton.  A diagram assigns to every edge orbit an
// ordered set of intersection points (positions 0..w-1 along the orbit
// direction) and to every triangle cell a set of disjoint arcs whose
// endpoints are point slots on the triangle's sides.  The diagram determines
// the surface: each tetrahedron piece is the disk bounded by a traced loop
// on the boundary sphere.

struct ArcEnd {
    int side = 0; // 0..2 within the triangle cell
    int pos = 0;  // position along the edge orbit
    auto operator<=>(const ArcEnd&) const = default;
};

struct Arc {
    ArcEnd a, b;
    void normalize() {
        if (b < a) std::swap(a, b);
    }
    auto operator<=>(const Arc&) const = default;
};

// Side s of a triangle cell, in the canonical face's labeling: the face has
// vertices u0<u1<u2 and sides (u0,u1), (u0,u2), (u1,u2).
inline std::array<std::array<int, 2>, 3> triangle_side_vertices(int face) {
    auto vs = face_vertices(face);
    return {{{vs[0], vs[1]}, {vs[0], vs[2]}, {vs[1], vs[2]}}};
}

struct Diagram {
    const Triangulation* tri = nullptr;
    std::vector<int> weights;           // per edge orbit
    std::vector<std::vector<Arc>> arcs; // per triangle cell, kept sorted

    bool operator==(const Diagram& o) const { return weights == o.weights && arcs == o.arcs; }

    void sort_arcs() {
        for (auto& v : arcs) {
            for (auto& a : v) a.normalize();
            std::sort(v.begin(), v.end());
        }
    }

    bool empty() const {
        for (int w : weights)
            if (w != 0) return false;
        return true;
    }

    std::string canonical_string() const {
        std::ostringstream os;
        os << "w";
        for (int w : weights) os << ':' << w;
        for (std::size_t c = 0; c < arcs.size(); ++c) {
            os << "|T" << c;
            for (const auto& a : arcs[c])
                os << ';' << a.a.side << ',' << a.a.pos << '-' << a.b.side << ',' << a.b.pos;
        }
        return os.str();
    }

    int side_orbit(int cell, int side) const {
        const auto& tc = tri->triangles()[static_cast<std::size_t>(cell)];
        auto sv = triangle_side_vertices(tc.face)[static_cast<std::size_t>(side)];
        return tri->edge_orbit_of(tc.tet, edge_index(sv[0], sv[1]));
    }

    // The local edge a side uses inside one of the (at most two) viewing
    // tets; `front` selects the canonical side.
    std::pair<int, int> side_local_edge(int cell, int side, bool front) const {
        const auto& tc = tri->triangles()[static_cast<std::size_t>(cell)];
        auto sv = triangle_side_vertices(tc.face)[static_cast<std::size_t>(side)];
        if (front) return {tc.tet, edge_index(sv[0], sv[1])};
        const auto& g = tri->gluing(tc.tet, tc.face);
        return {tc.back_tet, edge_index(g->perm[sv[0]], g->perm[sv[1]])};
    }
};

struct LocalPoint {
    int edge = 0; // local edge 0..5
    int lpos = 0; // position from the low-vertex end, in the tet's labeling
    auto operator<=>(const LocalPoint&) const = default;
};

struct ComponentStats {
    int pieces = 0;
    int arcs = 0;
    int points = 0; // |S ∩ T1|
    int boundary_arcs = 0;
    int boundary_circles = 0;
    int chi = 0;
    bool closed = true;
    bool two_sided = true;
    bool sphere = false;
    bool skewered = false; // sphere pierced twice by one edge, consecutively
    int genus = 0;         // orientable genus when two-sided
};

struct DiagramAnalysis {
    bool valid = false;
    std::string error;

    struct Piece {
        int tet = 0;
        int index_in_tet = 0;
        EdgeWeights6 local_weights{};
        PieceClass cls;
        int component = -1;
        std::vector<std::pair<int, int>> arcs; // (cell, arc index) around the loop
    };
    std::vector<Piece> pieces;
    std::vector<std::array<int, 4>> tet_piece_range; // unused slot kept small
    std::map<std::pair<int, int>, std::array<int, 2>> arc_pieces; // (cell,arc) -> piece on front/back side

    std::vector<ComponentStats> components;
    std::map<std::pair<int, int>, int> point_component; // (orbit,pos) -> component

    // Regions: per-tet complement regions, then global complement regions.
    std::vector<int> tet_region_offset;
    int num_tet_regions = 0;
    std::vector<int> tet_region_global;
    int num_global_regions = 0;
    std::vector<std::vector<std::array<int, 2>>> cell_region_parent; // per cell region: tet region on front/back
    std::vector<std::vector<std::vector<int>>> cell_region_arcs;     // arcs bounding each cell region
    std::vector<std::array<int, 2>> piece_flanks;                    // per piece: flanking tet regions

    bool strongly_separating = false;
    std::vector<int> region_color;

    int total_chi = 0;
    int total_genus = 0;
    int sphere_components = 0;
    bool closed = true;

    long long literal_complexity = 0;     // components - chi(S\T1) + sphere components
    long long represented_complexity = 0; // same, skewered spheres excluded

    int component_of_piece(int p) const { return pieces[static_cast<std::size_t>(p)].component; }
};

namespace detail {

struct UnionFind {
    std::vector<int> p;
    explicit UnionFind(int n) : p(static_cast<std::size_t>(n)) {
        for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = i;
    }
    int find(int x) {
        while (p[static_cast<std::size_t>(x)] != x) x = p[static_cast<std::size_t>(x)] = p[static_cast<std::size_t>(p[static_cast<std::size_t>(x)])];
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) p[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    }
};

// Boundary cycle of a triangle cell: slot k is followed by segment k.
struct CellBoundary {
    std::vector<ArcEnd> slots;
    std::map<ArcEnd, int> slot_index;
    std::array<int, 3> corner_segment{}; // per canonical face corner 0..2; -1 when no slots
    // per side: traversal run of slot indices (cycle order) and whether the
    // traversal increases the orbit position
    std::array<std::vector<int>, 3> side_run;
    std::array<bool, 3> side_orbit_increasing{};
};

inline CellBoundary cell_boundary(const Diagram& d, int cell) {
    CellBoundary cb;
    const auto& tri = *d.tri;
    const auto& tc = tri.triangles()[static_cast<std::size_t>(cell)];
    auto sides = triangle_side_vertices(tc.face);
    struct Step {
        int side;
        int from_vertex_slot; // 0 or 1 within the side's vertex pair
    };
    // traversal u0 -> u1 (side 0), u1 -> u2 (side 2), u2 -> u0 (side 1 reversed)
    std::array<Step, 3> order = {{{0, 0}, {2, 0}, {1, 1}}};
    std::array<int, 3> corner_before = {0, 1, 2};
    for (int s = 0; s < 3; ++s) {
        int side = order[static_cast<std::size_t>(s)].side;
        auto sv = sides[static_cast<std::size_t>(side)];
        auto [tet, ledge] = d.side_local_edge(cell, side, true);
        int orbit = tri.edge_orbit_of(tet, ledge);
        bool fwd = tri.edge_forward(tet, ledge);
        int w = d.weights[static_cast<std::size_t>(orbit)];
        int from_vertex = order[static_cast<std::size_t>(s)].from_vertex_slot == 0 ? sv[0] : sv[1];
        bool start_is_low = from_vertex == std::min(sv[0], sv[1]);
        bool orbit_increasing = (start_is_low == fwd);
        cb.side_orbit_increasing[static_cast<std::size_t>(side)] = orbit_increasing;
        cb.corner_segment[static_cast<std::size_t>(corner_before[static_cast<std::size_t>(s)])] = static_cast<int>(cb.slots.size()) - 1;
        for (int k = 0; k < w; ++k) {
            int opos = orbit_increasing ? k : w - 1 - k;
            cb.side_run[static_cast<std::size_t>(side)].push_back(static_cast<int>(cb.slots.size()));
            cb.slots.push_back({side, opos});
        }
    }
    int m = static_cast<int>(cb.slots.size());
    for (int i = 0; i < m; ++i) cb.slot_index[cb.slots[static_cast<std::size_t>(i)]] = i;
    for (int c = 0; c < 3; ++c) {
        int seg = cb.corner_segment[static_cast<std::size_t>(c)];
        cb.corner_segment[static_cast<std::size_t>(c)] = m == 0 ? -1 : ((seg % m) + m) % m;
    }
    return cb;
}

} // namespace detail

// Regions of one triangle cell's chord diagram.  Segments follow slots
// cyclically; with no slots there is one region.
struct CellRegions {
    int count = 0;
    std::vector<int> segment_region;
    std::vector<std::array<int, 2>> arc_sides; // per arc: region beyond each endpoint's following segment
    std::array<int, 3> corner_region{};
    // region of the interval between orbit positions k-1 and k on each side
    std::array<std::vector<int>, 3> side_interval_region;
};

inline CellRegions cell_regions(const Diagram& d, int cell) {
    CellRegions cr;
    auto cb = detail::cell_boundary(d, cell);
    int m = static_cast<int>(cb.slots.size());
    const auto& arcs = d.arcs[static_cast<std::size_t>(cell)];
    int na = static_cast<int>(arcs.size());
    if (m == 0) {
        cr.count = 1;
        cr.corner_region = {0, 0, 0};
        for (int s = 0; s < 3; ++s) cr.side_interval_region[static_cast<std::size_t>(s)] = {0};
        return cr;
    }
    std::vector<std::pair<int, int>> chords;
    chords.reserve(static_cast<std::size_t>(na));
    for (const auto& a : arcs) chords.emplace_back(cb.slot_index.at(a.a), cb.slot_index.at(a.b));
    auto inside = [&](int lo, int hi, double q) {
        if (lo < hi) return q > lo && q < hi;
        return q > lo || q < hi;
    };
    std::map<std::vector<bool>, int> region_of;
    cr.segment_region.assign(static_cast<std::size_t>(m), -1);
    for (int s = 0; s < m; ++s) {
        std::vector<bool> key(static_cast<std::size_t>(na));
        for (int c = 0; c < na; ++c)
            key[static_cast<std::size_t>(c)] =
                inside(chords[static_cast<std::size_t>(c)].first, chords[static_cast<std::size_t>(c)].second, s + 0.5);
        auto it = region_of.find(key);
        if (it == region_of.end()) it = region_of.emplace(key, static_cast<int>(region_of.size())).first;
        cr.segment_region[static_cast<std::size_t>(s)] = it->second;
    }
    cr.count = static_cast<int>(region_of.size());
    cr.arc_sides.resize(static_cast<std::size_t>(na));
    for (int c = 0; c < na; ++c) {
        int i = chords[static_cast<std::size_t>(c)].first;
        int j = chords[static_cast<std::size_t>(c)].second;
        cr.arc_sides[static_cast<std::size_t>(c)] = {cr.segment_region[static_cast<std::size_t>(i)],
                                                     cr.segment_region[static_cast<std::size_t>(j)]};
    }
    for (int c = 0; c < 3; ++c)
        cr.corner_region[static_cast<std::size_t>(c)] = cr.segment_region[static_cast<std::size_t>(cb.corner_segment[static_cast<std::size_t>(c)])];
    // side intervals in orbit coordinates
    auto prev = [&](int i) { return (i - 1 + m) % m; };
    auto sides = triangle_side_vertices(d.tri->triangles()[static_cast<std::size_t>(cell)].face);
    for (int s = 0; s < 3; ++s) {
        const auto& run = cb.side_run[static_cast<std::size_t>(s)];
        int w = static_cast<int>(run.size());
        auto& iv = cr.side_interval_region[static_cast<std::size_t>(s)];
        iv.assign(static_cast<std::size_t>(w + 1), -1);
        if (w == 0) {
            // the side lies inside the segment containing its starting corner
            int corner_vertex = (s == 1) ? sides[static_cast<std::size_t>(s)][1] : sides[static_cast<std::size_t>(s)][0];
            // corner index within the canonical face vertex order:
            auto fv = face_vertices(d.tri->triangles()[static_cast<std::size_t>(cell)].face);
            int ci = 0;
            for (int k = 0; k < 3; ++k)
                if (fv[static_cast<std::size_t>(k)] == corner_vertex) ci = k;
            iv[0] = cr.corner_region[static_cast<std::size_t>(ci)];
            continue;
        }
        bool inc = cb.side_orbit_increasing[static_cast<std::size_t>(s)];
        for (int k = 0; k <= w; ++k) {
            int seg;
            if (inc)
                seg = (k == 0) ? prev(run.front()) : run[static_cast<std::size_t>(k - 1)];
            else
                seg = (k == w) ? prev(run.front()) : run[static_cast<std::size_t>(w - 1 - k)];
            iv[static_cast<std::size_t>(k)] = cr.segment_region[static_cast<std::size_t>(seg)];
        }
    }
    return cr;
}

inline DiagramAnalysis analyze(const Diagram& d) {
    DiagramAnalysis an;
    const Triangulation& tri = *d.tri;
    int ntets = tri.num_tetrahedra();
    int ncells = tri.num_triangles();

    struct ViewedArc {
        int cell = -1;
        int arc = -1;
        int face = 0;
        bool front = true;
        LocalPoint p, q;
    };
    auto localize = [&](int cell, const ArcEnd& e, bool front) -> LocalPoint {
        auto [tet, ledge] = d.side_local_edge(cell, e.side, front);
        int orbit = tri.edge_orbit_of(tet, ledge);
        bool fwd = tri.edge_forward(tet, ledge);
        int w = d.weights[static_cast<std::size_t>(orbit)];
        return {ledge, fwd ? e.pos : w - 1 - e.pos};
    };

    std::vector<std::vector<ViewedArc>> tet_arcs(static_cast<std::size_t>(ntets));
    for (int c = 0; c < ncells; ++c) {
        const auto& tc = tri.triangles()[static_cast<std::size_t>(c)];
        for (int side = 0; side < (tc.boundary ? 1 : 2); ++side) {
            bool front = side == 0;
            int tet = front ? tc.tet : tc.back_tet;
            int face = front ? tc.face : tc.back_face;
            for (int ai = 0; ai < static_cast<int>(d.arcs[static_cast<std::size_t>(c)].size()); ++ai) {
                const auto& a = d.arcs[static_cast<std::size_t>(c)][static_cast<std::size_t>(ai)];
                tet_arcs[static_cast<std::size_t>(tet)].push_back(
                    {c, ai, face, front, localize(c, a.a, front), localize(c, a.b, front)});
            }
        }
    }

    for (int c = 0; c < ncells; ++c)
        for (int ai = 0; ai < static_cast<int>(d.arcs[static_cast<std::size_t>(c)].size()); ++ai)
            an.arc_pieces[{c, ai}] = {-1, -1};

    // --- trace pieces per tet ---
    for (int t = 0; t < ntets; ++t) {
        std::map<LocalPoint, std::vector<int>> at_point;
        for (int i = 0; i < static_cast<int>(tet_arcs[static_cast<std::size_t>(t)].size()); ++i) {
            at_point[tet_arcs[static_cast<std::size_t>(t)][static_cast<std::size_t>(i)].p].push_back(i);
            at_point[tet_arcs[static_cast<std::size_t>(t)][static_cast<std::size_t>(i)].q].push_back(i);
        }
        for (const auto& [pt, inc] : at_point) {
            (void)pt;
            if (inc.size() != 2) {
                an.error = "point with arc valence != 2 in tet " + std::to_string(t);
                return an;
            }
        }
        std::vector<bool> used(tet_arcs[static_cast<std::size_t>(t)].size(), false);
        int index_in_tet = 0;
        for (int s = 0; s < static_cast<int>(tet_arcs[static_cast<std::size_t>(t)].size()); ++s) {
            if (used[static_cast<std::size_t>(s)]) continue;
            int piece_id = static_cast<int>(an.pieces.size());
            DiagramAnalysis::Piece piece;
            piece.tet = t;
            piece.index_in_tet = index_in_tet++;
            int cur = s;
            LocalPoint enter = tet_arcs[static_cast<std::size_t>(t)][static_cast<std::size_t>(s)].p;
            std::set<LocalPoint> pts;
            while (!used[static_cast<std::size_t>(cur)]) {
                used[static_cast<std::size_t>(cur)] = true;
                const auto& va = tet_arcs[static_cast<std::size_t>(t)][static_cast<std::size_t>(cur)];
                piece.arcs.emplace_back(va.cell, va.arc);
                pts.insert(va.p);
                pts.insert(va.q);
                an.arc_pieces[{va.cell, va.arc}][va.front ? 0 : 1] = piece_id;
                LocalPoint exit = (va.p == enter) ? va.q : va.p;
                const auto& inc = at_point.at(exit);
                int nxt = (inc[0] == cur) ? inc[1] : inc[0];
                enter = exit;
                cur = nxt;
            }
            for (const auto& p : pts) piece.local_weights[static_cast<std::size_t>(p.edge)] += 1;
            StraightLoopPattern shape;
            shape.weights = piece.local_weights;
            shape.corners = static_cast<int>(pts.size());
            piece.cls = classify_piece(shape);
            an.pieces.push_back(std::move(piece));
        }
    }

    // --- components ---
    detail::UnionFind comp_uf(static_cast<int>(an.pieces.size()));
    for (const auto& [key, sides] : an.arc_pieces) {
        (void)key;
        if (sides[0] >= 0 && sides[1] >= 0) comp_uf.unite(sides[0], sides[1]);
    }
    std::map<int, int> comp_id;
    for (int p = 0; p < static_cast<int>(an.pieces.size()); ++p) {
        int r = comp_uf.find(p);
        auto it = comp_id.find(r);
        if (it == comp_id.end()) it = comp_id.emplace(r, static_cast<int>(comp_id.size())).first;
        an.pieces[static_cast<std::size_t>(p)].component = it->second;
    }
    an.components.assign(comp_id.size(), {});
    for (const auto& p : an.pieces) ++an.components[static_cast<std::size_t>(p.component)].pieces;

    auto arc_component = [&](int c, int ai) {
        auto sides = an.arc_pieces.at({c, ai});
        int p = sides[0] >= 0 ? sides[0] : sides[1];
        return an.pieces[static_cast<std::size_t>(p)].component;
    };

    for (int c = 0; c < ncells; ++c) {
        bool bdry = tri.triangles()[static_cast<std::size_t>(c)].boundary;
        for (int ai = 0; ai < static_cast<int>(d.arcs[static_cast<std::size_t>(c)].size()); ++ai) {
            auto& cs = an.components[static_cast<std::size_t>(arc_component(c, ai))];
            ++cs.arcs;
            if (bdry) {
                ++cs.boundary_arcs;
                cs.closed = false;
            }
        }
    }

    // points per component
    {
        std::map<std::pair<int, int>, int> seen;
        for (int c = 0; c < ncells; ++c)
            for (int ai = 0; ai < static_cast<int>(d.arcs[static_cast<std::size_t>(c)].size()); ++ai) {
                const auto& a = d.arcs[static_cast<std::size_t>(c)][static_cast<std::size_t>(ai)];
                int comp = arc_component(c, ai);
                for (const auto& e : {a.a, a.b}) seen[{d.side_orbit(c, e.side), e.pos}] = comp;
            }
        an.point_component = std::move(seen);
        for (const auto& [pt, comp] : an.point_component) {
            (void)pt;
            ++an.components[static_cast<std::size_t>(comp)].points;
        }
        long long expected = 0;
        for (int w : d.weights) expected += w;
        if (static_cast<long long>(an.point_component.size()) != expected) {
            an.error = "edge points not all covered by arcs";
            return an;
        }
    }

    // boundary circles: trace boundary arcs through boundary points
    {
        std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> at_bpoint;
        for (int c = 0; c < ncells; ++c) {
            if (!tri.triangles()[static_cast<std::size_t>(c)].boundary) continue;
            for (int ai = 0; ai < static_cast<int>(d.arcs[static_cast<std::size_t>(c)].size()); ++ai) {
                const auto& a = d.arcs[static_cast<std::size_t>(c)][static_cast<std::size_t>(ai)];
                for (const auto& e : {a.a, a.b}) at_bpoint[{d.side_orbit(c, e.side), e.pos}].push_back({c, ai});
            }
        }
        for (const auto& [pt, incs] : at_bpoint) {
            (void)pt;
            if (incs.size() != 2) {
                an.error = "boundary point with arc valence != 2";
                return an;
            }
        }
        std::set<std::pair<int, int>> used;
        for (const auto& [start_pt, start_incs] : at_bpoint) {
            (void)start_pt;
            for (auto start : start_incs) {
                if (used.count(start)) continue;
                std::pair<int, int> cur = start;
                const auto& a0 = d.arcs[static_cast<std::size_t>(cur.first)][static_cast<std::size_t>(cur.second)];
                std::pair<int, int> enter{d.side_orbit(cur.first, a0.a.side), a0.a.pos};
                int comp = arc_component(cur.first, cur.second);
                while (!used.count(cur)) {
                    used.insert(cur);
                    const auto& a = d.arcs[static_cast<std::size_t>(cur.first)][static_cast<std::size_t>(cur.second)];
                    std::pair<int, int> pa{d.side_orbit(cur.first, a.a.side), a.a.pos};
                    std::pair<int, int> pb{d.side_orbit(cur.first, a.b.side), a.b.pos};
                    std::pair<int, int> exit = (pa == enter) ? pb : pa;
                    const auto& inc = at_bpoint.at(exit);
                    cur = (inc[0] == cur) ? inc[1] : inc[0];
                    enter = exit;
                }
                ++an.components[static_cast<std::size_t>(comp)].boundary_circles;
            }
        }
    }

    for (auto& cs : an.components) {
        cs.chi = cs.points - cs.arcs + cs.pieces;
        if (!cs.closed) an.closed = false;
        an.total_chi += cs.chi;
    }

    // skewered spheres: sphere component with exactly two points, adjacent on
    // one edge orbit (two-sidedness of a sphere is automatic)
    {
        std::map<int, std::vector<std::pair<int, int>>> comp_points;
        for (const auto& [pt, comp] : an.point_component) comp_points[comp].push_back(pt);
        for (int cidx = 0; cidx < static_cast<int>(an.components.size()); ++cidx) {
            auto& cs = an.components[static_cast<std::size_t>(cidx)];
            if (!cs.closed || cs.chi != 2 || cs.points != 2) continue;
            const auto& pts = comp_points[cidx];
            if (pts.size() == 2 && pts[0].first == pts[1].first && std::abs(pts[0].second - pts[1].second) == 1)
                cs.skewered = true;
        }
    }

    // --- regions ---
    std::vector<CellRegions> cregions(static_cast<std::size_t>(ncells));
    for (int c = 0; c < ncells; ++c) cregions[static_cast<std::size_t>(c)] = cell_regions(d, c);

    auto cell_of = [&](int t, int f) { return tri.triangle_of(t, f); };
    std::vector<std::array<int, 4>> face_region_base(static_cast<std::size_t>(ntets));
    std::vector<int> tet_nodes(static_cast<std::size_t>(ntets), 0);
    for (int t = 0; t < ntets; ++t) {
        int n = 0;
        for (int f = 0; f < 4; ++f) {
            face_region_base[static_cast<std::size_t>(t)][static_cast<std::size_t>(f)] = n;
            n += cregions[static_cast<std::size_t>(cell_of(t, f))].count;
        }
        tet_nodes[static_cast<std::size_t>(t)] = n;
    }

    std::vector<detail::UnionFind> tet_uf;
    tet_uf.reserve(static_cast<std::size_t>(ntets));
    for (int t = 0; t < ntets; ++t) tet_uf.emplace_back(tet_nodes[static_cast<std::size_t>(t)]);
    auto face_region_node = [&](int t, int f, int region) {
        return face_region_base[static_cast<std::size_t>(t)][static_cast<std::size_t>(f)] + region;
    };

    // Merge across the six local edges of every tet: interval k on the edge is
    // shared by the two adjacent faces.
    for (int t = 0; t < ntets; ++t) {
        for (int le = 0; le < 6; ++le) {
            auto fs = faces_of_edge(le);
            int orbit = tri.edge_orbit_of(t, le);
            bool fwd = tri.edge_forward(t, le);
            int w = d.weights[static_cast<std::size_t>(orbit)];
            for (int k = 0; k <= w; ++k) {
                int orbit_iv = fwd ? k : w - k;
                std::array<int, 2> nodes{-1, -1};
                for (int fi = 0; fi < 2; ++fi) {
                    int f = fs[static_cast<std::size_t>(fi)];
                    int c = cell_of(t, f);
                    const auto& tc = tri.triangles()[static_cast<std::size_t>(c)];
                    bool front = tc.tet == t && tc.face == f;
                    int side = -1;
                    for (int s = 0; s < 3; ++s) {
                        auto [tt, ll] = d.side_local_edge(c, s, front);
                        if (tt == t && ll == le) side = s;
                    }
                    if (side < 0) {
                        an.error = "side lookup failed";
                        return an;
                    }
                    int reg = cregions[static_cast<std::size_t>(c)]
                                  .side_interval_region[static_cast<std::size_t>(side)][static_cast<std::size_t>(
                                      cregions[static_cast<std::size_t>(c)].count == 1 ? 0 : orbit_iv)];
                    if (cregions[static_cast<std::size_t>(c)].count == 1) reg = 0;
                    nodes[static_cast<std::size_t>(fi)] = face_region_node(t, f, reg);
                }
                tet_uf[static_cast<std::size_t>(t)].unite(nodes[0], nodes[1]);
            }
        }
    }

    an.tet_region_offset.assign(static_cast<std::size_t>(ntets + 1), 0);
    std::vector<std::map<int, int>> tet_root_id(static_cast<std::size_t>(ntets));
    for (int t = 0; t < ntets; ++t) {
        auto& uf = tet_uf[static_cast<std::size_t>(t)];
        auto& roots = tet_root_id[static_cast<std::size_t>(t)];
        for (int n = 0; n < tet_nodes[static_cast<std::size_t>(t)]; ++n) {
            int r = uf.find(n);
            if (!roots.count(r)) roots.emplace(r, static_cast<int>(roots.size()));
        }
        an.tet_region_offset[static_cast<std::size_t>(t + 1)] =
            an.tet_region_offset[static_cast<std::size_t>(t)] + static_cast<int>(roots.size());
    }
    an.num_tet_regions = an.tet_region_offset[static_cast<std::size_t>(ntets)];
    auto tet_region_of = [&](int t, int f, int cell_reg) {
        int node = face_region_node(t, f, cell_reg);
        int r = tet_uf[static_cast<std::size_t>(t)].find(node);
        return an.tet_region_offset[static_cast<std::size_t>(t)] + tet_root_id[static_cast<std::size_t>(t)].at(r);
    };

    an.cell_region_parent.assign(static_cast<std::size_t>(ncells), {});
    an.cell_region_arcs.assign(static_cast<std::size_t>(ncells), {});
    for (int c = 0; c < ncells; ++c) {
        const auto& tc = tri.triangles()[static_cast<std::size_t>(c)];
        int cnt = cregions[static_cast<std::size_t>(c)].count;
        an.cell_region_parent[static_cast<std::size_t>(c)].assign(static_cast<std::size_t>(cnt), {-1, -1});
        an.cell_region_arcs[static_cast<std::size_t>(c)].assign(static_cast<std::size_t>(cnt), {});
        for (int r = 0; r < cnt; ++r) {
            an.cell_region_parent[static_cast<std::size_t>(c)][static_cast<std::size_t>(r)][0] = tet_region_of(tc.tet, tc.face, r);
            if (!tc.boundary)
                an.cell_region_parent[static_cast<std::size_t>(c)][static_cast<std::size_t>(r)][1] =
                    tet_region_of(tc.back_tet, tc.back_face, r);
        }
        for (int ai = 0; ai < static_cast<int>(d.arcs[static_cast<std::size_t>(c)].size()); ++ai) {
            auto sides = cregions[static_cast<std::size_t>(c)].arc_sides[static_cast<std::size_t>(ai)];
            an.cell_region_arcs[static_cast<std::size_t>(c)][static_cast<std::size_t>(sides[0])].push_back(ai);
            if (sides[1] != sides[0])
                an.cell_region_arcs[static_cast<std::size_t>(c)][static_cast<std::size_t>(sides[1])].push_back(ai);
        }
    }

    an.piece_flanks.assign(an.pieces.size(), {-1, -1});
    for (int p = 0; p < static_cast<int>(an.pieces.size()); ++p) {
        const auto& piece = an.pieces[static_cast<std::size_t>(p)];
        auto [c, ai] = piece.arcs.front();
        const auto& tc = tri.triangles()[static_cast<std::size_t>(c)];
        bool front = an.arc_pieces.at({c, ai})[0] == p;
        int t = front ? tc.tet : tc.back_tet;
        int f = front ? tc.face : tc.back_face;
        auto sides = cregions[static_cast<std::size_t>(c)].arc_sides[static_cast<std::size_t>(ai)];
        an.piece_flanks[static_cast<std::size_t>(p)] = {tet_region_of(t, f, sides[0]), tet_region_of(t, f, sides[1])};
    }

    // global regions
    {
        detail::UnionFind guf(an.num_tet_regions);
        for (int c = 0; c < ncells; ++c) {
            const auto& tc = tri.triangles()[static_cast<std::size_t>(c)];
            if (tc.boundary) continue;
            for (const auto& pr : an.cell_region_parent[static_cast<std::size_t>(c)]) guf.unite(pr[0], pr[1]);
        }
        std::map<int, int> roots;
        an.tet_region_global.assign(static_cast<std::size_t>(an.num_tet_regions), -1);
        for (int n = 0; n < an.num_tet_regions; ++n) {
            int r = guf.find(n);
            if (!roots.count(r)) roots.emplace(r, static_cast<int>(roots.size()));
            an.tet_region_global[static_cast<std::size_t>(n)] = roots.at(r);
        }
        an.num_global_regions = static_cast<int>(roots.size());
    }

    // strong separation: flanking regions of every piece get opposite colors
    {
        std::vector<int> color(static_cast<std::size_t>(an.num_global_regions), -1);
        bool ok = true;
        std::vector<std::vector<int>> adj(static_cast<std::size_t>(an.num_global_regions));
        for (const auto& fl : an.piece_flanks) {
            int a = an.tet_region_global[static_cast<std::size_t>(fl[0])];
            int b = an.tet_region_global[static_cast<std::size_t>(fl[1])];
            if (a == b) ok = false;
            adj[static_cast<std::size_t>(a)].push_back(b);
            adj[static_cast<std::size_t>(b)].push_back(a);
        }
        for (int s = 0; s < an.num_global_regions && ok; ++s) {
            if (color[static_cast<std::size_t>(s)] >= 0) continue;
            color[static_cast<std::size_t>(s)] = 0;
            std::vector<int> stack{s};
            while (!stack.empty() && ok) {
                int u = stack.back();
                stack.pop_back();
                for (int v : adj[static_cast<std::size_t>(u)]) {
                    if (color[static_cast<std::size_t>(v)] < 0) {
                        color[static_cast<std::size_t>(v)] = 1 - color[static_cast<std::size_t>(u)];
                        stack.push_back(v);
                    } else if (color[static_cast<std::size_t>(v)] == color[static_cast<std::size_t>(u)]) {
                        ok = false;
                    }
                }
            }
        }
        an.strongly_separating = ok;
        if (ok) an.region_color = std::move(color);
    }

    // two-sidedness per component: sides of pieces, glued along arcs
    {
        int n2 = 2 * static_cast<int>(an.pieces.size());
        detail::UnionFind suf(n2);
        auto side_slot = [&](int piece, int tet_region) -> int {
            const auto& fl = an.piece_flanks[static_cast<std::size_t>(piece)];
            return fl[0] == tet_region ? 2 * piece : 2 * piece + 1;
        };
        for (int c = 0; c < ncells; ++c) {
            const auto& tc = tri.triangles()[static_cast<std::size_t>(c)];
            if (tc.boundary) continue;
            for (int ai = 0; ai < static_cast<int>(d.arcs[static_cast<std::size_t>(c)].size()); ++ai) {
                auto ap = an.arc_pieces.at({c, ai});
                auto sides = cregions[static_cast<std::size_t>(c)].arc_sides[static_cast<std::size_t>(ai)];
                for (int k = 0; k < 2; ++k) {
                    int creg = sides[static_cast<std::size_t>(k)];
                    int trf = tet_region_of(tc.tet, tc.face, creg);
                    int trb = tet_region_of(tc.back_tet, tc.back_face, creg);
                    suf.unite(side_slot(ap[0], trf), side_slot(ap[1], trb));
                }
            }
        }
        for (int p = 0; p < static_cast<int>(an.pieces.size()); ++p)
            if (suf.find(2 * p) == suf.find(2 * p + 1))
                an.components[static_cast<std::size_t>(an.pieces[static_cast<std::size_t>(p)].component)].two_sided = false;
    }

    for (auto& cs : an.components) {
        if (cs.closed) {
            cs.genus = cs.two_sided && (2 - cs.chi) % 2 == 0 ? (2 - cs.chi) / 2 : 2 - cs.chi;
            cs.sphere = cs.two_sided && cs.chi == 2;
        } else {
            int b = cs.boundary_circles;
            cs.genus = cs.two_sided && (2 - cs.chi - b) % 2 == 0 ? (2 - cs.chi - b) / 2 : std::max(0, 2 - cs.chi - b);
            cs.sphere = false;
        }
        an.total_genus += std::max(0, cs.genus);
        if (cs.sphere) ++an.sphere_components;
        an.literal_complexity += 1 - (cs.chi - cs.points) + (cs.sphere ? 1 : 0);
        if (!cs.skewered) an.represented_complexity += 1 - (cs.chi - cs.points);
    }

    an.valid = true;
    return an;
}

} // namespace dcx

#endif
