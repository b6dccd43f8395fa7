#ifndef DCX_NORMAL_HPP
#define DCX_NORMAL_HPP

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "dcx/diagram.hpp"

namespace dcx {

struct BudgetExceeded : std::runtime_error {
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

// Partition index of the vertex pair {a,b}: 0 for {0,1}|{2,3}, 1 for
// {0,2}|{1,3}, 2 for {0,3}|{1,2}.
inline int partition_of_pair(int a, int b) {
    if (a > b) std::swap(a, b);
    if (a == 0) return b - 1;      // {0,1}->0, {0,2}->1, {0,3}->2
    if (a == 1) return b == 2 ? 2 : 1; // {1,2}->2, {1,3}->1
    return 0;                      // {2,3}->0
}

// Quad of partition p crosses edge e iff the edge's endpoints lie in
// different classes of p.
inline bool quad_crosses_edge(int p, int e) {
    int a = kEdgeVerts[static_cast<std::size_t>(e)][0];
    int b = kEdgeVerts[static_cast<std::size_t>(e)][1];
    return partition_of_pair(a, b) != p;
}

// Edge weight profile of the exceptional disks.
inline EdgeWeights6 octagon_weights(int p) {
    EdgeWeights6 w{};
    for (int e = 0; e < 6; ++e) w[static_cast<std::size_t>(e)] = quad_crosses_edge(p, e) ? 1 : 2;
    return w;
}

// Dodecagons come in two mirror labelings per partition: the partition pair
// carries weight two, one of the other pairs weight three, the last weight
// one.  mirror selects which.
inline EdgeWeights6 dodecagon_weights(int p, int mirror) {
    EdgeWeights6 w{};
    std::array<int, 2> others{};
    int n = 0;
    for (int q = 0; q < 3; ++q)
        if (q != p) others[static_cast<std::size_t>(n++)] = q;
    int p3 = others[static_cast<std::size_t>(mirror)];
    for (int q = 0; q < 3; ++q) {
        int val = q == p ? 2 : (q == p3 ? 3 : 1);
        for (int e : kOppositeEdgePairs[static_cast<std::size_t>(q)])
            w[static_cast<std::size_t>(e)] = val;
    }
    return w;
}

struct TetCoordinates {
    std::array<int, 4> tri{};
    int quad_type = -1; // -1 when no quads
    int quad_count = 0;
    auto operator<=>(const TetCoordinates&) const = default;
};

struct ExcDisk {
    int tet = 0;
    PieceClass::Kind kind = PieceClass::Kind::Octagon; // Octagon or Dodecagon
    int partition = 0;
    int mirror = 0; // dodecagon labelings only
    auto operator<=>(const ExcDisk&) const = default;

    int index() const { return kind == PieceClass::Kind::Octagon ? 1 : 2; }
    EdgeWeights6 weights() const {
        return kind == PieceClass::Kind::Octagon ? octagon_weights(partition) : dodecagon_weights(partition, mirror);
    }
};

// An unknotted tube joining two disk pieces of one tetrahedron through a
// complementary region of that tetrahedron's disk system.
struct Tube {
    int tet = 0;
    int piece_a = 0; // index_in_tet values
    int piece_b = 0;
    int region = 0; // tet-local complement region index
    int rank = 0;
    auto operator<=>(const Tube&) const = default;
};

struct SurfaceComponent {
    int chi = 0;
    int points = 0;
    int genus = 0;
    int boundary_circles = 0;
    bool closed = true;
    bool sphere = false;
    bool two_sided = true;
};

struct NormalSurface {
    std::vector<TetCoordinates> coords;
    std::vector<ExcDisk> disks;
    std::vector<Tube> tubes;

    Diagram diagram; // transverse diagram; tubes live inside tetrahedra
    DiagramAnalysis analysis;

    std::vector<int> weights; // per edge orbit
    std::vector<SurfaceComponent> components;
    int index = 0;
    int chi = 0;
    int total_genus = 0;
    int sphere_components = 0;
    long long complexity = 0;
    bool closed = true;
    bool strongly_separating = false;

    auto key() const { return std::tie(weights, coords, disks, tubes); }
    bool operator<(const NormalSurface& o) const { return key() < o.key(); }
    bool operator==(const NormalSurface& o) const { return key() == o.key(); }
};

// ---------------------------------------------------------------------------

// Arc count at corner v of face f of tet t (v a vertex of the face).
inline int corner_arcs(const TetCoordinates& tc, const std::vector<ExcDisk>& disks, int t, int f, int v) {
    int c = tc.tri[static_cast<std::size_t>(v)];
    if (tc.quad_type >= 0 && partition_of_pair(v, f) == tc.quad_type) c += tc.quad_count;
    for (const auto& d : disks) {
        if (d.tet != t) continue;
        auto cc = corner_count(d.weights(), f, v);
        c += cc ? *cc : 0;
    }
    return c;
}

inline EdgeWeights6 local_weights(const TetCoordinates& tc, const std::vector<ExcDisk>& disks, int t) {
    EdgeWeights6 w{};
    for (int e = 0; e < 6; ++e) {
        int a = kEdgeVerts[static_cast<std::size_t>(e)][0];
        int b = kEdgeVerts[static_cast<std::size_t>(e)][1];
        int x = tc.tri[static_cast<std::size_t>(a)] + tc.tri[static_cast<std::size_t>(b)];
        if (tc.quad_type >= 0 && quad_crosses_edge(tc.quad_type, e)) x += tc.quad_count;
        for (const auto& d : disks)
            if (d.tet == t) x += d.weights()[static_cast<std::size_t>(e)];
        w[static_cast<std::size_t>(e)] = x;
    }
    return w;
}

// One matching equation: counts of a normal arc type agree from both sides
// of an interior triangle.
struct MatchingEquation {
    int cell = 0;
    int corner = 0; // vertex of the canonical face
    // coefficient list: (tet, coordinate 0..6, sign); coordinate 0..3 tri, 4..6 quad
    std::vector<std::array<int, 3>> terms;
};

inline std::vector<MatchingEquation> matching_system(const Triangulation& tri) {
    std::vector<MatchingEquation> rows;
    for (int c = 0; c < tri.num_triangles(); ++c) {
        const auto& tc = tri.triangles()[static_cast<std::size_t>(c)];
        if (tc.boundary) continue;
        const auto& g = tri.gluing(tc.tet, tc.face);
        for (int v : face_vertices(tc.face)) {
            MatchingEquation eq;
            eq.cell = c;
            eq.corner = v;
            eq.terms.push_back({tc.tet, v, 1});
            eq.terms.push_back({tc.tet, 4 + partition_of_pair(v, tc.face), 1});
            int pv = g->perm[v];
            eq.terms.push_back({tc.back_tet, pv, -1});
            eq.terms.push_back({tc.back_tet, 4 + partition_of_pair(pv, tc.back_face), -1});
            rows.push_back(std::move(eq));
        }
    }
    return rows;
}

inline bool satisfies_matching(const Triangulation& tri, const std::vector<TetCoordinates>& coords,
                               const std::vector<ExcDisk>& disks) {
    for (int c = 0; c < tri.num_triangles(); ++c) {
        const auto& tc = tri.triangles()[static_cast<std::size_t>(c)];
        if (tc.boundary) continue;
        const auto& g = tri.gluing(tc.tet, tc.face);
        for (int v : face_vertices(tc.face)) {
            int front = corner_arcs(coords[static_cast<std::size_t>(tc.tet)], disks, tc.tet, tc.face, v);
            int back = corner_arcs(coords[static_cast<std::size_t>(tc.back_tet)], disks, tc.back_tet, tc.back_face, g->perm[v]);
            if (front != back) return false;
        }
    }
    return true;
}

// Builds the transverse diagram from corner counts: rank-i arcs at each
// corner join the i-th points nearest the corner vertex on both edges.
inline Diagram build_diagram(const Triangulation& tri, const std::vector<TetCoordinates>& coords,
                             const std::vector<ExcDisk>& disks) {
    Diagram d;
    d.tri = &tri;
    d.weights.assign(static_cast<std::size_t>(tri.num_edges()), 0);
    for (int e = 0; e < tri.num_edges(); ++e) {
        const auto& inc = tri.edges()[static_cast<std::size_t>(e)].incidences.front();
        d.weights[static_cast<std::size_t>(e)] =
            local_weights(coords[static_cast<std::size_t>(inc.tet)], disks, inc.tet)[static_cast<std::size_t>(inc.edge)];
    }
    d.arcs.assign(static_cast<std::size_t>(tri.num_triangles()), {});
    for (int c = 0; c < tri.num_triangles(); ++c) {
        const auto& tc = tri.triangles()[static_cast<std::size_t>(c)];
        auto sides = triangle_side_vertices(tc.face);
        auto fv = face_vertices(tc.face);
        for (int ci = 0; ci < 3; ++ci) {
            int v = fv[static_cast<std::size_t>(ci)];
            int cnt = corner_arcs(coords[static_cast<std::size_t>(tc.tet)], disks, tc.tet, tc.face, v);
            // the two sides at this corner
            std::array<int, 2> at_sides{};
            int n = 0;
            for (int s = 0; s < 3; ++s) {
                auto sv = sides[static_cast<std::size_t>(s)];
                if (sv[0] == v || sv[1] == v) at_sides[static_cast<std::size_t>(n++)] = s;
            }
            for (int i = 0; i < cnt; ++i) {
                Arc a;
                ArcEnd* ends[2] = {&a.a, &a.b};
                for (int k = 0; k < 2; ++k) {
                    int s = at_sides[static_cast<std::size_t>(k)];
                    auto sv = sides[static_cast<std::size_t>(s)];
                    auto [tet, ledge] = std::pair<int, int>{tc.tet, edge_index(sv[0], sv[1])};
                    int orbit = tri.edge_orbit_of(tet, ledge);
                    bool fwd = tri.edge_forward(tet, ledge);
                    int w = d.weights[static_cast<std::size_t>(orbit)];
                    // i-th point nearest v in the tet's local ordering
                    int a0 = kEdgeVerts[static_cast<std::size_t>(ledge)][0];
                    int lpos = (v == a0) ? i : w - 1 - i;
                    ends[k]->side = s;
                    ends[k]->pos = fwd ? lpos : w - 1 - lpos;
                }
                a.normalize();
                d.arcs[static_cast<std::size_t>(c)].push_back(a);
            }
        }
        std::sort(d.arcs[static_cast<std::size_t>(c)].begin(), d.arcs[static_cast<std::size_t>(c)].end());
    }
    return d;
}

// Verifies that the traced pieces of each tetrahedron are exactly the
// intended triangles, quads, and exceptional disks.
inline bool verify_pieces(const Triangulation& tri, const std::vector<TetCoordinates>& coords,
                          const std::vector<ExcDisk>& disks, const DiagramAnalysis& an) {
    std::map<int, std::map<PieceClass, int>> expected;
    for (int t = 0; t < tri.num_tetrahedra(); ++t) {
        const auto& tc = coords[static_cast<std::size_t>(t)];
        for (int v = 0; v < 4; ++v)
            if (tc.tri[static_cast<std::size_t>(v)] > 0)
                expected[t][{PieceClass::Kind::Triangle, v}] = tc.tri[static_cast<std::size_t>(v)];
        if (tc.quad_type >= 0 && tc.quad_count > 0) expected[t][{PieceClass::Kind::Quad, tc.quad_type}] = tc.quad_count;
    }
    for (const auto& dsk : disks) {
        PieceClass pc{dsk.kind == PieceClass::Kind::Octagon ? PieceClass::Kind::Octagon : PieceClass::Kind::Dodecagon,
                      dsk.partition};
        ++expected[dsk.tet][pc];
    }
    std::map<int, std::map<PieceClass, int>> got;
    for (const auto& p : an.pieces) ++got[p.tet][p.cls];
    return got == expected;
}

// ---------------------------------------------------------------------------
// Surface assembly: merge the analysis with tube data.

inline std::optional<NormalSurface> assemble_surface(const Triangulation& tri, std::vector<TetCoordinates> coords,
                                                     std::vector<ExcDisk> disks, std::vector<Tube> tubes) {
    if (!satisfies_matching(tri, coords, disks)) return std::nullopt;
    NormalSurface s;
    s.coords = std::move(coords);
    s.disks = std::move(disks);
    s.tubes = std::move(tubes);
    std::sort(s.disks.begin(), s.disks.end());
    std::sort(s.tubes.begin(), s.tubes.end());
    s.diagram = build_diagram(tri, s.coords, s.disks);
    s.analysis = analyze(s.diagram);
    if (!s.analysis.valid) return std::nullopt;
    if (!verify_pieces(tri, s.coords, s.disks, s.analysis)) return std::nullopt;
    s.weights = s.diagram.weights;

    // Tube validity: both pieces in the tube's tet, adjacent to the region,
    // distinct, distinct pairs across tubes, index sum within range.
    std::set<std::pair<int, std::pair<int, int>>> pairs;
    std::map<int, int> global_piece; // (tet, index_in_tet) key -> global id
    for (int p = 0; p < static_cast<int>(s.analysis.pieces.size()); ++p)
        global_piece[s.analysis.pieces[static_cast<std::size_t>(p)].tet * 1000 +
                     s.analysis.pieces[static_cast<std::size_t>(p)].index_in_tet] = p;
    for (const auto& tb : s.tubes) {
        auto ita = global_piece.find(tb.tet * 1000 + tb.piece_a);
        auto itb = global_piece.find(tb.tet * 1000 + tb.piece_b);
        if (ita == global_piece.end() || itb == global_piece.end()) return std::nullopt;
        if (tb.piece_a == tb.piece_b) return std::nullopt;
        int reg = s.analysis.tet_region_offset[static_cast<std::size_t>(tb.tet)] + tb.region;
        if (reg >= s.analysis.tet_region_offset[static_cast<std::size_t>(tb.tet + 1)]) return std::nullopt;
        auto adjacent = [&](int piece) {
            const auto& fl = s.analysis.piece_flanks[static_cast<std::size_t>(piece)];
            return fl[0] == reg || fl[1] == reg;
        };
        if (!adjacent(ita->second) || !adjacent(itb->second)) return std::nullopt;
        auto pr = std::minmax(tb.piece_a, tb.piece_b);
        if (!pairs.insert({tb.tet, {pr.first, pr.second}}).second) return std::nullopt;
    }

    // Merge components across tubes.
    int ncomp = static_cast<int>(s.analysis.components.size());
    detail::UnionFind uf(ncomp);
    std::map<int, int> tube_count_per_merge;
    for (const auto& tb : s.tubes) {
        int a = s.analysis.pieces[static_cast<std::size_t>(global_piece.at(tb.tet * 1000 + tb.piece_a))].component;
        int b = s.analysis.pieces[static_cast<std::size_t>(global_piece.at(tb.tet * 1000 + tb.piece_b))].component;
        uf.unite(a, b);
    }
    std::map<int, int> merged_id;
    std::vector<int> comp_merged(static_cast<std::size_t>(ncomp));
    for (int c = 0; c < ncomp; ++c) {
        int r = uf.find(c);
        auto it = merged_id.find(r);
        if (it == merged_id.end()) it = merged_id.emplace(r, static_cast<int>(merged_id.size())).first;
        comp_merged[static_cast<std::size_t>(c)] = it->second;
    }
    s.components.assign(merged_id.size(), {});
    for (int c = 0; c < ncomp; ++c) {
        const auto& cs = s.analysis.components[static_cast<std::size_t>(c)];
        auto& mc = s.components[static_cast<std::size_t>(comp_merged[static_cast<std::size_t>(c)])];
        mc.chi += cs.chi;
        mc.points += cs.points;
        mc.boundary_circles += cs.boundary_circles;
        mc.closed = mc.closed && cs.closed;
        mc.two_sided = mc.two_sided && cs.two_sided;
    }
    for (const auto& tb : s.tubes) {
        int a = s.analysis.pieces[static_cast<std::size_t>(global_piece.at(tb.tet * 1000 + tb.piece_a))].component;
        s.components[static_cast<std::size_t>(comp_merged[static_cast<std::size_t>(a)])].chi -= 2;
    }
    s.chi = 0;
    s.total_genus = 0;
    s.sphere_components = 0;
    s.complexity = 0;
    s.closed = true;
    for (auto& mc : s.components) {
        s.chi += mc.chi;
        if (mc.closed) {
            mc.sphere = mc.two_sided && mc.chi == 2;
            mc.genus = mc.two_sided && (2 - mc.chi) % 2 == 0 ? (2 - mc.chi) / 2 : 2 - mc.chi;
        } else {
            s.closed = false;
            int b = mc.boundary_circles;
            mc.genus = mc.two_sided && (2 - mc.chi - b) % 2 == 0 ? (2 - mc.chi - b) / 2 : std::max(0, 2 - mc.chi - b);
        }
        s.total_genus += std::max(0, mc.genus);
        if (mc.sphere) ++s.sphere_components;
        s.complexity += 1 - (mc.chi - mc.points) + (mc.sphere ? 1 : 0);
    }
    s.index = static_cast<int>(s.tubes.size());
    for (const auto& dsk : s.disks) s.index += dsk.index();
    s.strongly_separating = s.analysis.strongly_separating;
    return s;
}

// ---------------------------------------------------------------------------

inline NormalSurface vertex_link_surface(const Triangulation& tri, int vertex_orbit) {
    if (vertex_orbit < 0 || vertex_orbit >= tri.num_vertices())
        throw std::invalid_argument("unknown vertex orbit " + std::to_string(vertex_orbit));
    std::vector<TetCoordinates> coords(static_cast<std::size_t>(tri.num_tetrahedra()));
    for (const auto& inc : tri.vertices()[static_cast<std::size_t>(vertex_orbit)].incidences)
        coords[static_cast<std::size_t>(inc.tet)].tri[static_cast<std::size_t>(inc.vertex)] += 1;
    auto s = assemble_surface(tri, std::move(coords), {}, {});
    if (!s) throw std::runtime_error("vertex link assembly failed");
    return *s;
}

struct EnumerationOptions {
    int genus_bound = 0;
    int weight_cap = 1;
    long long budget = 5'000'000; // visited partial configurations
    bool allow_double_octagon = false;
};

namespace detail {

struct TetConfig {
    TetCoordinates coords;
    std::vector<ExcDisk> disks; // entries with tet filled in later
    int disk_index = 0;
};

// All per-tet coordinate configurations with local edge weights <= W.
inline std::vector<TetConfig> tet_configs(int W, int max_disk_index, bool allow_double_octagon) {
    std::vector<TetConfig> out;
    std::vector<std::pair<std::vector<ExcDisk>, int>> exc_choices;
    exc_choices.push_back({{}, 0});
    if (max_disk_index >= 1)
        for (int p = 0; p < 3; ++p) exc_choices.push_back({{{0, PieceClass::Kind::Octagon, p, 0}}, 1});
    if (max_disk_index >= 2) {
        for (int p = 0; p < 3; ++p)
            for (int m = 0; m < 2; ++m) exc_choices.push_back({{{0, PieceClass::Kind::Dodecagon, p, m}}, 2});
        if (allow_double_octagon)
            for (int p = 0; p < 3; ++p)
                exc_choices.push_back({{{0, PieceClass::Kind::Octagon, p, 0}, {0, PieceClass::Kind::Octagon, p, 0}}, 2});
    }
    for (const auto& [disks, dindex] : exc_choices) {
        // quad types: none, or same partition as the exceptional disk
        std::vector<std::pair<int, int>> quad_options{{-1, 0}};
        int allowed_type = disks.empty() ? -2 : disks.front().partition;
        for (int qt = 0; qt < 3; ++qt) {
            if (!disks.empty() && qt != allowed_type) continue;
            for (int qc = 1; qc <= W; ++qc) quad_options.push_back({qt, qc});
        }
        for (auto [qt, qc] : quad_options) {
            std::array<int, 4> tri{};
            auto rec = [&](auto&& self, int v) -> void {
                if (v == 4) {
                    TetConfig cfg;
                    cfg.coords.tri = tri;
                    cfg.coords.quad_type = qt;
                    cfg.coords.quad_count = qc;
                    cfg.disks = disks;
                    cfg.disk_index = dindex;
                    auto w = local_weights(cfg.coords, cfg.disks, 0);
                    for (int e = 0; e < 6; ++e)
                        if (w[static_cast<std::size_t>(e)] > W) return;
                    out.push_back(std::move(cfg));
                    return;
                }
                for (int x = 0; x <= W; ++x) {
                    tri[static_cast<std::size_t>(v)] = x;
                    self(self, v + 1);
                }
                tri[static_cast<std::size_t>(v)] = 0;
            };
            rec(rec, 0);
        }
    }
    return out;
}

} // namespace detail

// All embedded normal-coordinate solutions (optionally with exceptional
// disks of total index `disk_budget`) under the weight cap; tube attachment
// is layered on separately.
inline std::vector<NormalSurface> enumerate_transverse(const Triangulation& tri, int target_index,
                                                       const EnumerationOptions& opt) {
    if (!tri.edge_orbits_consistent()) throw std::invalid_argument("triangulation edge orbits inconsistent");
    std::vector<NormalSurface> out;
    long long visited = 0;

    auto base_configs = detail::tet_configs(opt.weight_cap, target_index, opt.allow_double_octagon);
    int ntets = tri.num_tetrahedra();
    std::vector<const detail::TetConfig*> chosen(static_cast<std::size_t>(ntets), nullptr);

    // incremental matching check for cells whose both tets are decided
    auto cells_ready_at = [&](int t) {
        std::vector<int> cells;
        for (int c = 0; c < tri.num_triangles(); ++c) {
            const auto& tc = tri.triangles()[static_cast<std::size_t>(c)];
            if (tc.boundary) continue;
            if (std::max(tc.tet, tc.back_tet) == t) cells.push_back(c);
        }
        return cells;
    };
    std::vector<std::vector<int>> ready(static_cast<std::size_t>(ntets));
    for (int t = 0; t < ntets; ++t) ready[static_cast<std::size_t>(t)] = cells_ready_at(t);

    std::vector<TetCoordinates> coords(static_cast<std::size_t>(ntets));
    std::vector<ExcDisk> disks;

    auto rec = [&](auto&& self, int t, int disk_used) -> void {
        if (t == ntets) {
            if (disk_used != target_index) return;
            auto s = assemble_surface(tri, coords, disks, {});
            if (s && s->total_genus <= opt.genus_bound) out.push_back(std::move(*s));
            return;
        }
        for (const auto& cfg : base_configs) {
            if (disk_used + cfg.disk_index > target_index) continue;
            if (++visited > opt.budget) throw BudgetExceeded("enumeration budget exhausted");
            coords[static_cast<std::size_t>(t)] = cfg.coords;
            std::size_t disk_mark = disks.size();
            for (auto dsk : cfg.disks) {
                dsk.tet = t;
                disks.push_back(dsk);
            }
            // matching on cells now fully decided
            bool ok = true;
            for (int c : ready[static_cast<std::size_t>(t)]) {
                const auto& tc = tri.triangles()[static_cast<std::size_t>(c)];
                const auto& g = tri.gluing(tc.tet, tc.face);
                for (int v : face_vertices(tc.face)) {
                    int front = corner_arcs(coords[static_cast<std::size_t>(tc.tet)], disks, tc.tet, tc.face, v);
                    int back = corner_arcs(coords[static_cast<std::size_t>(tc.back_tet)], disks, tc.back_tet, tc.back_face,
                                           g->perm[v]);
                    if (front != back) {
                        ok = false;
                        break;
                    }
                }
                if (!ok) break;
            }
            if (ok) self(self, t + 1, disk_used + cfg.disk_index);
            disks.resize(disk_mark);
        }
    };
    rec(rec, 0, 0);
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<NormalSurface> enumerate_index0(const Triangulation& tri, const EnumerationOptions& opt) {
    return enumerate_transverse(tri, 0, opt);
}

// Tube placements on a transverse surface: all sets of `count` tubes obeying
// the piece and region constraints, with endpoint indices summing correctly.
inline std::vector<std::vector<Tube>> tube_placements(const NormalSurface& base, int count, bool allow_octagon_endpoint) {
    std::vector<Tube> sites;
    const auto& an = base.analysis;
    for (int a = 0; a < static_cast<int>(an.pieces.size()); ++a) {
        for (int b = a + 1; b < static_cast<int>(an.pieces.size()); ++b) {
            const auto& pa = an.pieces[static_cast<std::size_t>(a)];
            const auto& pb = an.pieces[static_cast<std::size_t>(b)];
            if (pa.tet != pb.tet) continue;
            int oct_ends = (pa.cls.kind == PieceClass::Kind::Octagon) + (pb.cls.kind == PieceClass::Kind::Octagon);
            bool zero_ends = pa.cls.index() == 0 && pb.cls.index() == 0;
            if (!zero_ends && !(allow_octagon_endpoint && oct_ends == 1 &&
                                (pa.cls.index() == 0 || pb.cls.index() == 0)))
                continue;
            // shared flanking regions
            const auto& fa = an.piece_flanks[static_cast<std::size_t>(a)];
            const auto& fb = an.piece_flanks[static_cast<std::size_t>(b)];
            for (int ra : fa)
                for (int rb : fb)
                    if (ra == rb) {
                        Tube tb;
                        tb.tet = pa.tet;
                        tb.piece_a = pa.index_in_tet;
                        tb.piece_b = pb.index_in_tet;
                        tb.region = ra - an.tet_region_offset[static_cast<std::size_t>(pa.tet)];
                        sites.push_back(tb);
                    }
        }
    }
    std::sort(sites.begin(), sites.end());
    sites.erase(std::unique(sites.begin(), sites.end()), sites.end());

    std::vector<std::vector<Tube>> out;
    if (count == 1) {
        for (const auto& s : sites) out.push_back({s});
    } else if (count == 2) {
        for (std::size_t i = 0; i < sites.size(); ++i)
            for (std::size_t j = i + 1; j < sites.size(); ++j) {
                const auto& x = sites[i];
                const auto& y = sites[j];
                auto px = std::minmax(x.piece_a, x.piece_b);
                auto py = std::minmax(y.piece_a, y.piece_b);
                if (x.tet == y.tet && px == py) continue; // same pair: not a classified piece
                out.push_back({x, y});
            }
    }
    return out;
}

// Index-one and index-two normal surfaces under the caps: every layout of
// exceptional disks and tubes whose piece indices sum to the target.
inline std::vector<NormalSurface> enumerate_index12(const Triangulation& tri, int target_index,
                                                    const EnumerationOptions& opt) {
    if (target_index != 1 && target_index != 2) throw std::invalid_argument("target index must be 1 or 2");
    std::vector<NormalSurface> out;

    for (int disk_part = 0; disk_part <= target_index; ++disk_part) {
        int tube_part = target_index - disk_part;
        if (tube_part > 2) continue;
        // transverse surfaces with total disk index = disk_part
        std::vector<NormalSurface> bases;
        if (disk_part == 0) {
            EnumerationOptions o0 = opt;
            o0.genus_bound = opt.genus_bound + tube_part; // tubes can only raise genus; keep all candidates
            bases = enumerate_transverse(tri, 0, o0);
        } else {
            EnumerationOptions o0 = opt;
            o0.genus_bound = opt.genus_bound + tube_part;
            bases = enumerate_transverse(tri, disk_part, o0);
        }
        for (const auto& base : bases) {
            if (tube_part == 0) {
                if (base.index == target_index && base.total_genus <= opt.genus_bound) out.push_back(base);
                continue;
            }
            bool oct_end = disk_part == 1 && tube_part == 1; // octagon-to-disk tube
            for (auto& tubes : tube_placements(base, tube_part, oct_end)) {
                auto s = assemble_surface(tri, base.coords, base.disks, tubes);
                if (s && s->index == target_index && s->total_genus <= opt.genus_bound) out.push_back(std::move(*s));
            }
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline int euler_characteristic(const NormalSurface& s) { return s.chi; }
inline long long complexity(const NormalSurface& s) { return s.complexity; }

// Literal complexity from component data; kept separate so the formula can
// be exercised on synthetic inputs.
inline long long complexity_formula(const std::vector<SurfaceComponent>& comps) {
    long long c = 0;
    for (const auto& mc : comps) c += 1 - (mc.chi - mc.points) + (mc.sphere ? 1 : 0);
    return c;
}

inline ordered_json surface_to_json(const NormalSurface& s) {
    ordered_json j;
    ordered_json coords = ordered_json::array();
    for (const auto& tc : s.coords) {
        ordered_json row = ordered_json::array();
        for (int v = 0; v < 4; ++v) row.push_back(tc.tri[static_cast<std::size_t>(v)]);
        for (int q = 0; q < 3; ++q) row.push_back(tc.quad_type == q ? tc.quad_count : 0);
        coords.push_back(row);
    }
    j["coords"] = coords;
    ordered_json exc = ordered_json::array();
    for (const auto& d : s.disks) {
        ordered_json e;
        e["kind"] = d.kind == PieceClass::Kind::Octagon ? "octagon" : "dodecagon";
        e["tet"] = d.tet;
        e["partition"] = d.partition;
        if (d.kind == PieceClass::Kind::Dodecagon) e["mirror"] = d.mirror;
        exc.push_back(e);
    }
    for (const auto& t : s.tubes) {
        ordered_json e;
        e["kind"] = "tube";
        e["tet"] = t.tet;
        e["piece_a"] = t.piece_a;
        e["piece_b"] = t.piece_b;
        e["region"] = t.region;
        e["rank"] = t.rank;
        exc.push_back(e);
    }
    j["exceptional"] = exc;
    j["chi"] = s.chi;
    j["genus"] = s.total_genus;
    j["complexity"] = s.complexity;
    j["weights"] = s.weights;
    j["index"] = s.index;
    j["strongly_separating"] = s.strongly_separating;
    return j;
}

} // namespace dcx

#endif
