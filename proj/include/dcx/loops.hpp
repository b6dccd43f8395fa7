#ifndef DCX_LOOPS_HPP
#define DCX_LOOPS_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dcx/triangulation.hpp"

namespace dcx {

// Loops on the boundary sphere of a single tetrahedron, transverse to the
// edges, meeting every face in arcs with endpoints on distinct edges.  A
// connected loop is determined up to transverse isotopy by its vector of
// edge intersection counts.

using EdgeWeights6 = std::array<int, 6>;

// Opposite-edge pairs, indexed like quad types: pair p groups the vertices
// as {a,b}|{c,d} with edge(a,b) and edge(c,d) the two edges of the pair.
inline constexpr std::array<std::array<int, 2>, 3> kOppositeEdgePairs = {{{0, 5}, {1, 4}, {2, 3}}};

// Faces as vertex triples, face f opposite vertex f.
inline std::array<int, 3> face_vertices(int f) {
    std::array<int, 3> vs{};
    int n = 0;
    for (int v = 0; v < 4; ++v)
        if (v != f) vs[static_cast<std::size_t>(n++)] = v;
    return vs;
}

// Count of arcs cutting corner v inside face f, for the given edge weights.
// Returns nullopt if the weights are not realizable in that corner.
inline std::optional<int> corner_count(const EdgeWeights6& w, int f, int v) {
    auto vs = face_vertices(f);
    int x = -1, y = -1;
    for (int u : vs)
        if (u != v) (x < 0 ? x : y) = u;
    int wvx = w[static_cast<std::size_t>(edge_index(v, x))];
    int wvy = w[static_cast<std::size_t>(edge_index(v, y))];
    int wxy = w[static_cast<std::size_t>(edge_index(x, y))];
    int twice = wvx + wvy - wxy;
    if (twice < 0 || twice % 2 != 0) return std::nullopt;
    return twice / 2;
}

inline bool admissible_weights(const EdgeWeights6& w) {
    for (int f = 0; f < 4; ++f)
        for (int v : face_vertices(f))
            if (!corner_count(w, f, v)) return false;
    return true;
}

struct LoopPoint {
    int edge = 0; // 0..5
    int pos = 0;  // position along the edge, counted from the lower vertex
    auto operator<=>(const LoopPoint&) const = default;
};

struct LoopArc {
    int face = 0;
    int corner = 0; // the vertex the arc cuts off
};

struct StraightLoopPattern {
    EdgeWeights6 weights{};
    int corners = 0;                 // total intersection count n
    int alpha_crossings = 0;         // k, with n = 2k + 6 for non-triangle, non-quad loops
    std::vector<LoopPoint> points;   // cyclic order along the loop
    std::vector<LoopArc> arcs;       // arcs[i] joins points[i] to points[i+1 mod n]
    std::array<bool, 4> positive_vertices{}; // side labels; vertex 0 is negative

    bool operator==(const StraightLoopPattern& o) const { return weights == o.weights; }
};

namespace detail {

// Point on `edge` that is the i-th nearest to vertex v (an endpoint of the edge).
inline LoopPoint point_near(const EdgeWeights6& w, int edge, int v, int i) {
    int a = kEdgeVerts[static_cast<std::size_t>(edge)][0];
    int total = w[static_cast<std::size_t>(edge)];
    return {edge, v == a ? i : total - 1 - i};
}

} // namespace detail

// Reconstructs the arc system for admissible weights and traces it.  Returns
// the traced pattern when the system is a single loop, nullopt otherwise.
inline std::optional<StraightLoopPattern> trace_loop(const EdgeWeights6& w) {
    if (!admissible_weights(w)) return std::nullopt;
    int n = 0;
    for (int e = 0; e < 6; ++e) n += w[static_cast<std::size_t>(e)];
    if (n < 3) return std::nullopt;

    // Arc endpoints: for each face and each point on its edges, the partner.
    // key: (face, point) -> (other point, corner)
    std::map<std::pair<int, LoopPoint>, std::pair<LoopPoint, int>> link;
    for (int f = 0; f < 4; ++f) {
        for (int v : face_vertices(f)) {
            auto vs = face_vertices(f);
            int x = -1, y = -1;
            for (int u : vs)
                if (u != v) (x < 0 ? x : y) = u;
            int c = *corner_count(w, f, v);
            for (int i = 0; i < c; ++i) {
                LoopPoint p = detail::point_near(w, edge_index(v, x), v, i);
                LoopPoint q = detail::point_near(w, edge_index(v, y), v, i);
                link[{f, p}] = {q, v};
                link[{f, q}] = {p, v};
            }
        }
    }

    StraightLoopPattern pat;
    pat.weights = w;
    pat.corners = n;

    // Trace from the first point of the first weighted edge.
    LoopPoint start{};
    for (int e = 0; e < 6; ++e)
        if (w[static_cast<std::size_t>(e)] > 0) {
            start = {e, 0};
            break;
        }
    LoopPoint cur = start;
    int face = faces_of_edge(start.edge)[0];
    int visited = 0;
    while (true) {
        auto it = link.find({face, cur});
        if (it == link.end()) return std::nullopt; // inconsistent system
        pat.points.push_back(cur);
        pat.arcs.push_back({face, it->second.second});
        ++visited;
        LoopPoint nxt = it->second.first;
        auto fs = faces_of_edge(nxt.edge);
        face = (fs[0] == face) ? fs[1] : fs[0];
        cur = nxt;
        if (cur == start && face == faces_of_edge(start.edge)[0]) break;
        if (visited > n) return std::nullopt;
    }
    if (visited != n) return std::nullopt; // more than one component

    // Side labels: 2-color the vertices by edge-weight parity, vertex 0 negative.
    std::array<int, 4> color{0, -1, -1, -1};
    for (int pass = 0; pass < 4; ++pass)
        for (int e = 0; e < 6; ++e) {
            int a = kEdgeVerts[static_cast<std::size_t>(e)][0];
            int b = kEdgeVerts[static_cast<std::size_t>(e)][1];
            int flip = w[static_cast<std::size_t>(e)] % 2;
            if (color[static_cast<std::size_t>(a)] >= 0 && color[static_cast<std::size_t>(b)] < 0)
                color[static_cast<std::size_t>(b)] = color[static_cast<std::size_t>(a)] ^ flip;
            if (color[static_cast<std::size_t>(b)] >= 0 && color[static_cast<std::size_t>(a)] < 0)
                color[static_cast<std::size_t>(a)] = color[static_cast<std::size_t>(b)] ^ flip;
        }
    for (int v = 0; v < 4; ++v) pat.positive_vertices[static_cast<std::size_t>(v)] = color[static_cast<std::size_t>(v)] == 1;

    pat.alpha_crossings = std::max(0, (n - 6) / 2);
    return pat;
}

// All connected straight loop classes with at most max_corners intersections,
// ordered by (corner count, weight vector).
inline std::vector<StraightLoopPattern> enumerate_straight_loops(int max_corners) {
    std::vector<StraightLoopPattern> out;
    if (max_corners < 3) return out;
    EdgeWeights6 w{};
    auto rec = [&](auto&& self, int e, int remaining) -> void {
        if (e == 6) {
            if (auto pat = trace_loop(w)) out.push_back(std::move(*pat));
            return;
        }
        for (int x = 0; x <= remaining; ++x) {
            w[static_cast<std::size_t>(e)] = x;
            self(self, e + 1, remaining - x);
        }
        w[static_cast<std::size_t>(e)] = 0;
    };
    rec(rec, 0, max_corners);
    std::sort(out.begin(), out.end(), [](const StraightLoopPattern& a, const StraightLoopPattern& b) {
        if (a.corners != b.corners) return a.corners < b.corners;
        return a.weights < b.weights;
    });
    return out;
}

// Bridge-disk traces in the disk bounded by the loop: one chord per pair of
// intersection points adjacent along an edge.  Chords on the positive side
// come from interior crossings of the positive splitting arc, negative side
// likewise.
struct Chord {
    int from = 0; // loop positions
    int to = 0;
    bool positive = false;
    int edge = 0;
};

struct ChordSystem {
    int polygon_size = 0;
    std::vector<Chord> beta;  // positive side
    std::vector<Chord> gamma; // negative side
};

inline ChordSystem chord_system(const StraightLoopPattern& pat) {
    ChordSystem cs;
    cs.polygon_size = pat.corners;
    std::map<LoopPoint, int> position;
    for (int i = 0; i < static_cast<int>(pat.points.size()); ++i) position[pat.points[static_cast<std::size_t>(i)]] = i;
    for (int e = 0; e < 6; ++e) {
        int cnt = pat.weights[static_cast<std::size_t>(e)];
        int a = kEdgeVerts[static_cast<std::size_t>(e)][0];
        bool color_a = pat.positive_vertices[static_cast<std::size_t>(a)];
        for (int i = 0; i + 1 < cnt; ++i) {
            Chord c;
            c.edge = e;
            c.from = position.at({e, i});
            c.to = position.at({e, i + 1});
            // The edge segment between positions i and i+1 lies past i+1
            // crossings from vertex a.
            bool seg_positive = color_a ^ ((i + 1) % 2 == 1);
            c.positive = seg_positive;
            (seg_positive ? cs.beta : cs.gamma).push_back(c);
        }
    }
    return cs;
}

// Disjointness of chord interiors in the disk: strict crossing test on the
// cyclic boundary order; sharing an endpoint still counts as disjoint.
inline bool chords_compatible(const Chord& x, const Chord& y, int n) {
    std::array<int, 2> a{x.from, x.to};
    std::array<int, 2> b{y.from, y.to};
    if (a[0] == b[0] || a[0] == b[1] || a[1] == b[0] || a[1] == b[1]) return true;
    auto inside = [&](int lo, int hi, int q) {
        // open arc from lo to hi counterclockwise
        if (lo < hi) return q > lo && q < hi;
        return q > lo || q < hi;
    };
    bool b0 = inside(a[0], a[1], b[0]);
    bool b1 = inside(a[0], a[1], b[1]);
    (void)n;
    return b0 == b1;
}

enum class PieceIndex { Zero = 0, One = 1, Two = 2, ThreeOrMore = 3 };

// Brute-force index of the disk bounded by the pattern, computed from the
// descending link spanned by its bridge disks: empty link is index zero, a
// disconnected link index one, a connected link with nontrivial first
// homology index two, and anything connected beyond that at least three.
// The homology route is cross-checked against the midpoint complex between
// the two bridge-disk simplices: the link is simply connected exactly when
// that complex is nonempty and connected.
inline PieceIndex piece_index_oracle(const StraightLoopPattern& pat) {
    ChordSystem cs = chord_system(pat);
    int nb = static_cast<int>(cs.beta.size());
    int ng = static_cast<int>(cs.gamma.size());
    int total = nb + ng;
    if (total == 0) return PieceIndex::Zero;

    auto chord_at = [&](int i) -> const Chord& {
        return i < nb ? cs.beta[static_cast<std::size_t>(i)] : cs.gamma[static_cast<std::size_t>(i - nb)];
    };
    auto compatible = [&](int i, int j) {
        bool side_i = i < nb, side_j = j < nb;
        if (side_i == side_j) return true;
        return chords_compatible(chord_at(i), chord_at(j), pat.corners);
    };

    // Connectivity of the 1-skeleton.
    std::vector<int> comp(static_cast<std::size_t>(total), -1);
    int ncomp = 0;
    for (int s = 0; s < total; ++s) {
        if (comp[static_cast<std::size_t>(s)] >= 0) continue;
        std::vector<int> stack{s};
        comp[static_cast<std::size_t>(s)] = ncomp;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int v2 = 0; v2 < total; ++v2)
                if (v2 != u && comp[static_cast<std::size_t>(v2)] < 0 && compatible(u, v2)) {
                    comp[static_cast<std::size_t>(v2)] = ncomp;
                    stack.push_back(v2);
                }
        }
        ++ncomp;
    }
    if (ncomp > 1) return PieceIndex::One;

    // First homology over F2 of the 2-skeleton (flag: triangles are the
    // pairwise-compatible triples).
    std::vector<std::pair<int, int>> edges2;
    std::map<std::pair<int, int>, int> edge_id;
    for (int i = 0; i < total; ++i)
        for (int j = i + 1; j < total; ++j)
            if (compatible(i, j)) {
                edge_id[{i, j}] = static_cast<int>(edges2.size());
                edges2.emplace_back(i, j);
            }
    std::vector<std::vector<std::uint64_t>> rows; // boundary of triangles, bitset over edges
    std::size_t words = (edges2.size() + 63) / 64;
    for (int i = 0; i < total; ++i)
        for (int j = i + 1; j < total; ++j)
            for (int k2 = j + 1; k2 < total; ++k2) {
                if (!(compatible(i, j) && compatible(i, k2) && compatible(j, k2))) continue;
                std::vector<std::uint64_t> row(words, 0);
                for (auto [a, b] : {std::pair{i, j}, std::pair{i, k2}, std::pair{j, k2}}) {
                    int id = edge_id.at({a, b});
                    row[static_cast<std::size_t>(id) / 64] ^= (1ull << (static_cast<std::size_t>(id) % 64));
                }
                rows.push_back(std::move(row));
            }
    // rank of the triangle boundary matrix over F2 (xor basis keyed by lead bit)
    int rank = 0;
    std::map<int, std::vector<std::uint64_t>> basis;
    auto lead_bit = [&](const std::vector<std::uint64_t>& r) -> int {
        for (std::size_t w2 = 0; w2 < words; ++w2)
            if (r[w2]) return static_cast<int>(w2 * 64 + static_cast<std::size_t>(__builtin_ctzll(r[w2])));
        return -1;
    };
    for (auto row : rows) {
        int lead;
        while ((lead = lead_bit(row)) >= 0) {
            auto it = basis.find(lead);
            if (it == basis.end()) {
                basis.emplace(lead, row);
                ++rank;
                break;
            }
            for (std::size_t w2 = 0; w2 < words; ++w2) row[w2] ^= it->second[w2];
        }
    }
    long h1 = static_cast<long>(edges2.size()) - total + 1 - rank;
    return h1 != 0 ? PieceIndex::Two : PieceIndex::ThreeOrMore;
}

// Midpoint-complex route: nonempty & connected <=> link simply connected.
// Exposed for cross-checking the oracle in tests.
inline std::pair<bool, int> midpoint_complex_components(const StraightLoopPattern& pat) {
    ChordSystem cs = chord_system(pat);
    std::vector<std::pair<int, int>> verts; // (beta index, gamma index), compatible pairs
    for (int i = 0; i < static_cast<int>(cs.beta.size()); ++i)
        for (int j = 0; j < static_cast<int>(cs.gamma.size()); ++j)
            if (chords_compatible(cs.beta[static_cast<std::size_t>(i)], cs.gamma[static_cast<std::size_t>(j)], pat.corners))
                verts.emplace_back(i, j);
    int m = static_cast<int>(verts.size());
    std::vector<int> comp(static_cast<std::size_t>(m), -1);
    int ncomp = 0;
    for (int s = 0; s < m; ++s) {
        if (comp[static_cast<std::size_t>(s)] >= 0) continue;
        std::vector<int> stack{s};
        comp[static_cast<std::size_t>(s)] = ncomp;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int v = 0; v < m; ++v) {
                if (comp[static_cast<std::size_t>(v)] >= 0) continue;
                // Adjacent when they share a chord (the third chord pair must
                // also be compatible, which is automatic on the shared side).
                if (verts[static_cast<std::size_t>(u)].first == verts[static_cast<std::size_t>(v)].first ||
                    verts[static_cast<std::size_t>(u)].second == verts[static_cast<std::size_t>(v)].second) {
                    comp[static_cast<std::size_t>(v)] = ncomp;
                    stack.push_back(v);
                }
            }
        }
        ++ncomp;
    }
    return {m > 0, ncomp};
}

struct PieceClass {
    enum class Kind { Triangle, Quad, Octagon, Dodecagon, Tube, HighIndex };
    Kind kind = Kind::HighIndex;
    int param = -1; // vertex for Triangle, partition 0..2 otherwise

    int index() const {
        switch (kind) {
            case Kind::Triangle:
            case Kind::Quad: return 0;
            case Kind::Octagon: return 1;
            case Kind::Dodecagon: return 2;
            case Kind::Tube: return 1;
            case Kind::HighIndex: return 3;
        }
        return 3;
    }
    bool operator==(const PieceClass& o) const { return kind == o.kind && param == o.param; }
    bool operator<(const PieceClass& o) const {
        if (kind != o.kind) return static_cast<int>(kind) < static_cast<int>(o.kind);
        return param < o.param;
    }
    std::string str() const {
        switch (kind) {
            case Kind::Triangle: return "triangle(" + std::to_string(param) + ")";
            case Kind::Quad: return "quad(" + std::to_string(param) + ")";
            case Kind::Octagon: return "octagon(" + std::to_string(param) + ")";
            case Kind::Dodecagon: return "dodecagon(" + std::to_string(param) + ")";
            case Kind::Tube: return "tube";
            case Kind::HighIndex: return "high-index";
        }
        return "?";
    }
};

// Closed-form classification by corner count and edge-intersection profile.
inline PieceClass classify_piece(const StraightLoopPattern& pat) {
    const auto& w = pat.weights;
    auto pair_weights = [&](int p) {
        return std::array<int, 2>{w[static_cast<std::size_t>(kOppositeEdgePairs[static_cast<std::size_t>(p)][0])],
                                  w[static_cast<std::size_t>(kOppositeEdgePairs[static_cast<std::size_t>(p)][1])]};
    };
    if (pat.corners == 3) {
        for (int v = 0; v < 4; ++v) {
            bool match = true;
            for (int e = 0; e < 6; ++e) {
                bool at_v = kEdgeVerts[static_cast<std::size_t>(e)][0] == v || kEdgeVerts[static_cast<std::size_t>(e)][1] == v;
                if (w[static_cast<std::size_t>(e)] != (at_v ? 1 : 0)) match = false;
            }
            if (match) return {PieceClass::Kind::Triangle, v};
        }
    }
    if (pat.corners == 4) {
        for (int p = 0; p < 3; ++p) {
            auto pw = pair_weights(p);
            if (pw[0] == 0 && pw[1] == 0) {
                bool rest_one = true;
                for (int q = 0; q < 3; ++q)
                    if (q != p) {
                        auto qw = pair_weights(q);
                        if (qw[0] != 1 || qw[1] != 1) rest_one = false;
                    }
                if (rest_one) return {PieceClass::Kind::Quad, p};
            }
        }
    }
    if (pat.corners == 8) {
        for (int p = 0; p < 3; ++p) {
            auto pw = pair_weights(p);
            if (pw[0] == 2 && pw[1] == 2) {
                bool rest_one = true;
                for (int q = 0; q < 3; ++q)
                    if (q != p) {
                        auto qw = pair_weights(q);
                        if (qw[0] != 1 || qw[1] != 1) rest_one = false;
                    }
                if (rest_one) return {PieceClass::Kind::Octagon, p};
            }
        }
    }
    if (pat.corners == 12) {
        int p2 = -1, p3 = -1, p1 = -1;
        for (int p = 0; p < 3; ++p) {
            auto pw = pair_weights(p);
            if (pw[0] == 2 && pw[1] == 2) p2 = p;
            if (pw[0] == 3 && pw[1] == 3) p3 = p;
            if (pw[0] == 1 && pw[1] == 1) p1 = p;
        }
        if (p2 >= 0 && p3 >= 0 && p1 >= 0) return {PieceClass::Kind::Dodecagon, p2};
    }
    return {PieceClass::Kind::HighIndex, -1};
}

} // namespace dcx

#endif
