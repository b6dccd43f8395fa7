#ifndef DCX_TRIANGULATION_HPP
#define DCX_TRIANGULATION_HPP

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dcx/perm.hpp"

namespace dcx {

using ordered_json = nlohmann::ordered_json;

// Edge indices 0..5 enumerate the vertex pairs (01,02,03,12,13,23).
inline constexpr std::array<std::array<int, 2>, 6> kEdgeVerts = {{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

inline int edge_index(int a, int b) {
    if (a > b) std::swap(a, b);
    for (int e = 0; e < 6; ++e)
        if (kEdgeVerts[static_cast<std::size_t>(e)][0] == a && kEdgeVerts[static_cast<std::size_t>(e)][1] == b) return e;
    throw std::invalid_argument("bad vertex pair");
}

// The two faces of a tetrahedron containing edge e (faces are opposite the
// two vertices not on e).
inline std::array<int, 2> faces_of_edge(int e) {
    std::array<bool, 4> on{};
    on[static_cast<std::size_t>(kEdgeVerts[static_cast<std::size_t>(e)][0])] = true;
    on[static_cast<std::size_t>(kEdgeVerts[static_cast<std::size_t>(e)][1])] = true;
    std::array<int, 2> fs{};
    int n = 0;
    for (int f = 0; f < 4; ++f)
        if (!on[static_cast<std::size_t>(f)]) fs[static_cast<std::size_t>(n++)] = f;
    return fs;
}

struct Gluing {
    int tet = -1; // target tetrahedron
    Perm4 perm;   // vertex map from this tetrahedron to the target
};

// One appearance of an edge orbit inside a tetrahedron.  `forward` records
// whether the local edge direction (low vertex -> high vertex) agrees with
// the orbit's chosen direction.
struct EdgeIncidence {
    int tet = 0;
    int edge = 0; // 0..5
    bool forward = true;
    auto operator<=>(const EdgeIncidence&) const = default;
};

struct VertexIncidence {
    int tet = 0;
    int vertex = 0;
    auto operator<=>(const VertexIncidence&) const = default;
};

struct EdgeOrbit {
    std::vector<EdgeIncidence> incidences; // ordered around the edge
    bool boundary = false;                 // meets an unglued face
};

struct VertexOrbit {
    std::vector<VertexIncidence> incidences;
};

// A 2-cell of the quotient complex: an unglued face or a glued face pair.
// `tet`/`face` name the canonical side (smallest (tet,face)).
struct TriangleCell {
    int tet = 0;
    int face = 0;
    bool boundary = false;
    int back_tet = -1; // other side, when glued
    int back_face = -1;
};

struct ValidationIssue {
    std::string check;
    bool ok = true;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    bool all_ok() const {
        for (const auto& i : issues)
            if (!i.ok) return false;
        return true;
    }
};

class Triangulation {
public:
    // Parses the JSON gluing format:
    //   {"tets": N, "gluings": [[g0,g1,g2,g3], ...]}
    // where each gi is null (boundary) or [target_tet, "perm"].
    static Triangulation parse(const std::string& text);

    static Triangulation from_gluings(int tets, const std::vector<std::array<std::optional<Gluing>, 4>>& gluings);

    std::string serialize() const;

    int num_tetrahedra() const { return static_cast<int>(gluings_.size()); }
    int num_edges() const { return static_cast<int>(edges_.size()); }
    int num_vertices() const { return static_cast<int>(vertices_.size()); }
    int num_triangles() const { return static_cast<int>(triangles_.size()); }

    const std::optional<Gluing>& gluing(int tet, int face) const {
        return gluings_[static_cast<std::size_t>(tet)][static_cast<std::size_t>(face)];
    }
    const std::vector<EdgeOrbit>& edges() const { return edges_; }
    const std::vector<VertexOrbit>& vertices() const { return vertices_; }
    const std::vector<TriangleCell>& triangles() const { return triangles_; }

    int edge_orbit_of(int tet, int edge) const { return edge_orbit_[static_cast<std::size_t>(tet)][static_cast<std::size_t>(edge)]; }
    // Direction flag of a specific incidence within its orbit.
    bool edge_forward(int tet, int edge) const { return edge_forward_[static_cast<std::size_t>(tet)][static_cast<std::size_t>(edge)]; }
    int vertex_orbit_of(int tet, int vertex) const { return vertex_orbit_[static_cast<std::size_t>(tet)][static_cast<std::size_t>(vertex)]; }
    int triangle_of(int tet, int face) const { return triangle_of_[static_cast<std::size_t>(tet)][static_cast<std::size_t>(face)]; }

    bool orientable() const { return orientable_; }
    bool edge_orbits_consistent() const { return edges_consistent_; }
    bool has_boundary() const {
        for (const auto& t : triangles_)
            if (t.boundary) return true;
        return false;
    }

    ValidationReport validate() const;

private:
    void index();
    void build_edge_orbits();
    void build_vertex_orbits();
    void check_orientability();

    std::vector<std::array<std::optional<Gluing>, 4>> gluings_;
    std::vector<EdgeOrbit> edges_;
    std::vector<VertexOrbit> vertices_;
    std::vector<TriangleCell> triangles_;
    std::vector<std::array<int, 6>> edge_orbit_;
    std::vector<std::array<bool, 6>> edge_forward_;
    std::vector<std::array<int, 4>> vertex_orbit_;
    std::vector<std::array<int, 4>> triangle_of_;
    bool orientable_ = true;
    bool edges_consistent_ = true;
};

inline Triangulation Triangulation::from_gluings(int tets, const std::vector<std::array<std::optional<Gluing>, 4>>& gluings) {
    if (tets < 0 || static_cast<int>(gluings.size()) != tets)
        throw std::invalid_argument("gluing table size does not match tetrahedron count");
    Triangulation tri;
    tri.gluings_ = gluings;
    // Involution check: the partner face must glue back via the inverse map.
    for (int t = 0; t < tets; ++t) {
        for (int f = 0; f < 4; ++f) {
            const auto& g = gluings[static_cast<std::size_t>(t)][static_cast<std::size_t>(f)];
            if (!g) continue;
            if (g->tet < 0 || g->tet >= tets) throw std::invalid_argument("gluing target out of range");
            int back_face = g->perm[f];
            const auto& back = gluings[static_cast<std::size_t>(g->tet)][static_cast<std::size_t>(back_face)];
            if (!back || back->tet != t || !(back->perm == g->perm.inverse()))
                throw std::invalid_argument("gluing is not involutive at tet " + std::to_string(t) + " face " + std::to_string(f));
            if (g->tet == t && back_face == f)
                throw std::invalid_argument("face glued to itself at tet " + std::to_string(t) + " face " + std::to_string(f));
        }
    }
    tri.index();
    return tri;
}

inline Triangulation Triangulation::parse(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const std::exception& e) {
        throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("tets") || !j.contains("gluings"))
        throw std::invalid_argument("expected object with \"tets\" and \"gluings\"");
    if (!j["tets"].is_number_integer()) throw std::invalid_argument("\"tets\" must be an integer");
    int tets = j["tets"].get<int>();
    if (tets < 0) throw std::invalid_argument("\"tets\" must be non-negative");
    const auto& gj = j["gluings"];
    if (!gj.is_array() || static_cast<int>(gj.size()) != tets)
        throw std::invalid_argument("\"gluings\" must list exactly one entry per tetrahedron");
    std::vector<std::array<std::optional<Gluing>, 4>> gluings(static_cast<std::size_t>(tets));
    for (int t = 0; t < tets; ++t) {
        const auto& row = gj[static_cast<std::size_t>(t)];
        if (!row.is_array() || row.size() != 4) throw std::invalid_argument("each gluing row must have 4 entries");
        for (int f = 0; f < 4; ++f) {
            const auto& cell = row[static_cast<std::size_t>(f)];
            if (cell.is_null()) continue;
            if (!cell.is_array() || cell.size() != 2 || !cell[0].is_number_integer() || !cell[1].is_string())
                throw std::invalid_argument("gluing entries must be null or [tet, \"perm\"]");
            Gluing g;
            g.tet = cell[0].get<int>();
            g.perm = Perm4::parse(cell[1].get<std::string>());
            gluings[static_cast<std::size_t>(t)][static_cast<std::size_t>(f)] = g;
        }
    }
    return from_gluings(tets, gluings);
}

inline std::string Triangulation::serialize() const {
    ordered_json j;
    j["tets"] = num_tetrahedra();
    ordered_json rows = ordered_json::array();
    for (int t = 0; t < num_tetrahedra(); ++t) {
        ordered_json row = ordered_json::array();
        for (int f = 0; f < 4; ++f) {
            const auto& g = gluings_[static_cast<std::size_t>(t)][static_cast<std::size_t>(f)];
            if (!g)
                row.push_back(nullptr);
            else
                row.push_back(ordered_json::array({g->tet, g->perm.str()}));
        }
        rows.push_back(row);
    }
    j["gluings"] = rows;
    return j.dump(2) + "\n";
}

inline void Triangulation::index() {
    int tets = num_tetrahedra();
    edge_orbit_.assign(static_cast<std::size_t>(tets), {-1, -1, -1, -1, -1, -1});
    edge_forward_.assign(static_cast<std::size_t>(tets), {true, true, true, true, true, true});
    vertex_orbit_.assign(static_cast<std::size_t>(tets), {-1, -1, -1, -1});
    triangle_of_.assign(static_cast<std::size_t>(tets), {-1, -1, -1, -1});

    // 2-cells: boundary faces and glued face pairs, canonical side first.
    for (int t = 0; t < tets; ++t) {
        for (int f = 0; f < 4; ++f) {
            if (triangle_of_[static_cast<std::size_t>(t)][static_cast<std::size_t>(f)] >= 0) continue;
            TriangleCell cell;
            cell.tet = t;
            cell.face = f;
            const auto& g = gluings_[static_cast<std::size_t>(t)][static_cast<std::size_t>(f)];
            int id = static_cast<int>(triangles_.size());
            if (!g) {
                cell.boundary = true;
            } else {
                cell.back_tet = g->tet;
                cell.back_face = g->perm[f];
                triangle_of_[static_cast<std::size_t>(cell.back_tet)][static_cast<std::size_t>(cell.back_face)] = id;
            }
            triangle_of_[static_cast<std::size_t>(t)][static_cast<std::size_t>(f)] = id;
            triangles_.push_back(cell);
        }
    }

    build_edge_orbits();
    build_vertex_orbits();
    check_orientability();
}

inline void Triangulation::build_edge_orbits() {
    int tets = num_tetrahedra();
    edges_consistent_ = true;
    for (int t0 = 0; t0 < tets; ++t0) {
        for (int e0 = 0; e0 < 6; ++e0) {
            if (edge_orbit_[static_cast<std::size_t>(t0)][static_cast<std::size_t>(e0)] >= 0) continue;
            int id = static_cast<int>(edges_.size());
            EdgeOrbit orbit;

            // Walk around the edge.  State: (tet, ordered endpoints (a,b)) with
            // (a,b) tracking the orbit direction; cross the face opposite
            // `exit_vertex`.  Start by walking one way; if we hit boundary,
            // restart from the other side so the incidence list is a path.
            auto cross = [&](int tet, int a, int b, int face) -> std::optional<std::array<int, 3>> {
                const auto& g = gluings_[static_cast<std::size_t>(tet)][static_cast<std::size_t>(face)];
                if (!g) return std::nullopt;
                return std::array<int, 3>{g->tet, g->perm[a], g->perm[b]};
            };

            int a0 = kEdgeVerts[static_cast<std::size_t>(e0)][0];
            int b0 = kEdgeVerts[static_cast<std::size_t>(e0)][1];
            auto fs = faces_of_edge(e0);

            // Try to walk backwards (through fs[0]) to find a boundary end.
            int bt = t0, ba = a0, bb = b0, bface = fs[0];
            bool closed = false;
            {
                int guard = 0;
                while (true) {
                    auto nxt = cross(bt, ba, bb, bface);
                    if (!nxt) break; // boundary end found
                    int nt = (*nxt)[0], na = (*nxt)[1], nb = (*nxt)[2];
                    if (nt == t0 && ((na == a0 && nb == b0) || (na == b0 && nb == a0))) {
                        closed = true;
                        break;
                    }
                    // Continue backwards: leave through the other face at the new edge.
                    int ne = edge_index(na, nb);
                    auto nfs = faces_of_edge(ne);
                    // We entered through face opposite... the face we arrived through is
                    // the image of bface: g(bface) where g is the gluing used.
                    const auto& g = gluings_[static_cast<std::size_t>(bt)][static_cast<std::size_t>(bface)];
                    int arrived = g->perm[bface];
                    bface = (nfs[0] == arrived) ? nfs[1] : nfs[0];
                    bt = nt;
                    ba = na;
                    bb = nb;
                    if (++guard > 4 * 6 * tets + 8) {
                        edges_consistent_ = false;
                        break;
                    }
                }
            }

            int sa, sb, st, sface;
            if (closed || !edges_consistent_) {
                st = t0;
                sa = a0;
                sb = b0;
                sface = fs[1];
            } else {
                // bt/ba/bb sits at a boundary end; walk forward from there.
                st = bt;
                sa = ba;
                sb = bb;
                int se = edge_index(sa, sb);
                auto sfs = faces_of_edge(se);
                sface = (sfs[0] == bface) ? sfs[1] : sfs[0];
                orbit.boundary = true;
            }

            // Forward walk, recording incidences.
            int t = st, a = sa, b = sb, face = sface;
            int guard = 0;
            while (true) {
                int e = edge_index(a, b);
                bool fwd = a < b;
                if (edge_orbit_[static_cast<std::size_t>(t)][static_cast<std::size_t>(e)] == -2) {
                    // Revisiting within this walk: the orbit returned to a seen
                    // incidence.  Stop; consistency was checked at closure.
                    break;
                }
                if (edge_orbit_[static_cast<std::size_t>(t)][static_cast<std::size_t>(e)] >= 0) break;
                edge_orbit_[static_cast<std::size_t>(t)][static_cast<std::size_t>(e)] = -2;
                edge_forward_[static_cast<std::size_t>(t)][static_cast<std::size_t>(e)] = fwd;
                orbit.incidences.push_back({t, e, fwd});
                auto nxt = cross(t, a, b, face);
                if (!nxt) {
                    orbit.boundary = true;
                    break;
                }
                int nt = (*nxt)[0], na = (*nxt)[1], nb = (*nxt)[2];
                if (nt == st && ((na == sa && nb == sb) || (na == sb && nb == sa))) {
                    if (na == sb && nb == sa) edges_consistent_ = false; // closes with a flip
                    break;
                }
                const auto& g = gluings_[static_cast<std::size_t>(t)][static_cast<std::size_t>(face)];
                int arrived = g->perm[face];
                int ne = edge_index(na, nb);
                auto nfs = faces_of_edge(ne);
                face = (nfs[0] == arrived) ? nfs[1] : nfs[0];
                t = nt;
                a = na;
                b = nb;
                if (++guard > 4 * 6 * tets + 8) {
                    edges_consistent_ = false;
                    break;
                }
            }
            for (const auto& inc : orbit.incidences)
                edge_orbit_[static_cast<std::size_t>(inc.tet)][static_cast<std::size_t>(inc.edge)] = id;
            edges_.push_back(std::move(orbit));
        }
    }
}

inline void Triangulation::build_vertex_orbits() {
    int tets = num_tetrahedra();
    std::vector<int> parent(static_cast<std::size_t>(4 * tets));
    for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    };
    auto unite = [&](int x, int y) {
        x = find(x);
        y = find(y);
        if (x != y) parent[static_cast<std::size_t>(std::max(x, y))] = std::min(x, y);
    };
    for (int t = 0; t < tets; ++t) {
        for (int f = 0; f < 4; ++f) {
            const auto& g = gluings_[static_cast<std::size_t>(t)][static_cast<std::size_t>(f)];
            if (!g) continue;
            for (int v = 0; v < 4; ++v) {
                if (v == f) continue;
                unite(4 * t + v, 4 * g->tet + g->perm[v]);
            }
        }
    }
    std::map<int, int> root_to_id;
    for (int t = 0; t < tets; ++t) {
        for (int v = 0; v < 4; ++v) {
            int r = find(4 * t + v);
            auto it = root_to_id.find(r);
            int id;
            if (it == root_to_id.end()) {
                id = static_cast<int>(vertices_.size());
                root_to_id.emplace(r, id);
                vertices_.push_back({});
            } else {
                id = it->second;
            }
            vertex_orbit_[static_cast<std::size_t>(t)][static_cast<std::size_t>(v)] = id;
            vertices_[static_cast<std::size_t>(id)].incidences.push_back({t, v});
        }
    }
}

inline ValidationReport Triangulation::validate() const {
    ValidationReport rep;
    rep.issues.push_back({"gluing involution", true, "checked at construction"});
    rep.issues.push_back({"edge orbits consistent", edges_consistent_,
                          edges_consistent_ ? "" : "an edge orbit closes up with a flip"});
    rep.issues.push_back({"orientable", orientable_, orientable_ ? "" : "no consistent orientation assignment exists"});

    // Vertex links, assembled from corner triangles: one per (tet, vertex)
    // incidence, with a side in each face of the tetrahedron at that vertex.
    bool links_ok = edges_consistent_;
    std::string link_detail;
    if (edges_consistent_) {
        for (int vo = 0; vo < num_vertices(); ++vo) {
            const auto& orbit = vertices_[static_cast<std::size_t>(vo)];
            int faces = static_cast<int>(orbit.incidences.size());
            // Sides: (incidence, face at vertex).  Union-find over corner
            // triangles for connectivity; count boundary sides.
            std::map<std::pair<int, int>, int> corner_id; // (tet,vertex) -> index
            for (int i = 0; i < faces; ++i)
                corner_id[{orbit.incidences[static_cast<std::size_t>(i)].tet, orbit.incidences[static_cast<std::size_t>(i)].vertex}] = i;
            std::vector<int> parent(static_cast<std::size_t>(faces));
            for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
            auto find = [&](int x) {
                while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
                return x;
            };
            int boundary_sides = 0;
            int glued_pairs = 0;
            for (const auto& inc : orbit.incidences) {
                for (int f = 0; f < 4; ++f) {
                    if (f == inc.vertex) continue;
                    const auto& g = gluings_[static_cast<std::size_t>(inc.tet)][static_cast<std::size_t>(f)];
                    if (!g) {
                        ++boundary_sides;
                        continue;
                    }
                    ++glued_pairs; // counted from both sides; halve later
                    int other = corner_id.at({g->tet, g->perm[inc.vertex]});
                    int a = find(corner_id.at({inc.tet, inc.vertex}));
                    int b = find(other);
                    if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
                }
            }
            glued_pairs /= 2;
            int components = 0;
            for (int i = 0; i < faces; ++i)
                if (find(i) == i) ++components;
            // Link vertices: ends of edge orbits landing on this vertex orbit.
            int link_vertices = 0;
            for (const auto& eo : edges_) {
                const auto& inc0 = eo.incidences.front();
                int a = kEdgeVerts[static_cast<std::size_t>(inc0.edge)][0];
                int b = kEdgeVerts[static_cast<std::size_t>(inc0.edge)][1];
                int tail = inc0.forward ? a : b;
                int head = inc0.forward ? b : a;
                if (vertex_orbit_[static_cast<std::size_t>(inc0.tet)][static_cast<std::size_t>(tail)] == vo) ++link_vertices;
                if (vertex_orbit_[static_cast<std::size_t>(inc0.tet)][static_cast<std::size_t>(head)] == vo) ++link_vertices;
            }
            int chi = link_vertices - (glued_pairs + boundary_sides) + faces;
            bool ok;
            if (components != 1)
                ok = false;
            else if (boundary_sides == 0)
                ok = (chi == 2);
            else
                ok = (chi == 1);
            if (!ok) {
                links_ok = false;
                link_detail = "vertex " + std::to_string(vo) + " link has chi=" + std::to_string(chi) + ", components=" + std::to_string(components);
            }
        }
    } else {
        link_detail = "skipped: edge orbits inconsistent";
        links_ok = false;
    }
    rep.issues.push_back({"vertex links spherical or disk", links_ok, link_detail});
    return rep;
}

inline void Triangulation::check_orientability() {
    int tets = num_tetrahedra();
    std::vector<int> orient(static_cast<std::size_t>(tets), 0);
    orientable_ = true;
    for (int seed = 0; seed < tets; ++seed) {
        if (orient[static_cast<std::size_t>(seed)] != 0) continue;
        orient[static_cast<std::size_t>(seed)] = 1;
        std::vector<int> stack{seed};
        while (!stack.empty()) {
            int t = stack.back();
            stack.pop_back();
            for (int f = 0; f < 4; ++f) {
                const auto& g = gluings_[static_cast<std::size_t>(t)][static_cast<std::size_t>(f)];
                if (!g) continue;
                // Compatible orientations make each gluing orientation-reversing
                // on the shared face: o(t') = -o(t) * sign(perm).
                int want = -orient[static_cast<std::size_t>(t)] * g->perm.sign();
                int& o = orient[static_cast<std::size_t>(g->tet)];
                if (o == 0) {
                    o = want;
                    stack.push_back(g->tet);
                } else if (o != want) {
                    orientable_ = false;
                }
            }
        }
    }
}

} // namespace dcx

#endif
