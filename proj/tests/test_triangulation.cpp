#include <catch2/catch_amalgamated.hpp>

#include "dcx/triangulation.hpp"

using namespace dcx;

namespace {

const char* kSingle = R"({"tets": 1, "gluings": [[null, null, null, null]]})";

const char* kDouble = R"({
  "tets": 2,
  "gluings": [
    [[1, "0123"], [1, "0123"], [1, "0123"], [1, "0123"]],
    [[0, "0123"], [0, "0123"], [0, "0123"], [0, "0123"]]
  ]
})";

} // namespace

TEST_CASE("single tetrahedron with boundary") {
    auto tri = Triangulation::parse(kSingle);
    REQUIRE(tri.num_tetrahedra() == 1);
    CHECK(tri.num_edges() == 6);
    CHECK(tri.num_vertices() == 4);
    CHECK(tri.num_triangles() == 4);
    CHECK(tri.has_boundary());
    auto rep = tri.validate();
    CHECK(rep.all_ok());
    for (const auto& e : tri.edges()) CHECK(e.boundary);
}

TEST_CASE("two-tetrahedron double") {
    auto tri = Triangulation::parse(kDouble);
    REQUIRE(tri.num_tetrahedra() == 2);
    CHECK(tri.num_vertices() == 4);
    CHECK(tri.num_edges() == 6);
    CHECK(tri.num_triangles() == 4);
    CHECK_FALSE(tri.has_boundary());
    // chi = V - E + F - T
    CHECK(tri.num_vertices() - tri.num_edges() + tri.num_triangles() - tri.num_tetrahedra() == 0);
    CHECK(tri.validate().all_ok());
    CHECK(tri.orientable());
    for (const auto& e : tri.edges()) {
        CHECK_FALSE(e.boundary);
        CHECK(e.incidences.size() == 2);
    }
}

TEST_CASE("edge incidence totals match orbit degrees") {
    auto tri = Triangulation::parse(kDouble);
    std::size_t total = 0;
    for (const auto& e : tri.edges()) total += e.incidences.size();
    CHECK(total == 6u * static_cast<std::size_t>(tri.num_tetrahedra()));
}

TEST_CASE("parse errors") {
    CHECK_THROWS_AS(Triangulation::parse("not json"), std::invalid_argument);
    CHECK_THROWS_AS(Triangulation::parse(R"({"tets": 1})"), std::invalid_argument);
    // permutation not a bijection
    CHECK_THROWS_AS(Triangulation::parse(R"({"tets": 2, "gluings": [[[1, "0012"], null, null, null], [[0, "0012"], null, null, null]]})"),
                    std::invalid_argument);
    // non-involutive gluing
    CHECK_THROWS_AS(Triangulation::parse(R"({"tets": 2, "gluings": [[[1, "0123"], null, null, null], [null, null, null, null]]})"),
                    std::invalid_argument);
}

TEST_CASE("round trip is stable") {
    auto tri = Triangulation::parse(kDouble);
    auto text = tri.serialize();
    auto tri2 = Triangulation::parse(text);
    CHECK(tri2.serialize() == text);
    CHECK(tri2.num_edges() == tri.num_edges());
    CHECK(tri2.num_vertices() == tri.num_vertices());
}

TEST_CASE("edge orbit closing with a flip is reported") {
    // One tetrahedron, face 0 glued to face 1 by the permutation swapping
    // 0<->1 and 2<->3: edge {2,3} returns to itself reversed.
    auto tri = Triangulation::parse(R"({"tets": 1, "gluings": [[[0, "1032"], [0, "1032"], null, null]]})");
    CHECK_FALSE(tri.edge_orbits_consistent());
    auto rep = tri.validate();
    CHECK_FALSE(rep.all_ok());
}

TEST_CASE("nonorientable gluing is reported") {
    // Face 0 of tet 0 glued to face 0 of tet 1 with an odd permutation that
    // fixes 0, others by identity: orientation constraint unsatisfiable.
    auto tri = Triangulation::parse(R"({
      "tets": 2,
      "gluings": [
        [[1, "0132"], [1, "0123"], [1, "0123"], [1, "0123"]],
        [[0, "0132"], [0, "0123"], [0, "0123"], [0, "0123"]]
      ]
    })");
    CHECK_FALSE(tri.orientable());
}
