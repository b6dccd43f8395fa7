#include <catch2/catch_amalgamated.hpp>

#include "dcx/normal.hpp"

using namespace dcx;

namespace {

Triangulation single_tet() { return Triangulation::parse(R"({"tets": 1, "gluings": [[null, null, null, null]]})"); }

Triangulation double_tet() {
    return Triangulation::parse(R"({
      "tets": 2,
      "gluings": [
        [[1, "0123"], [1, "0123"], [1, "0123"], [1, "0123"]],
        [[0, "0123"], [0, "0123"], [0, "0123"], [0, "0123"]]
      ]
    })");
}

} // namespace

TEST_CASE("matching system sizes") {
    CHECK(matching_system(single_tet()).empty());
    CHECK(matching_system(double_tet()).size() == 12u);
}

TEST_CASE("vertex links") {
    auto tri = double_tet();
    for (int v = 0; v < tri.num_vertices(); ++v) {
        auto link = vertex_link_surface(tri, v);
        CHECK(link.chi == 2);
        CHECK(link.total_genus == 0);
        CHECK(link.components.size() == 1u);
        CHECK(link.components[0].sphere);
        CHECK(link.closed);
        CHECK(satisfies_matching(tri, link.coords, link.disks));
        CHECK(link.strongly_separating);
    }
    auto stri = single_tet();
    auto link = vertex_link_surface(stri, 0);
    CHECK(link.chi == 1);
    CHECK_FALSE(link.closed);
    CHECK(link.components[0].boundary_circles == 1);
    CHECK_THROWS_AS(vertex_link_surface(stri, 99), std::invalid_argument);
}

TEST_CASE("index-zero enumeration on the double") {
    auto tri = double_tet();
    EnumerationOptions opt;
    opt.genus_bound = 0;
    opt.weight_cap = 2;
    auto surfaces = enumerate_index0(tri, opt);
    // contains the empty surface and all four vertex links
    int links_found = 0;
    bool empty_found = false;
    for (const auto& s : surfaces) {
        CHECK(satisfies_matching(tri, s.coords, s.disks));
        CHECK(s.index == 0);
        bool empty = true;
        for (int w : s.weights)
            if (w) empty = false;
        if (empty) empty_found = true;
    }
    for (int v = 0; v < tri.num_vertices(); ++v) {
        auto link = vertex_link_surface(tri, v);
        for (const auto& s : surfaces)
            if (s == link) ++links_found;
    }
    CHECK(empty_found);
    CHECK(links_found == 4);
    // weight cap zero: only the empty surface
    EnumerationOptions zero;
    zero.genus_bound = 0;
    zero.weight_cap = 0;
    auto only_empty = enumerate_index0(tri, zero);
    REQUIRE(only_empty.size() == 1u);
    CHECK(only_empty[0].weights == std::vector<int>(6, 0));
}

TEST_CASE("budget exhaustion is reported") {
    auto tri = double_tet();
    EnumerationOptions opt;
    opt.genus_bound = 0;
    opt.weight_cap = 2;
    opt.budget = 3;
    CHECK_THROWS_AS(enumerate_index0(tri, opt), BudgetExceeded);
}

TEST_CASE("tube surfaces on the double") {
    auto tri = double_tet();
    EnumerationOptions opt;
    opt.genus_bound = 1;
    opt.weight_cap = 2;
    auto idx1 = enumerate_index12(tri, 1, opt);
    REQUIRE_FALSE(idx1.empty());
    bool found_link_tube = false;
    for (const auto& s : idx1) {
        CHECK(s.index == 1);
        CHECK(satisfies_matching(tri, s.coords, s.disks));
        if (s.tubes.size() == 1) {
            // chi drops by two relative to the untubed diagram
            CHECK(s.chi == s.analysis.total_chi - 2);
            // doubled vertex link tubed into a single sphere
            bool doubled_link = false;
            for (int v = 0; v < tri.num_vertices(); ++v) {
                std::vector<TetCoordinates> want(static_cast<std::size_t>(tri.num_tetrahedra()));
                for (const auto& inc : tri.vertices()[static_cast<std::size_t>(v)].incidences)
                    want[static_cast<std::size_t>(inc.tet)].tri[static_cast<std::size_t>(inc.vertex)] += 2;
                if (s.coords == want) doubled_link = true;
            }
            if (doubled_link && s.components.size() == 1 && s.chi == 2) found_link_tube = true;
        }
    }
    CHECK(found_link_tube);
    // no octagon fits the identity double: corner counts cannot match
    for (const auto& s : idx1) CHECK(s.disks.empty());
}

TEST_CASE("complexity formula") {
    // sphere disjoint from T1: 1 - 2 + 1 = 0
    CHECK(complexity_formula({{2, 0, 0, 0, true, true, true}}) == 0);
    // torus meeting T1 in 2 points: 1 - (0 - 2) + 0 = 3
    CHECK(complexity_formula({{0, 2, 1, 0, true, false, true}}) == 3);
    // two spheres each meeting T1 twice: 2 - (4 - 4) + 2 = 4
    CHECK(complexity_formula({{2, 2, 0, 0, true, true, true}, {2, 2, 0, 0, true, true, true}}) == 4);
}

TEST_CASE("index-two enumeration stays within piece rules") {
    auto tri = double_tet();
    EnumerationOptions opt;
    opt.genus_bound = 1;
    opt.weight_cap = 2;
    auto idx2 = enumerate_index12(tri, 2, opt);
    for (const auto& s : idx2) {
        CHECK(s.index == 2);
        int disk_index = 0;
        for (const auto& d : s.disks) disk_index += d.index();
        CHECK(disk_index + static_cast<int>(s.tubes.size()) == 2);
        // no sixteen-corner pieces can appear
        for (const auto& p : s.analysis.pieces) {
            int corners = 0;
            for (int e = 0; e < 6; ++e) corners += p.local_weights[static_cast<std::size_t>(e)];
            CHECK(corners <= 12);
        }
    }
    REQUIRE_FALSE(idx2.empty());
}
