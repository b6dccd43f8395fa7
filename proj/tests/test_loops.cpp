#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>

#include "dcx/loops.hpp"

using namespace dcx;

TEST_CASE("small enumerations") {
    auto four = enumerate_straight_loops(4);
    int tri = 0, quad = 0;
    for (const auto& p : four) {
        auto c = classify_piece(p);
        if (c.kind == PieceClass::Kind::Triangle) ++tri;
        if (c.kind == PieceClass::Kind::Quad) ++quad;
    }
    CHECK(four.size() == 7u);
    CHECK(tri == 4);
    CHECK(quad == 3);

    auto eight = enumerate_straight_loops(8);
    int oct = 0;
    for (const auto& p : eight)
        if (classify_piece(p).kind == PieceClass::Kind::Octagon) ++oct;
    CHECK(oct == 3);
}

TEST_CASE("dodecagon profile") {
    // 3 partitions x 2 mirror labelings; all classify to 3 partition values.
    auto twelve = enumerate_straight_loops(12);
    std::set<int> partitions;
    int count = 0;
    for (const auto& p : twelve)
        if (auto c = classify_piece(p); c.kind == PieceClass::Kind::Dodecagon) {
            ++count;
            partitions.insert(c.param);
        }
    CHECK(count == 6);
    CHECK(partitions == std::set<int>{0, 1, 2});
}

TEST_CASE("chord systems") {
    auto pats = enumerate_straight_loops(12);
    for (const auto& p : pats) {
        auto cs = chord_system(p);
        auto c = classify_piece(p);
        if (c.kind == PieceClass::Kind::Triangle || c.kind == PieceClass::Kind::Quad) {
            CHECK(cs.beta.empty());
            CHECK(cs.gamma.empty());
        }
        if (c.kind == PieceClass::Kind::Octagon) {
            CHECK(cs.beta.size() == 1u);
            CHECK(cs.gamma.size() == 1u);
            CHECK_FALSE(chords_compatible(cs.beta[0], cs.gamma[0], p.corners));
        }
        if (c.kind == PieceClass::Kind::Dodecagon) {
            CHECK(cs.beta.size() == 3u);
            CHECK(cs.gamma.size() == 3u);
        }
        // k chords per side; six corners free per side
        CHECK(cs.beta.size() == cs.gamma.size());
        if (c.kind != PieceClass::Kind::Triangle)
            CHECK(static_cast<int>(cs.beta.size()) == p.alpha_crossings);
    }
}

TEST_CASE("oracle values on the named classes") {
    auto pats = enumerate_straight_loops(12);
    for (const auto& p : pats) {
        auto c = classify_piece(p);
        auto idx = piece_index_oracle(p);
        switch (c.kind) {
            case PieceClass::Kind::Triangle:
            case PieceClass::Kind::Quad: CHECK(idx == PieceIndex::Zero); break;
            case PieceClass::Kind::Octagon: CHECK(idx == PieceIndex::One); break;
            case PieceClass::Kind::Dodecagon: CHECK(idx == PieceIndex::Two); break;
            default: CHECK(idx == PieceIndex::ThreeOrMore); break;
        }
    }
}

TEST_CASE("oracle agrees with classification up to 24 corners") {
    auto pats = enumerate_straight_loops(24);
    std::map<PieceClass, int> tally;
    for (const auto& p : pats) {
        auto c = classify_piece(p);
        auto idx = piece_index_oracle(p);
        CHECK(static_cast<int>(idx) == c.index());
        if (c.index() <= 2) {
            CHECK(p.corners <= 12);
            ++tally[c];
        }
        // Cross-check with the midpoint complex: simply connected iff
        // nonempty and connected.
        auto [nonempty, comps] = midpoint_complex_components(p);
        if (idx == PieceIndex::Zero) CHECK_FALSE(nonempty);
        if (idx == PieceIndex::One) CHECK_FALSE(nonempty);
        if (idx == PieceIndex::Two) {
            CHECK(nonempty);
            CHECK(comps > 1);
        }
        if (idx == PieceIndex::ThreeOrMore) {
            CHECK(nonempty);
            CHECK(comps == 1);
        }
    }
    CHECK(tally.size() == 13u); // 4 triangles + 3 quads + 3 octagons + 3 dodecagons
}

TEST_CASE("pattern with sixteen corners has index at least three") {
    auto pats = enumerate_straight_loops(16);
    bool found = false;
    for (const auto& p : pats)
        if (p.corners == 16) {
            found = true;
            CHECK(piece_index_oracle(p) == PieceIndex::ThreeOrMore);
        }
    CHECK(found);
}
