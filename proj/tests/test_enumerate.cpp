#include <catch2/catch_amalgamated.hpp>

#include <jammedfan/enumerate.hpp>

#include <algorithm>
#include <set>

using namespace jammedfan;

TEST_CASE("profile solver finds exactly the known solutions") {
    const auto asym = solve_profiles(false);
    REQUIRE(asym.size() == 3);
    CHECK(asym[0] == Profile{4, 0, 6, 4});
    CHECK(asym[1] == Profile{4, 1, 8, 5});
    CHECK(asym[2] == Profile{2, 3, 9, 6});

    const auto sym = solve_profiles(true);
    REQUIRE(sym.size() == 2);
    CHECK(sym[0] == Profile{8, 0, 12, 6});
    CHECK(sym[1] == Profile{0, 6, 12, 8});

    // Substitute every solution back into the primitive relations.
    for (const bool symmetric : {false, true}) {
        for (const auto& p : solve_profiles(symmetric)) {
            CHECK(2 * p.b == 3 * p.a3 + 4 * p.a4);
            CHECK(p.a3 + p.a4 - p.b + p.c == 2);
            CHECK(p.c * (p.c - 1) / 2 == 2 * p.a4 + p.b + (symmetric ? p.c / 2 : 0));
        }
    }
}

namespace {

// Independent oracle for the 4-ray profile: every candidate cell on four
// rays is one of the four triples or one of the three 4-cycles, so all
// complexes arise from the 35 ways to pick four of those seven.
std::set<std::string> brute_force_4ray_census() {
    std::vector<std::vector<int>> universe = {
        {1, 2, 3}, {0, 2, 3}, {0, 1, 3}, {0, 1, 2},
        {0, 1, 2, 3}, {0, 1, 3, 2}, {0, 2, 1, 3}};
    std::set<std::string> codes;
    for (size_t a = 0; a < universe.size(); ++a)
        for (size_t b = a + 1; b < universe.size(); ++b)
            for (size_t c = b + 1; c < universe.size(); ++c)
                for (size_t d = c + 1; d < universe.size(); ++d) {
                    FanComplex fc;
                    fc.ray_count = 4;
                    fc.cells = {universe[a], universe[b], universe[c], universe[d]};
                    if (!validate(fc).ok) continue;
                    if (!(profile(fc) == Profile{4, 0, 6, 4})) continue;
                    codes.insert(canonical_code(fc));
                }
    return codes;
}

// Independent oracle for the all-triangle symmetric profile: pick 8 of the
// 20 triples on six rays so that every ray has valence 4, then validate.
std::set<std::string> brute_force_6ray_triangle_census() {
    std::vector<std::array<int, 3>> triples;
    for (int i = 0; i < 6; ++i)
        for (int j = i + 1; j < 6; ++j)
            for (int k = j + 1; k < 6; ++k) triples.push_back({i, j, k});
    std::set<std::string> codes;
    std::vector<int> pick;
    auto search = [&](auto&& self, size_t from, std::array<int, 6> deg) -> void {
        if (pick.size() == 8) {
            for (int d : deg)
                if (d != 4) return;
            FanComplex fc;
            fc.ray_count = 6;
            for (int t : pick)
                fc.cells.push_back({triples[static_cast<size_t>(t)][0], triples[static_cast<size_t>(t)][1],
                                    triples[static_cast<size_t>(t)][2]});
            if (!validate(fc).ok) return;
            if (!(profile(fc) == Profile{0, 6, 12, 8})) return;
            codes.insert(canonical_code(fc));
            return;
        }
        if (from >= triples.size()) return;
        if (triples.size() - from < 8 - pick.size()) return;
        // Take triples[from].
        auto d2 = deg;
        bool fits = true;
        for (int v : triples[from])
            if (++d2[static_cast<size_t>(v)] > 4) fits = false;
        if (fits) {
            pick.push_back(static_cast<int>(from));
            self(self, from + 1, d2);
            pick.pop_back();
        }
        self(self, from + 1, deg);
    };
    search(search, 0, {0, 0, 0, 0, 0, 0});
    return codes;
}

}  // namespace

TEST_CASE("generator agrees with the brute-force oracle on four rays") {
    const auto oracle = brute_force_4ray_census();
    REQUIRE(oracle.size() == 1);
    const auto census = generate(Profile{4, 0, 6, 4});
    REQUIRE(census.items.size() == 1);
    CHECK(census.items[0].code == *oracle.begin());
    CHECK(census.items[0].jammed);
    CHECK(census.jammed_count == 1);
}

TEST_CASE("generator agrees with the brute-force oracle on the all-triangle profile") {
    const auto oracle = brute_force_6ray_triangle_census();
    REQUIRE(oracle.size() == 1);
    const auto census = generate(Profile{0, 6, 12, 8});
    REQUIRE(census.items.size() == 1);
    CHECK(census.items[0].code == *oracle.begin());
    CHECK(census.items[0].jammed);
}

TEST_CASE("census sizes and jammed counts per profile") {
    struct Expected {
        Profile p;
        size_t total;
        int jammed;
    };
    // Totals cross-checked against the classical enumeration of sphere
    // complexes: one complex each except for the 3-regular six-face profile,
    // which also admits the dual of the twice-stacked triangulation.
    const Expected table[] = {
        {Profile{4, 0, 6, 4}, 1, 1},
        {Profile{4, 1, 8, 5}, 1, 1},
        {Profile{2, 3, 9, 6}, 1, 1},
        {Profile{8, 0, 12, 6}, 2, 1},
        {Profile{0, 6, 12, 8}, 1, 1},
    };
    for (const auto& e : table) {
        const auto census = generate(e.p);
        INFO("profile c=" << e.p.c << " a3=" << e.p.a3);
        CHECK(census.items.size() == e.total);
        CHECK(census.jammed_count == e.jammed);
        for (const auto& item : census.items) {
            CHECK(validate(item.complex).ok);
            CHECK(profile(item.complex) == e.p);
            CHECK(canonical_code(item.complex) == item.code);
            if (!item.jammed) CHECK_FALSE(item.rejection.empty());
        }
    }
}

TEST_CASE("the non-jammed 3-regular complex fails on its disjoint pairs") {
    const auto census = generate(Profile{8, 0, 12, 6});
    REQUIRE(census.items.size() == 2);
    const CensusItem* rejected = nullptr;
    for (const auto& item : census.items)
        if (!item.jammed) rejected = &item;
    REQUIRE(rejected != nullptr);
    CHECK(rejected->rejection.find("disjoint") != std::string::npos);
}

TEST_CASE("generator guards its supported range") {
    CHECK_THROWS_AS(generate(Profile{20, 0, 33, 24}), std::invalid_argument);
    CHECK_THROWS_AS(generate(Profile{-1, 0, 6, 4}), std::invalid_argument);
}

TEST_CASE("classification returns the five types") {
    const auto types = classify_jammed();
    REQUIRE(types.size() == 5);
    std::set<std::string> tags;
    for (const auto& t : types) tags.insert(t.type_tag);
    CHECK(tags == std::set<std::string>{"tetrahedron", "quadrangular-pyramid", "triangular-prism",
                                        "octahedron", "parallelepiped"});
    CHECK(types[0].type_tag == "tetrahedron");
    CHECK(types[1].type_tag == "quadrangular-pyramid");
    CHECK(types[2].type_tag == "triangular-prism");
    CHECK(types[3].type_tag == "octahedron");
    CHECK(types[4].type_tag == "parallelepiped");
    for (const auto& t : types) {
        CHECK(is_jammed(t.complex).jammed);
        CHECK((t.symmetric == (t.type_tag == "octahedron" || t.type_tag == "parallelepiped")));
        // Symmetric types carry the involution; asymmetric ones cannot,
        // since an involution forces an even cell count and disjoint pairs.
        const bool has_inv = antipodal_involution(t.complex).has_value();
        CHECK(has_inv == t.symmetric);
    }
}

TEST_CASE("jammedness in the plane") {
    CHECK(jammed_2d(3));
    CHECK(jammed_2d(4));
    for (int n = 5; n <= 12; ++n) CHECK_FALSE(jammed_2d(n));
    CHECK_THROWS_AS(jammed_2d(2), std::invalid_argument);
    CHECK_THROWS_AS(jammed_2d(0), std::invalid_argument);
}
