#include <catch2/catch_amalgamated.hpp>

#include <jammedfan/enumerate.hpp>
#include <jammedfan/geometry.hpp>

#include <algorithm>
#include <set>

using namespace jammedfan;

namespace {

FanComplex cube_fan_complex() {
    // Rays 0..2 are +x,+y,+z and 3..5 the negations; cells are the octants.
    FanComplex fc;
    fc.ray_count = 6;
    fc.cells = {{0, 1, 2}, {1, 3, 2}, {3, 4, 2}, {4, 0, 2},
                {1, 0, 5}, {3, 1, 5}, {4, 3, 5}, {0, 4, 5}};
    return fc;
}

GeometricFan cube_fan_with_apex(const Vec3& apex) {
    GeometricFan fan;
    fan.complex = cube_fan_complex();
    fan.rays = {Vec3(1, 0, 0), Vec3(0, 1, 0), apex, Vec3(-1, 0, 0), Vec3(0, -1, 0), Vec3(0, 0, -1)};
    return fan;
}

// Face fan of a triangle bipyramid with one apex pulled sideways: complete
// and combinatorially of prism type, but the walls at the equator rays are
// not aligned planes.
GeometricFan skewed_bipyramid_fan() {
    GeometricFan fan;
    fan.rays = {Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(-1, -1, 0), Vec3(0, 0, 1), Vec3(1, 1, -1)};
    fan.complex.ray_count = 5;
    fan.complex.cells = {{0, 1, 3}, {1, 2, 3}, {2, 0, 3}, {1, 0, 4}, {2, 1, 4}, {0, 2, 4}};
    return fan;
}

}  // namespace

TEST_CASE("witness fans are complete and of the advertised type") {
    for (const char* tag : witness_tags()) {
        const auto fan = witness(tag);
        INFO("type " << tag);
        const auto rep = verify_complete(fan);
        CAPTURE(rep.diagnostics);
        CHECK(rep.complete);
        CHECK(dual_cell_tag(fan.complex) == tag);
        CHECK(validate(fan.complex).ok);
    }
    CHECK_THROWS_AS(witness("dodecahedron"), std::invalid_argument);
}

TEST_CASE("witness complexes match the enumerated classification") {
    const auto types = classify_jammed();
    for (const auto& t : types) {
        const auto fan = witness(t.type_tag);
        CHECK(canonical_code(fan.complex) == t.code);
    }
}

TEST_CASE("witness fans are geometrically jammed with the right certificates") {
    for (const char* tag : witness_tags()) {
        const auto fan = witness(tag);
        INFO("type " << tag);
        const auto rep = is_jammed_geometric(fan);
        CAPTURE(rep.diagnostics);
        REQUIRE(rep.jammed);
        const bool symmetric = std::string(tag) == "octahedron" || std::string(tag) == "parallelepiped";
        CHECK((rep.combinatorial.pairs_disjoint > 0) == symmetric);
        CHECK(rep.negation_ray_map.empty() == !symmetric);
        if (symmetric) {
            // Negation is an involution matching the recorded pairing.
            for (size_t r = 0; r < fan.rays.size(); ++r) {
                const int nr = rep.negation_ray_map[r];
                CHECK(primitive_ray(-fan.rays[r]) == primitive_ray(fan.rays[static_cast<size_t>(nr)]));
                CHECK(rep.negation_ray_map[static_cast<size_t>(nr)] == static_cast<int>(r));
            }
        }
    }
}

TEST_CASE("completeness is invariant under positive rescaling and unimodular maps") {
    const auto fan = witness("octahedron");
    SECTION("rescaling rays") {
        GeometricFan scaled = fan;
        const Rat factors[] = {Rat(1, 2), Rat(3), Rat(7, 5), Rat(2), Rat(1), Rat(11, 3), Rat(5), Rat(1, 7)};
        for (size_t r = 0; r < scaled.rays.size(); ++r)
            scaled.rays[r] = factors[r % 8] * scaled.rays[r];
        CHECK(verify_complete(scaled).complete);
        CHECK(is_jammed_geometric(scaled).jammed);
    }
    SECTION("unimodular image") {
        Mat3 u;
        u[0] = Vec3(1, 1, 0);
        u[1] = Vec3(0, 1, 1);
        u[2] = Vec3(0, 0, 1);
        REQUIRE(det(u) == 1);
        GeometricFan img = fan;
        for (auto& r : img.rays) r = mul(u, r);
        CHECK(verify_complete(img).complete);
        CHECK(is_jammed_geometric(img).jammed);
    }
}

TEST_CASE("verify_complete accepts a skewed but complete fan") {
    const auto fan = cube_fan_with_apex(Vec3(1, 1, 1));
    const auto rep = verify_complete(fan);
    CAPTURE(rep.diagnostics);
    CHECK(rep.complete);
}

TEST_CASE("verify_complete rejects broken inputs") {
    SECTION("apex pulled through the equator") {
        const auto fan = cube_fan_with_apex(Vec3(2, 2, -1));
        const auto rep = verify_complete(fan);
        CHECK_FALSE(rep.complete);
        CHECK_FALSE(rep.diagnostics.empty());
    }
    SECTION("zero ray") {
        auto fan = cube_fan_with_apex(Vec3(0, 0, 0));
        CHECK_FALSE(verify_complete(fan).complete);
    }
    SECTION("duplicate ray direction") {
        auto fan = cube_fan_with_apex(Vec3(2, 0, 0));  // parallel to ray 0
        CHECK_FALSE(verify_complete(fan).complete);
    }
    SECTION("invalid complex") {
        auto fan = cube_fan_with_apex(Vec3(0, 0, 1));
        fan.complex.cells.pop_back();
        CHECK_FALSE(verify_complete(fan).complete);
    }
    SECTION("ray count mismatch") {
        auto fan = witness("tetrahedron");
        fan.rays.pop_back();
        CHECK_FALSE(verify_complete(fan).complete);
    }
}

TEST_CASE("complete fans can fail geometric jammedness") {
    SECTION("skewed apex breaks the aligned-wall condition") {
        const auto fan = cube_fan_with_apex(Vec3(1, 1, 1));
        REQUIRE(verify_complete(fan).complete);
        REQUIRE(is_jammed(fan.complex).jammed);
        const auto rep = is_jammed_geometric(fan);
        CHECK_FALSE(rep.jammed);
        CHECK_FALSE(rep.diagnostics.empty());
    }
    SECTION("skewed bipyramid fails at the equator rays") {
        const auto fan = skewed_bipyramid_fan();
        REQUIRE(verify_complete(fan).complete);
        REQUIRE(is_jammed(fan.complex).jammed);
        const auto rep = is_jammed_geometric(fan);
        CHECK_FALSE(rep.jammed);
        bool mentions_link = false;
        for (const auto& d : rep.diagnostics)
            if (d.find("valence-4") != std::string::npos) mentions_link = true;
        CHECK(mentions_link);
    }
    SECTION("straightened bipyramid is jammed") {
        auto fan = skewed_bipyramid_fan();
        fan.rays[4] = Vec3(0, 0, -1);
        const auto rep = is_jammed_geometric(fan);
        CAPTURE(rep.diagnostics);
        CHECK(rep.jammed);
    }
}

TEST_CASE("normal fan of the cube") {
    std::vector<Vec3> pts;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int z = 0; z < 2; ++z) pts.push_back(Vec3(x, y, z));
    const auto fan = normal_fan(hull3(pts));
    REQUIRE(fan.rays.size() == 6);
    std::set<Vec3> dirs(fan.rays.begin(), fan.rays.end());
    const std::set<Vec3> expect = {Vec3(1, 0, 0),  Vec3(-1, 0, 0), Vec3(0, 1, 0),
                                   Vec3(0, -1, 0), Vec3(0, 0, 1),  Vec3(0, 0, -1)};
    CHECK(dirs == expect);
    CHECK(fan.complex.cells.size() == 8);
    for (const auto& w : fan.complex.cells) CHECK(w.size() == 3);
    CHECK(verify_complete(fan).complete);
}
