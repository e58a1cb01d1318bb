// Acceptance gate: one check per shipped claim, one PASS/FAIL line each,
// exit 0 only when every line passes.  Checks recompute everything from the
// library and compare against independently derived constants; nothing here
// trusts intermediate state from the unit tests.

#include <jammedfan/report.hpp>

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace jammedfan;
namespace fs = std::filesystem;

namespace {

struct Gate {
    int passed = 0;
    int failed = 0;

    void run(int num, const std::string& name, const std::function<std::string()>& body) {
        std::string detail;
        bool ok = false;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            detail = body();
            ok = true;
        } catch (const std::exception& e) {
            detail = e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::ostringstream line;
        line << (ok ? "PASS" : "FAIL") << "  " << num << ". " << name;
        if (!detail.empty()) line << ": " << detail;
        line.setf(std::ios::fixed);
        line.precision(2);
        line << " (" << secs << " s)";
        std::cout << line.str() << "\n";
        (ok ? passed : failed)++;
    }
};

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::runtime_error(msg);
}

template <typename T>
std::string join(const T& items) {
    std::ostringstream os;
    bool first = true;
    for (const auto& x : items) {
        if (!first) os << ", ";
        os << x;
        first = false;
    }
    return os.str();
}

std::set<std::string> type_tags() {
    return {"tetrahedron", "quadrangular-pyramid", "triangular-prism", "octahedron",
            "parallelepiped"};
}

Mat3 random_invertible(std::mt19937& rng) {
    std::uniform_int_distribution<int> coef(-6, 6);
    for (;;) {
        Mat3 m;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) m[i][j] = coef(rng);
        if (det(m) != 0) return m;
    }
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(JAMMEDFAN_CLI_PATH) + " " + args + " > /dev/null";
    const int rc = std::system(cmd.c_str());
    if (rc == -1 || !WIFEXITED(rc)) throw std::runtime_error("could not run: " + cmd);
    return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    require(bool(in), "unreadable " + p.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

int main() {
    Gate gate;
    const std::string grams_path = std::string(JAMMEDFAN_DATA_DIR) + "/grams_survey.json";

    gate.run(1, "valence profiles", [] {
        const auto t0 = std::chrono::steady_clock::now();
        const auto asym = solve_profiles(false);
        const auto sym = solve_profiles(true);
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const std::set<std::string> got_a = {detail::profile_str(asym[0]),
                                             detail::profile_str(asym[1]),
                                             detail::profile_str(asym[2])};
        require(asym.size() == 3 &&
                    got_a == std::set<std::string>{"(4, 0, 6, 4)", "(4, 1, 8, 5)", "(2, 3, 9, 6)"},
                "asymmetric profiles are not the expected three");
        require(sym.size() == 2, "expected two symmetric profiles");
        const std::set<std::string> got_s = {detail::profile_str(sym[0]),
                                             detail::profile_str(sym[1])};
        require(got_s == std::set<std::string>{"(0, 6, 12, 8)", "(8, 0, 12, 6)"},
                "symmetric profiles are not the expected two");
        require(secs < 1.0, "profile solve exceeded 1 s");
        return "3 asymmetric + 2 symmetric, integer-exact";
    });

    gate.run(2, "classification census", [] {
        const auto t0 = std::chrono::steady_clock::now();
        const auto types = classify_jammed();
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        require(types.size() == 5, "expected 5 jammed types, got " + std::to_string(types.size()));
        int asym = 0, sym = 0;
        std::set<std::string> tags;
        for (const auto& ct : types) {
            (ct.symmetric ? sym : asym)++;
            tags.insert(ct.type_tag);
        }
        require(asym == 3 && sym == 2, "split is not 3 asymmetric + 2 symmetric");
        require(tags == type_tags(), "tags differ from the five expected dual cells");
        require(secs < 60.0, "isomorph-free census exceeded 60 s");
        return "5 types (3 asymmetric, 2 symmetric), isomorph-free";
    });

    gate.run(3, "geometric witnesses", [] {
        std::map<std::string, std::string> census_code;
        for (const auto& ct : classify_jammed()) census_code[ct.type_tag] = ct.code;
        for (const char* tag : witness_tags()) {
            const GeometricFan fan = witness(tag);
            require(verify_complete(fan).complete, std::string(tag) + ": witness not complete");
            require(is_jammed_geometric(fan).jammed, std::string(tag) + ": witness not jammed");
            require(canonical_code(fan.complex) == census_code.at(tag),
                    std::string(tag) + ": witness code differs from census survivor");
        }
        return "all 5 witnesses complete, jammed, codes match census";
    });

    gate.run(4, "planar jammedness", [] {
        for (int n = 3; n <= 12; ++n)
            require(jammed_2d(n) == (n == 3 || n == 4),
                    "jammed_2d(" + std::to_string(n) + ") wrong");
        return "true exactly for 3 and 4 rays, n <= 12";
    });

    gate.run(5, "cell duality and face vectors", [] {
        const std::map<std::string, std::array<size_t, 3>> fvec = {
            {"tetrahedron", {4, 6, 4}},          {"quadrangular-pyramid", {5, 8, 5}},
            {"triangular-prism", {6, 9, 5}},     {"octahedron", {6, 12, 8}},
            {"parallelepiped", {8, 12, 6}},
        };
        std::mt19937 rng(986031);
        for (const char* tag : witness_tags()) {
            const FanComplex& fc = witness(tag).complex;
            const EquationSystem sys = derive_equations(fc);
            const auto expect = fvec.at(tag);
            const auto check_one = [&](const PointConfig& cfg, const std::string& what) {
                require(satisfies(sys, cfg), std::string(tag) + ": " + what + " violates equations");
                const Polytope3 hull = hull3(cfg.x);
                require(hull.vertices.size() == expect[0] && hull.edges.size() == expect[1] &&
                            hull.facets.size() == expect[2],
                        std::string(tag) + ": " + what + " has the wrong face vector");
                require(check_duality(fc, cfg).ok,
                        std::string(tag) + ": " + what + " fails duality");
            };
            check_one(solve_cell(sys), "canonical cell");
            for (int trial = 0; trial < 20; ++trial) {
                const Mat3 m = random_invertible(rng);
                check_one(solve_cell(sys, {m[0], m[1], m[2]}),
                          "random instantiation " + std::to_string(trial));
            }
        }
        return "canonical + 20 random instantiations per type, face vectors exact";
    });

    gate.run(6, "lattice index", [] {
        require(index_bound("parallelepiped") == Rat(1), "parallelepiped bound is not 1");
        require(index_bound("triangular-prism") == Rat(4, 3), "prism bound is not 4/3");
        require(index_bound("tetrahedron") == Rat(12, 5), "tetrahedron bound is not 12/5");
        require(index_bound("octahedron") < 2, "octahedron bound is not below 2");
        require(index_bound("quadrangular-pyramid") < 2, "pyramid bound is not below 2");
        for (const char* tag : witness_tags())
            require(index_bound(tag) <= Rat(12, 5), std::string(tag) + ": bound above 12/5");
        const auto verdicts = lattice_index_verdicts();
        require(verdicts.size() == 5, "expected 5 verdicts");
        for (const auto& v : verdicts) {
            require(v.index == 1, v.type_tag + ": index is not 1");
            if (v.type_tag == "tetrahedron") {
                require(v.eliminations.size() == 7,
                        "tetrahedron: expected 7 half-lattice eliminations, got " +
                            std::to_string(v.eliminations.size()));
                for (const auto& w : v.eliminations) {
                    require(Rat(2) * w.midpoint == w.edge[0] + w.edge[1],
                            "tetrahedron: witness midpoint is not the edge midpoint");
                    require(!is_integral(w.shift), "tetrahedron: witness shift is a lattice point");
                    require(is_integral((w.s - w.shift)),
                            "tetrahedron: witness point not in the candidate superlattice");
                }
            } else {
                require(v.eliminations.empty(), v.type_tag + ": unexpected eliminations");
            }
        }
        return "bounds 1, 4/3, 12/5 exact; others < 2; 7 eliminations; index 1 everywhere";
    });

    gate.run(7, "difference body volumes", [] {
        const auto tetra = detail::canonical_cell("tetrahedron");
        const Rat vol_t = volume(tetra.hull);
        const Rat vol_dt = volume(difference_body(tetra.hull).polytope);
        require(vol_dt == Rat(20) * vol_t, "simplex misses the Rogers-Shephard equality");
        const auto cube = detail::canonical_cell("parallelepiped");
        const Rat vol_c = volume(cube.hull);
        const Rat vol_dc = volume(difference_body(cube.hull).polytope);
        require(vol_dc == Rat(8) * vol_c, "parallelepiped difference body is not 8x");
        return "vol(D-D) = 20 vol(D) for the simplex, 8 vol(D) for the parallelepiped";
    });

    gate.run(8, "lattice harness", [&grams_path] {
        struct Case {
            const char* name;
            Mat3 gram;
            bool need_midpoints;
        };
        const auto G = [](std::array<std::array<int, 3>, 3> rows) {
            Mat3 m;
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) m[i][j] = rows[i][j];
            return m;
        };
        const std::vector<Case> cases = {
            {"identity", Mat3::identity(), false},
            {"fcc", G({{{2, 1, 1}, {1, 2, 1}, {1, 1, 2}}}), true},
            {"bcc", G({{{3, -1, -1}, {-1, 3, -1}, {-1, -1, 3}}}), true},
            {"hexagonal", G({{{2, 1, 0}, {1, 2, 0}, {0, 0, 1}}}), false},
        };
        const auto known = type_tags();
        for (const auto& c : cases) {
            const auto t0 = std::chrono::steady_clock::now();
            const SurveyEntry e = survey_one(c.name, c.gram);
            const double secs =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            require(e.error.empty(), std::string(c.name) + ": " + e.error);
            for (const auto& cell : e.cells) {
                require(known.count(cell.type_tag) == 1,
                        std::string(c.name) + ": cell outside the five types");
                require(cell.duality_ok, std::string(c.name) + ": duality check failed");
                require(cell.lattice_ok,
                        std::string(c.name) + ": generated lattice differs from the full lattice");
            }
            require(e.jammed_ok, std::string(c.name) + ": a vertex fan is not jammed");
            if (c.need_midpoints)
                require(e.midpoint_ok, std::string(c.name) + ": an edge midpoint is not interior");
            require(secs < 10.0, std::string(c.name) + ": harness exceeded 10 s");
        }
        const auto family = grams_from_json(load_json_file(grams_path));
        const SurveyReport rep = survey(family, 1);
        std::set<std::string> seen;
        for (const auto& e : rep.entries) {
            require(e.ok, e.name + ": curated family entry failed");
            for (const auto& [t, n] : e.type_counts) seen.insert(t);
        }
        require(seen == known, "curated family misses a type; saw only: " + join(seen));
        return "4 reference lattices verified; curated family exhibits all 5 types";
    });

    gate.run(9, "volume partition", [&grams_path] {
        const auto family = grams_from_json(load_json_file(grams_path));
        for (const auto& [name, gram] : family) {
            const SurveyEntry e = survey_one(name, gram);
            require(e.error.empty(), name + ": " + e.error);
            Rat total = 0;
            for (const auto& v : e.volumes) total += v;
            require(total == 1, name + ": cell volumes sum to " + format_rat(total) +
                                    ", not the fundamental volume");
        }
        return "sum of cell volumes equals the fundamental volume for every lattice";
    });

    gate.run(10, "report determinism", [&grams_path] {
        const fs::path dir1 = fs::temp_directory_path() / "jammedfan_acceptance_r1";
        const fs::path dir2 = fs::temp_directory_path() / "jammedfan_acceptance_r2";
        fs::remove_all(dir1);
        fs::remove_all(dir2);
        const std::string args = "report --grams \"" + grams_path + "\" --out \"";
        require(run_cli(args + dir1.string() + "\"") == 0, "first report run failed");
        require(run_cli(args + dir2.string() + "\"") == 0, "second report run failed");
        std::vector<std::string> names;
        for (const auto& entry : fs::directory_iterator(dir1))
            names.push_back(entry.path().filename().string());
        std::sort(names.begin(), names.end());
        require(names.size() == 8, "expected 8 artifact files, got " + std::to_string(names.size()));
        for (const auto& n : names)
            require(slurp(dir1 / n) == slurp(dir2 / n), n + " differs between runs");
        fs::remove_all(dir1);
        fs::remove_all(dir2);
        return "two report runs byte-identical across " + std::to_string(names.size()) + " artifacts";
    });

    std::cout << "acceptance: " << gate.passed << "/" << (gate.passed + gate.failed)
              << " criteria pass\n";
    return gate.failed == 0 ? 0 : 1;
}
