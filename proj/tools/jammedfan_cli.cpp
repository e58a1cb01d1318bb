// Command-line surface over the library.  Every subcommand prints a
// machine-readable certificate (JSON on stdout, diagnostics on stderr) and
// exits 0 exactly when its checks pass.

#include <CLI11.hpp>

#include <jammedfan/report.hpp>

#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace jammedfan;

namespace {

unsigned worker_cap() {
    const char* s = std::getenv("JAMMEDFAN_THREADS");
    if (!s || !*s) return 0;
    char* end = nullptr;
    const unsigned long v = std::strtoul(s, &end, 10);
    if (end == s || *end != '\0' || v == 0)
        throw std::invalid_argument("JAMMEDFAN_THREADS must be a positive integer");
    return static_cast<unsigned>(v);
}

void print_json(const Json& j) { std::cout << dump_json(j); }

int cmd_profiles(bool symmetric) {
    for (const Profile& p : solve_profiles(symmetric)) std::cout << detail::profile_str(p) << "\n";
    return 0;
}

int cmd_enumerate(const std::vector<int>& profile) {
    if (profile.size() != 4)
        throw std::invalid_argument("--profile needs four integers a3,a4,b,c");
    const CensusEntry entry = generate(Profile{profile[0], profile[1], profile[2], profile[3]});
    print_json(census_entry_to_json(entry));
    return 0;
}

int cmd_classify() {
    const auto types = classify_jammed();
    for (const auto& ct : types) {
        std::cout << std::left << std::setw(22) << ct.type_tag << std::setw(16)
                  << detail::profile_str(ct.profile) << std::setw(12)
                  << (ct.symmetric ? "symmetric" : "asymmetric") << ct.code << "\n";
    }
    return types.size() == 5 ? 0 : 1;
}

int cmd_witness(const std::string& tag) {
    const GeometricFan fan = witness(tag);
    const bool complete = verify_complete(fan).complete;
    const bool jammed = is_jammed_geometric(fan).jammed;
    Json j;
    j["type"] = tag;
    j["profile"] = profile_to_json(profile(fan.complex));
    j["code"] = canonical_code(fan.complex);
    j["fan"] = geometric_fan_to_json(fan);
    j["complete"] = complete;
    j["jammed"] = jammed;
    print_json(j);
    return complete && jammed ? 0 : 1;
}

int cmd_cell(const std::string& tag) {
    const GeometricFan fan = witness(tag);
    const EquationSystem sys = derive_equations(fan.complex);
    const PointConfig cfg = solve_cell(sys);
    Json j;
    j["type"] = tag;
    j["equations"] = equation_system_to_json(sys);
    j["points"] = point_config_to_json(cfg);
    j["volume"] = format_rat(volume(hull3(cfg.x)));
    j["lattice_basis"] = mat3_to_json(span_lattice(cfg).basis);
    print_json(j);
    return 0;
}

int cmd_duality(const std::string& tag) {
    const GeometricFan fan = witness(tag);
    const PointConfig cfg = solve_cell(derive_equations(fan.complex));
    const DualityReport rep = check_duality(fan.complex, cfg);
    Json j;
    j["type"] = tag;
    j["duality"] = duality_report_to_json(rep);
    print_json(j);
    return rep.ok ? 0 : 1;
}

int cmd_index(const std::string& tag) {
    for (const IndexVerdict& v : lattice_index_verdicts()) {
        if (v.type_tag != tag) continue;
        print_json(index_verdict_to_json(v));
        return v.index == 1 ? 0 : 1;
    }
    throw std::invalid_argument("index: unknown type " + tag);
}

int cmd_eliminate_halflattices() {
    const auto cc = detail::canonical_cell("tetrahedron");
    Json j = Json::array();
    for (const Superlattice& cand : halflattice_candidates(cc.lattice))
        j.push_back(elimination_witness_to_json(eliminate_candidate(cand, cc.config)));
    print_json(j);
    return 0;
}

int cmd_delaunay(const std::string& path) {
    const auto grams = grams_from_json(load_json_file(path));
    if (grams.size() != 1)
        throw std::invalid_argument("delaunay: expected one Gram matrix (use survey for a family)");
    const SurveyEntry e = survey_one(grams[0].first, grams[0].second);
    print_json(survey_entry_to_json(e));
    if (!e.error.empty()) std::cerr << grams[0].first << ": " << e.error << "\n";
    return e.ok ? 0 : 1;
}

void print_survey_table(const SurveyReport& rep) {
    std::cout << std::left << std::setw(22) << "lattice" << std::right << std::setw(9) << "relevant"
              << std::setw(9) << "classes" << "  " << std::left << std::setw(40) << "types"
              << std::setw(8) << "jammed" << std::setw(11) << "midpoints" << std::setw(7)
              << "parts" << std::right << std::setw(9) << "ms" << "\n";
    for (const auto& e : rep.entries) {
        std::cout << std::left << std::setw(22) << e.name;
        if (!e.error.empty()) {
            std::cout << "ERROR: " << e.error << "\n";
            continue;
        }
        std::ostringstream types;
        bool first = true;
        for (const auto& [t, n] : e.type_counts) {
            if (!first) types << ", ";
            types << t << " x" << n;
            first = false;
        }
        std::cout << std::right << std::setw(9) << e.relevant_count << std::setw(9)
                  << e.cells.size() << "  " << std::left << std::setw(40) << types.str()
                  << std::setw(8) << (e.jammed_ok ? "yes" : "NO") << std::setw(11)
                  << (e.midpoint_ok ? "interior" : "NO") << std::setw(7)
                  << (e.partition_ok ? "exact" : "NO") << std::right << std::setw(9) << std::fixed
                  << std::setprecision(1) << e.runtime_ms << "\n";
    }
}

int cmd_survey(const std::string& path, bool table) {
    const auto grams = grams_from_json(load_json_file(path));
    const SurveyReport rep = survey(grams, worker_cap());
    if (table)
        print_survey_table(rep);
    else
        print_json(survey_report_to_json(rep));
    for (const auto& e : rep.entries)
        if (!e.ok) return 1;
    return 0;
}

int cmd_report(const std::string& out_dir, const std::string& grams_path) {
    const auto grams = grams_from_json(load_json_file(grams_path));
    const VerificationReport rep = build_verification_report(grams, worker_cap());
    std::filesystem::create_directories(out_dir);
    write_report_directory(rep, out_dir);
    for (const auto& s : rep.sections)
        std::cout << std::left << std::setw(28) << s.name << (s.pass ? "pass" : "FAIL") << "  "
                  << s.summary << "\n";
    std::cout << (rep.pass ? "PASSED" : "FAILED") << "; artifacts in " << out_dir << "\n";
    return rep.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"classification of jammed 3-dimensional fans and their dual cells"};
    app.require_subcommand(1);

    bool symmetric = false;
    auto* profiles = app.add_subcommand("profiles", "solvable valence profiles");
    profiles->add_flag("--symmetric", symmetric, "restrict to centrally symmetric fans");

    std::vector<int> profile_arg;
    auto* enumerate = app.add_subcommand("enumerate", "census of complexes with one profile");
    enumerate->add_option("--profile", profile_arg, "a3,a4,b,c")->required()->delimiter(',');

    auto* classify = app.add_subcommand("classify", "the five jammed combinatorial types");

    std::string type_tag;
    auto* witness_cmd = app.add_subcommand("witness", "geometric witness fan for a type");
    witness_cmd->add_option("--type", type_tag, "type tag")->required();
    auto* cell_cmd = app.add_subcommand("cell", "canonical dual cell for a type");
    cell_cmd->add_option("--type", type_tag, "type tag")->required();
    auto* duality_cmd = app.add_subcommand("duality", "cone-poset / face-lattice duality check");
    duality_cmd->add_option("--type", type_tag, "type tag")->required();
    auto* index_cmd = app.add_subcommand("index", "lattice index certificate for a type");
    index_cmd->add_option("--type", type_tag, "type tag")->required();

    auto* eliminate = app.add_subcommand("eliminate-halflattices",
                                         "witnesses against the tetrahedral half-lattice candidates");

    std::string gram_path;
    auto* delaunay_cmd = app.add_subcommand("delaunay", "Delaunay cells of one Gram matrix");
    delaunay_cmd->add_option("--gram", gram_path, "JSON file with a Gram matrix")->required();

    std::string grams_path = "data/grams_survey.json";
    bool table = false;
    auto* survey_cmd = app.add_subcommand("survey", "classify the cells of a lattice family");
    survey_cmd->add_option("--grams", grams_path, "JSON file with named Gram matrices");
    survey_cmd->add_flag("--table", table, "human-readable table with runtimes");

    std::string out_dir = "report";
    std::string report_grams = "data/grams_survey.json";
    auto* report_cmd = app.add_subcommand("report", "run every verification, write all artifacts");
    report_cmd->add_option("--out", out_dir, "output directory");
    report_cmd->add_option("--grams", report_grams, "JSON file with named Gram matrices");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*profiles) return cmd_profiles(symmetric);
        if (*enumerate) return cmd_enumerate(profile_arg);
        if (*classify) return cmd_classify();
        if (*witness_cmd) return cmd_witness(type_tag);
        if (*cell_cmd) return cmd_cell(type_tag);
        if (*duality_cmd) return cmd_duality(type_tag);
        if (*index_cmd) return cmd_index(type_tag);
        if (*eliminate) return cmd_eliminate_halflattices();
        if (*delaunay_cmd) return cmd_delaunay(gram_path);
        if (*survey_cmd) return cmd_survey(grams_path, table);
        if (*report_cmd) return cmd_report(out_dir, report_grams);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
