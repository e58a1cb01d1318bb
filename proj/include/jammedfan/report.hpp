#pragma once

// End-to-end verification run: executes every pipeline stage, records a
// pass/fail verdict per claim, and renders the artifact files.  Everything
// written here is deterministic byte for byte, so two runs over the same
// input directory compare equal.

#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <jammedfan/json_io.hpp>

namespace jammedfan {

struct SectionResult {
    std::string name;
    bool pass = false;
    std::string summary;
    std::string certificate;  // artifact file(s) holding the evidence
};

struct VerificationReport {
    std::vector<CensusEntry> census_asymmetric;
    std::vector<CensusEntry> census_symmetric;
    std::vector<ClassifiedType> classification;
    std::vector<IndexVerdict> verdicts;
    SurveyReport survey_report;
    std::vector<SectionResult> sections;
    bool pass = false;
};

namespace detail {

inline std::string profile_str(const Profile& p) {
    std::ostringstream os;
    os << "(" << p.a3 << ", " << p.a4 << ", " << p.b << ", " << p.c << ")";
    return os.str();
}

inline std::string vec_str(const Vec3& v) {
    return "(" + format_rat(v[0]) + ", " + format_rat(v[1]) + ", " + format_rat(v[2]) + ")";
}

}  // namespace detail

inline VerificationReport build_verification_report(
    const std::vector<std::pair<std::string, Mat3>>& grams, unsigned threads = 0) {
    VerificationReport rep;

    const auto asym = solve_profiles(false);
    const auto sym = solve_profiles(true);
    for (const auto& p : asym) rep.census_asymmetric.push_back(generate(p));
    for (const auto& p : sym) rep.census_symmetric.push_back(generate(p));
    rep.classification = classify_jammed();
    rep.verdicts = lattice_index_verdicts();
    rep.survey_report = survey(grams, threads);

    auto add = [&rep](std::string name, bool pass, std::string summary, std::string cert) {
        rep.sections.push_back(
            {std::move(name), pass, std::move(summary), std::move(cert)});
    };

    {
        const std::vector<Profile> expect = {{4, 0, 6, 4}, {4, 1, 8, 5}, {2, 3, 9, 6}};
        const bool ok = asym == expect;
        add("profiles_asymmetric", ok,
            ok ? "exactly three solvable profiles: (4, 0, 6, 4), (4, 1, 8, 5), (2, 3, 9, 6)"
              : "profile solutions differ from the expected three",
            "census.json");
    }
    {
        const std::vector<Profile> expect = {{8, 0, 12, 6}, {0, 6, 12, 8}};
        const bool ok = sym == expect;
        add("profiles_symmetric", ok,
            ok ? "exactly two centrally symmetric profiles: (8, 0, 12, 6), (0, 6, 12, 8)"
              : "symmetric profile solutions differ from the expected two",
            "census.json");
    }
    {
        bool ok = rep.classification.size() == 5;
        int n_asym = 0, n_sym = 0;
        std::set<std::string> tags;
        for (const auto& ct : rep.classification) {
            (ct.symmetric ? n_sym : n_asym)++;
            tags.insert(ct.type_tag);
        }
        ok = ok && n_asym == 3 && n_sym == 2 && tags.size() == 5;
        for (const char* tag : witness_tags()) ok = ok && tags.count(tag) == 1;
        // Each census keeps exactly one jammed class per profile.
        for (const auto& e : rep.census_asymmetric) ok = ok && e.jammed_count == 1;
        for (const auto& e : rep.census_symmetric) ok = ok && e.jammed_count == 1;
        add("classification", ok,
            ok ? "five jammed types, one per profile: tetrahedron, quadrangular-pyramid, "
                 "triangular-prism, octahedron, parallelepiped"
              : "census does not reduce to one jammed class per profile",
            "census.json");
    }
    {
        bool ok = true;
        for (int n = 3; n <= 12; ++n) ok = ok && jammed_2d(n) == (n == 3 || n == 4);
        add("two_dimensional_jammedness", ok,
            ok ? "planar fans are jammed exactly for 3 and 4 rays (checked through 12)"
              : "planar jammedness disagrees with the 3-or-4-ray rule",
            "");
    }
    {
        std::map<std::string, std::string> code_by_tag;
        for (const auto& ct : rep.classification) code_by_tag[ct.type_tag] = ct.code;
        bool ok = true;
        for (const char* tag : witness_tags()) {
            const GeometricFan fan = witness(tag);
            ok = ok && verify_complete(fan).complete;
            ok = ok && is_jammed_geometric(fan).jammed;
            ok = ok && canonical_code(fan.complex) == code_by_tag[tag];
        }
        for (const auto& e : rep.survey_report.entries) ok = ok && e.ok && e.jammed_ok;
        add("jammedness_of_tiling_fans", ok,
            ok ? "all five witness fans and every surveyed vertex fan are complete and jammed"
              : "a witness or surveyed vertex fan failed a completeness or jammedness check",
            "witnesses.json, survey.json");
    }
    {
        bool ok = true;
        for (const char* tag : witness_tags()) {
            const GeometricFan fan = witness(tag);
            const PointConfig cfg = solve_cell(derive_equations(fan.complex));
            ok = ok && check_duality(fan.complex, cfg).ok;
        }
        for (const auto& e : rep.survey_report.entries) {
            ok = ok && e.ok;
            for (const auto& c : e.cells) ok = ok && c.duality_ok;
        }
        add("duality", ok,
            ok ? "cone posets of all five fans are dual to the face lattices of their cells, "
                 "in canonical form and in every surveyed tiling"
              : "a duality check between a fan and its cell failed",
            "duality.json, survey.json");
    }
    {
        bool ok = rep.verdicts.size() == 5;
        int eliminated = 0;
        for (const auto& v : rep.verdicts) {
            ok = ok && v.index == 1;
            ok = ok && v.needs_elimination == (v.bound >= 2);
            ok = ok && (v.eliminations.empty() != v.needs_elimination);
            eliminated += static_cast<int>(v.eliminations.size());
        }
        std::ostringstream os;
        os << "every type generates the full period lattice";
        if (eliminated > 0) os << " (" << eliminated << " half-lattice candidates eliminated)";
        add("lattice_index", ok, ok ? os.str() : "a lattice index verdict came back above 1",
            "index.json");
    }

    rep.pass = true;
    for (const auto& s : rep.sections) rep.pass = rep.pass && s.pass;
    return rep;
}

inline Json verification_report_to_json(const VerificationReport& rep) {
    Json j;
    j["pass"] = rep.pass;
    Json sections = Json::object();
    for (const auto& s : rep.sections) {
        Json sec;
        sec["pass"] = s.pass;
        sec["summary"] = s.summary;
        if (!s.certificate.empty()) sec["certificate"] = s.certificate;
        sections[s.name] = std::move(sec);
    }
    j["sections"] = std::move(sections);
    return j;
}

inline Json witnesses_to_json(const VerificationReport& rep) {
    std::map<std::string, const ClassifiedType*> by_tag;
    for (const auto& ct : rep.classification) by_tag[ct.type_tag] = &ct;
    Json j = Json::object();
    for (const char* tag : witness_tags()) {
        const GeometricFan fan = witness(tag);
        Json w;
        w["profile"] = profile_to_json(profile(fan.complex));
        w["symmetric"] = by_tag.at(tag)->symmetric;
        w["code"] = canonical_code(fan.complex);
        w["fan"] = geometric_fan_to_json(fan);
        j[tag] = std::move(w);
    }
    return j;
}

inline Json cells_to_json() {
    Json j = Json::object();
    for (const char* tag : witness_tags()) {
        const GeometricFan fan = witness(tag);
        const EquationSystem sys = derive_equations(fan.complex);
        const PointConfig cfg = solve_cell(sys);
        Json c;
        c["equations"] = equation_system_to_json(sys);
        c["points"] = point_config_to_json(cfg);
        c["volume"] = format_rat(volume(hull3(cfg.x)));
        c["lattice_basis"] = mat3_to_json(span_lattice(cfg).basis);
        j[tag] = std::move(c);
    }
    return j;
}

inline Json duality_to_json() {
    Json j = Json::object();
    for (const char* tag : witness_tags()) {
        const GeometricFan fan = witness(tag);
        const PointConfig cfg = solve_cell(derive_equations(fan.complex));
        j[tag] = duality_report_to_json(check_duality(fan.complex, cfg));
    }
    return j;
}

inline Json index_to_json(const VerificationReport& rep) {
    Json j = Json::array();
    for (const auto& v : rep.verdicts) j.push_back(index_verdict_to_json(v));
    return j;
}

// Markdown companion: the classification table plus, for each type, a
// combinatorial description of the fan precise enough to redraw it.
inline std::string verification_report_markdown(const VerificationReport& rep) {
    std::map<std::string, const ClassifiedType*> by_tag;
    for (const auto& ct : rep.classification) by_tag[ct.type_tag] = &ct;
    std::map<std::string, const IndexVerdict*> verdict_by_tag;
    for (const auto& v : rep.verdicts) verdict_by_tag[v.type_tag] = &v;

    std::ostringstream md;
    md << "# Jammed fans at codimension 3\n\n";
    md << "Verification " << (rep.pass ? "PASSED" : "FAILED") << ".\n\n";
    md << "## Checks\n\n";
    md << "| check | result | evidence |\n|---|---|---|\n";
    for (const auto& s : rep.sections) {
        md << "| " << s.name << " | " << (s.pass ? "pass" : "FAIL") << " | " << s.summary;
        if (!s.certificate.empty()) md << " (" << s.certificate << ")";
        md << " |\n";
    }

    md << "\n## The five types\n\n";
    md << "| dual cell | profile (a3, a4, b, c) | symmetric | cell volume | index bound | "
          "lattice index |\n|---|---|---|---|---|---|\n";
    for (const char* tag : witness_tags()) {
        const ClassifiedType& ct = *by_tag.at(tag);
        const IndexVerdict& v = *verdict_by_tag.at(tag);
        const PointConfig cfg = solve_cell(derive_equations(ct.complex));
        md << "| " << tag << " | " << detail::profile_str(ct.profile) << " | "
           << (ct.symmetric ? "yes" : "no") << " | " << format_rat(volume(hull3(cfg.x)))
           << " | " << format_rat(v.bound) << " | " << v.index;
        if (v.needs_elimination) md << " (after elimination)";
        md << " |\n";
    }

    md << "\n## Fan descriptions\n\n";
    md << "Each fan is given by witness rays and the cyclic ray walk of every "
          "3-cone; together with the canonical code this determines the fan up "
          "to relabeling.\n";
    for (const char* tag : witness_tags()) {
        const GeometricFan fan = witness(tag);
        md << "\n### " << tag << "\n\n";
        md << "- profile: " << detail::profile_str(profile(fan.complex)) << "\n";
        md << "- canonical code: `" << canonical_code(fan.complex) << "`\n";
        md << "- rays:";
        for (const auto& r : fan.rays) md << " " << detail::vec_str(r);
        md << "\n- cones:";
        for (const auto& cell : fan.complex.cells) {
            md << " [";
            for (size_t i = 0; i < cell.size(); ++i) md << (i ? " " : "") << cell[i];
            md << "]";
        }
        md << "\n";
    }

    md << "\n## Surveyed lattices\n\n";
    md << "| lattice | relevant vectors | cell classes | types | jammed | midpoints | "
          "partition |\n|---|---|---|---|---|---|---|\n";
    for (const auto& e : rep.survey_report.entries) {
        md << "| " << e.name << " | ";
        if (!e.error.empty()) {
            md << "error: " << e.error << " | | | | | |\n";
            continue;
        }
        md << e.relevant_count << " | " << e.cells.size() << " | ";
        bool first = true;
        for (const auto& [t, n] : e.type_counts) {
            if (!first) md << ", ";
            md << t << " x" << n;
            first = false;
        }
        md << " | " << (e.jammed_ok ? "yes" : "NO") << " | " << (e.midpoint_ok ? "interior" : "NO")
           << " | " << (e.partition_ok ? "exact" : "NO") << " |\n";
    }
    return md.str();
}

// Writes the whole artifact set into dir (which must exist).
inline void write_report_directory(const VerificationReport& rep, const std::string& dir) {
    const std::string base = dir.empty() ? std::string(".") : dir;
    auto emit = [&base](const std::string& name, const Json& j) {
        write_text_file(base + "/" + name, dump_json(j));
    };
    emit("report.json", verification_report_to_json(rep));
    Json census;
    census["asymmetric"] = census_to_json(rep.census_asymmetric);
    census["symmetric"] = census_to_json(rep.census_symmetric);
    emit("census.json", census);
    emit("witnesses.json", witnesses_to_json(rep));
    emit("cells.json", cells_to_json());
    emit("duality.json", duality_to_json());
    emit("index.json", index_to_json(rep));
    emit("survey.json", survey_report_to_json(rep.survey_report));
    write_text_file(base + "/report.md", verification_report_markdown(rep));
}

}  // namespace jammedfan
