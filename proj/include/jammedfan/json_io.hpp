#pragma once

// JSON serialization for every artifact the tools emit or consume.  All
// rationals travel as strings ("p" or "p/q", reduced, positive denominator)
// so no consumer ever rounds; object key order is fixed at construction so
// equal inputs serialize to identical bytes.

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include <jammedfan/delaunay.hpp>
#include <jammedfan/enumerate.hpp>
#include <jammedfan/lattice.hpp>

namespace jammedfan {

using Json = nlohmann::ordered_json;

inline Json vec3_to_json(const Vec3& v) {
    return Json::array({format_rat(v[0]), format_rat(v[1]), format_rat(v[2])});
}

inline Vec3 vec3_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 3) throw std::invalid_argument("vector: expected 3 entries");
    Vec3 v;
    for (int i = 0; i < 3; ++i) v[i] = parse_rat(j[static_cast<size_t>(i)].get<std::string>());
    return v;
}

inline Json mat3_to_json(const Mat3& m) {
    return Json::array({vec3_to_json(m[0]), vec3_to_json(m[1]), vec3_to_json(m[2])});
}

inline Mat3 mat3_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 3) throw std::invalid_argument("matrix: expected 3 rows");
    Mat3 m;
    for (int i = 0; i < 3; ++i) m[i] = vec3_from_json(j[static_cast<size_t>(i)]);
    return m;
}

inline Json profile_to_json(const Profile& p) { return Json::array({p.a3, p.a4, p.b, p.c}); }

inline Json fan_to_json(const FanComplex& fc) {
    Json j;
    j["rays"] = fc.ray_count;
    j["cells"] = fc.cells;
    return j;
}

inline FanComplex fan_from_json(const Json& j) {
    FanComplex fc;
    if (!j.is_object() || !j.contains("rays") || !j.contains("cells"))
        throw std::invalid_argument("fan: expected object with rays and cells");
    fc.ray_count = j.at("rays").get<int>();
    fc.cells = j.at("cells").get<std::vector<std::vector<int>>>();
    return fc;
}

inline Json geometric_fan_to_json(const GeometricFan& fan) {
    Json j;
    Json rays = Json::array();
    for (const auto& r : fan.rays) rays.push_back(vec3_to_json(r));
    j["rays"] = std::move(rays);
    j["cells"] = fan.complex.cells;
    return j;
}

inline GeometricFan geometric_fan_from_json(const Json& j) {
    GeometricFan fan;
    if (!j.is_object() || !j.contains("rays") || !j.contains("cells"))
        throw std::invalid_argument("geometric fan: expected object with rays and cells");
    for (const auto& r : j.at("rays")) fan.rays.push_back(vec3_from_json(r));
    fan.complex.ray_count = static_cast<int>(fan.rays.size());
    fan.complex.cells = j.at("cells").get<std::vector<std::vector<int>>>();
    return fan;
}

inline Json census_entry_to_json(const CensusEntry& entry) {
    Json j;
    j["profile"] = profile_to_json(entry.profile);
    Json classes = Json::array();
    for (const auto& item : entry.items) {
        Json c;
        c["code"] = item.code;
        c["cells"] = item.complex.cells;
        c["jammed"] = item.jammed;
        if (!item.jammed) c["rejection"] = item.rejection;
        classes.push_back(std::move(c));
    }
    j["classes"] = std::move(classes);
    j["jammed_count"] = entry.jammed_count;
    return j;
}

inline Json census_to_json(const std::vector<CensusEntry>& entries) {
    Json j = Json::array();
    for (const auto& e : entries) j.push_back(census_entry_to_json(e));
    return j;
}

inline Json equation_system_to_json(const EquationSystem& sys) {
    Json j;
    j["cell_count"] = sys.cell_count;
    Json quads = Json::array();
    for (const auto& q : sys.quads) quads.push_back(Json::array({q.idx[0], q.idx[1], q.idx[2], q.idx[3]}));
    j["equations"] = std::move(quads);
    return j;
}

inline Json point_config_to_json(const PointConfig& cfg) {
    Json pts = Json::array();
    for (const auto& p : cfg.x) pts.push_back(vec3_to_json(p));
    return pts;
}

inline Json duality_report_to_json(const DualityReport& rep) {
    Json j;
    j["ok"] = rep.ok;
    Json mapping = Json::array();
    for (const auto& [cone, face] : rep.mapping) mapping.push_back(Json::array({cone, face}));
    j["mapping"] = std::move(mapping);
    j["violations"] = rep.violations;
    return j;
}

inline Json elimination_witness_to_json(const EliminationWitness& w) {
    Json j;
    j["shift"] = vec3_to_json(w.shift);
    j["edge"] = Json::array({vec3_to_json(w.edge[0]), vec3_to_json(w.edge[1])});
    j["midpoint"] = vec3_to_json(w.midpoint);
    j["s"] = vec3_to_json(w.s);
    return j;
}

inline Json index_verdict_to_json(const IndexVerdict& v) {
    Json j;
    j["type"] = v.type_tag;
    j["bound"] = format_rat(v.bound);
    j["needs_elimination"] = v.needs_elimination;
    Json elims = Json::array();
    for (const auto& w : v.eliminations) elims.push_back(elimination_witness_to_json(w));
    j["eliminations"] = std::move(elims);
    j["index"] = v.index;
    j["verdict"] = v.needs_elimination ? "index 1 after elimination" : "index 1";
    return j;
}

// Survey JSON carries no runtimes: byte-identical output across runs is part
// of the contract, so wall-clock data stays in the human-readable table.
inline Json survey_entry_to_json(const SurveyEntry& e) {
    Json j;
    j["name"] = e.name;
    j["gram"] = mat3_to_json(e.gram);
    j["ok"] = e.ok;
    if (!e.error.empty()) {
        j["error"] = e.error;
        return j;
    }
    j["relevant_vectors"] = e.relevant_count;
    Json cells = Json::array();
    for (size_t i = 0; i < e.cells.size(); ++i) {
        const auto& cc = e.cells[i];
        Json c;
        c["center"] = vec3_to_json(cc.cell.center);
        Json pts = Json::array();
        for (const auto& p : cc.cell.points) pts.push_back(vec3_to_json(p));
        c["points"] = std::move(pts);
        c["type"] = cc.type_tag;
        c["volume"] = format_rat(e.volumes[i]);
        c["duality_ok"] = cc.duality_ok;
        c["lattice_ok"] = cc.lattice_ok;
        cells.push_back(std::move(c));
    }
    j["cells"] = std::move(cells);
    Json counts = Json::object();
    for (const auto& [tag, n] : e.type_counts) counts[tag] = n;
    j["type_counts"] = std::move(counts);
    j["jammed"] = e.jammed_ok;
    j["midpoints_interior"] = e.midpoint_ok;
    j["partition"] = e.partition_ok;
    return j;
}

inline Json survey_report_to_json(const SurveyReport& rep) {
    Json j = Json::array();
    for (const auto& e : rep.entries) j.push_back(survey_entry_to_json(e));
    return j;
}

// Survey input: either a bare 3x3 matrix or [{"name":..., "gram":[[..]]}].
inline std::vector<std::pair<std::string, Mat3>> grams_from_json(const Json& j) {
    std::vector<std::pair<std::string, Mat3>> out;
    if (!j.is_array() || j.empty()) throw std::invalid_argument("grams: expected a nonempty array");
    if (j[0].is_array()) {
        out.emplace_back("gram", mat3_from_json(j));
        return out;
    }
    for (const auto& entry : j) {
        if (!entry.is_object() || !entry.contains("name") || !entry.contains("gram"))
            throw std::invalid_argument("grams: entries need name and gram");
        out.emplace_back(entry.at("name").get<std::string>(), mat3_from_json(entry.at("gram")));
    }
    return out;
}

inline Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    Json j;
    try {
        in >> j;
    } catch (const Json::parse_error& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
    return j;
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

inline std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace jammedfan
