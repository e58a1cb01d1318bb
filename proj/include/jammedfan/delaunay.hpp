#pragma once

// Voronoi/Delaunay harness for rank-3 lattices given by an exact Gram matrix.
// Everything runs in lattice coordinates (points are integer vectors, the
// form supplies the metric), so no irrational lattice ever needs floating
// point.  Each Voronoi-cell vertex yields a Delaunay cell; the fan of tangent
// cones at the vertex is reconstructed and classified against the five
// combinatorial types, and the duality, lattice-index, jammedness, and
// midpoint-interiority statements are checked on the real tiling.

#include <chrono>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <jammedfan/cells.hpp>
#include <jammedfan/geometry.hpp>
#include <jammedfan/lattice.hpp>

namespace jammedfan {

struct GramMatrix {
    Mat3 g;

    GramMatrix() = default;
    explicit GramMatrix(const Mat3& m) : g(m) {
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j)
                if (g[i][j] != g[j][i]) throw std::invalid_argument("GramMatrix: not symmetric");
        const Rat m1 = g[0][0];
        const Rat m2 = g[0][0] * g[1][1] - g[0][1] * g[1][0];
        if (!(m1 > 0) || !(m2 > 0) || !(det(g) > 0))
            throw std::invalid_argument("GramMatrix: not positive definite");
    }

    Rat form(const Vec3& u, const Vec3& v) const { return dot(u, mul(g, v)); }
    Rat norm(const Vec3& u) const { return form(u, u); }
};

struct DelaunayCell {
    Vec3 center;              // Voronoi-cell vertex, coordinates reduced to [0,1)
    std::vector<Vec3> points; // all lattice points at minimal form-distance, sorted
};

struct ClassifiedCell {
    DelaunayCell cell;
    std::string type_tag;
    bool duality_ok = false;
    bool lattice_ok = false;  // integer span of point differences is all of Z^3
};

namespace detail {

// Integer box radius covering {x : Q(x) <= bound}: coordinate i of the
// ellipsoid is extremal at x_i^2 = bound * (G^-1)_ii.
inline std::array<Int, 3> box_radius(const GramMatrix& gram, const Rat& bound) {
    const Mat3 inv = inverse(gram.g);
    std::array<Int, 3> r;
    for (int i = 0; i < 3; ++i) {
        const Rat v = bound * inv[i][i];
        r[static_cast<size_t>(i)] = v < 0 ? Int(0) : floor_sqrt(rat_floor(v)) + 1;
    }
    return r;
}

inline std::map<std::string, std::string> type_by_code() {
    std::map<std::string, std::string> m;
    for (const char* tag : witness_tags()) m[canonical_code(witness(tag).complex)] = tag;
    return m;
}

inline const std::map<std::string, std::array<size_t, 3>>& face_vector_by_type() {
    static const std::map<std::string, std::array<size_t, 3>> fv = {
        {"tetrahedron", {4, 6, 4}},
        {"quadrangular-pyramid", {5, 8, 5}},
        {"triangular-prism", {6, 9, 5}},
        {"octahedron", {6, 12, 8}},
        {"parallelepiped", {8, 12, 6}},
    };
    return fv;
}

}  // namespace detail

// v is a Voronoi-relevant vector iff +-v are the unique minima of the form on
// the coset v + 2Z^3.  One coset per nonzero class mod 2, so at most 14.
inline std::vector<Vec3> relevant_vectors(const GramMatrix& gram) {
    std::vector<Vec3> out;
    for (int mask = 1; mask < 8; ++mask) {
        const Vec3 eps(mask & 1, (mask >> 1) & 1, (mask >> 2) & 1);
        const Rat start = gram.norm(eps);
        const auto r = detail::box_radius(gram, start);
        Rat best = start;
        std::vector<Vec3> argmin;
        for (Int x0 = -r[0]; x0 <= r[0]; ++x0)
            for (Int x1 = -r[1]; x1 <= r[1]; ++x1)
                for (Int x2 = -r[2]; x2 <= r[2]; ++x2) {
                    if ((x0 - numerator(eps[0])) % 2 != 0 || (x1 - numerator(eps[1])) % 2 != 0 ||
                        (x2 - numerator(eps[2])) % 2 != 0)
                        continue;
                    const Vec3 x{Rat(x0), Rat(x1), Rat(x2)};
                    const Rat q = gram.norm(x);
                    if (q < best) {
                        best = q;
                        argmin.clear();
                    }
                    if (q == best) argmin.push_back(x);
                }
        if (argmin.size() == 2) {
            out.push_back(argmin[0]);
            out.push_back(argmin[1]);
        }
    }
    std::sort(out.begin(), out.end());
    if (out.size() > 14) throw std::logic_error("relevant_vectors: more than 14 relevant vectors");
    return out;
}

// Vertices of the Voronoi cell of the origin, one DelaunayCell per class
// modulo lattice translation.  Deterministic: classes sorted by reduced
// center, then point list.
inline std::vector<DelaunayCell> voronoi_vertices(const GramMatrix& gram) {
    const auto rel = relevant_vectors(gram);
    const size_t n = rel.size();

    // Vertices: triples of bisector planes form(v, y) = norm(v)/2.
    std::set<Vec3> vertices;
    for (size_t a = 0; a < n; ++a)
        for (size_t b = a + 1; b < n; ++b)
            for (size_t c = b + 1; c < n; ++c) {
                Mat3 m;
                m[0] = mul(gram.g, rel[a]);
                m[1] = mul(gram.g, rel[b]);
                m[2] = mul(gram.g, rel[c]);
                if (det(m) == 0) continue;
                const Vec3 rhs(Rat(1, 2) * gram.norm(rel[a]), Rat(1, 2) * gram.norm(rel[b]),
                               Rat(1, 2) * gram.norm(rel[c]));
                const Vec3 y = solve3(m, rhs);
                bool feasible = true;
                for (const auto& v : rel)
                    if (gram.form(v, y) > Rat(1, 2) * gram.norm(v)) {
                        feasible = false;
                        break;
                    }
                if (feasible) vertices.insert(y);
            }
    if (vertices.empty()) throw std::logic_error("voronoi_vertices: no vertices found");

    std::map<std::pair<Vec3, std::vector<Vec3>>, int> class_hits;
    for (const auto& y : vertices) {
        // All lattice points as close to y as the origin is.
        const Rat q0 = gram.norm(y);
        const auto r = detail::box_radius(gram, q0);
        std::vector<Vec3> pts;
        for (Int x0 = rat_floor(y[0]) - r[0]; x0 <= rat_floor(y[0]) + r[0] + 1; ++x0)
            for (Int x1 = rat_floor(y[1]) - r[1]; x1 <= rat_floor(y[1]) + r[1] + 1; ++x1)
                for (Int x2 = rat_floor(y[2]) - r[2]; x2 <= rat_floor(y[2]) + r[2] + 1; ++x2) {
                    const Vec3 p{Rat(x0), Rat(x1), Rat(x2)};
                    const Rat q = gram.norm(p - y);
                    if (q < q0)
                        throw std::logic_error("voronoi_vertices: lattice point closer than the origin");
                    if (q == q0) pts.push_back(p);
                }
        if (pts.size() < 4) throw std::logic_error("voronoi_vertices: vertex with fewer than 4 nearest points");
        std::vector<Vec3> diffs;
        for (size_t i = 1; i < pts.size(); ++i) diffs.push_back(pts[i] - pts[0]);
        if (rank(diffs) != 3)
            throw std::logic_error("voronoi_vertices: nearest points not of affine dimension 3");

        // Reduce modulo the lattice.
        const Vec3 shift(Rat(rat_floor(y[0])), Rat(rat_floor(y[1])), Rat(rat_floor(y[2])));
        Vec3 center = y - shift;
        std::vector<Vec3> moved;
        for (const auto& p : pts) moved.push_back(p - shift);
        std::sort(moved.begin(), moved.end());
        ++class_hits[{center, moved}];
    }

    std::vector<DelaunayCell> out;
    for (const auto& [key, hits] : class_hits) {
        // Every class appears once per point: vertex y of the cell of p
        // reappears as y - p on the cell of the origin.
        if (static_cast<size_t>(hits) != key.second.size())
            throw std::logic_error("voronoi_vertices: class representative count mismatch");
        DelaunayCell cell;
        cell.center = key.first;
        cell.points = key.second;
        out.push_back(std::move(cell));
    }
    return out;
}

// Fan of tangent cones at the vertex: the cone of directions keeping p
// nearest is the normal cone of conv{G q : q in points} at G p, so the whole
// fan is the normal fan of that polytope.  Cell i of the result corresponds
// to points_in_cell_order[i] = G^-1 (hull vertex i).
struct VertexFan {
    GeometricFan fan;
    std::vector<Vec3> points_in_cell_order;
};

inline VertexFan vertex_fan(const DelaunayCell& cell, const GramMatrix& gram) {
    std::vector<Vec3> image;
    for (const auto& p : cell.points) image.push_back(mul(gram.g, p));
    const auto hull = hull3(image);
    if (hull.vertices.size() != cell.points.size())
        throw std::logic_error("vertex_fan: equidistant points are not all extreme");
    VertexFan vf;
    vf.fan = normal_fan(hull);
    const Mat3 inv = inverse(gram.g);
    for (const auto& v : hull.vertices) vf.points_in_cell_order.push_back(mul(inv, v));
    return vf;
}

inline ClassifiedCell classify_cell(const DelaunayCell& cell, const GramMatrix& gram) {
    ClassifiedCell out;
    out.cell = cell;

    const auto vf = vertex_fan(cell, gram);
    static const std::map<std::string, std::string> codes = detail::type_by_code();
    const auto it = codes.find(canonical_code(vf.fan.complex));
    if (it == codes.end())
        throw std::runtime_error("classify_cell: vertex fan matches none of the five types");
    out.type_tag = it->second;

    // Face vector of the cell itself must agree with the matched type.
    const auto hull = hull3(cell.points);
    const auto& fv = detail::face_vector_by_type().at(out.type_tag);
    if (hull.vertices.size() != fv[0] || hull.edges.size() != fv[1] || hull.facets.size() != fv[2])
        throw std::runtime_error("classify_cell: face vector disagrees with type " + out.type_tag);

    PointConfig cfg;
    for (const auto& p : vf.points_in_cell_order) cfg.x.push_back(p - vf.points_in_cell_order[0]);
    out.duality_ok = check_duality(vf.fan.complex, cfg).ok;

    const auto lam = span_lattice(cfg);
    out.lattice_ok = lam.covolume == 1 && lam.basis == Mat3::identity();
    return out;
}

// Jammedness of the tiling at every vertex class (the geometric statement;
// the combinatorial half is re-derived inside the check).
inline bool verify_vertex_fans_jammed(const GramMatrix& gram) {
    for (const auto& cell : voronoi_vertices(gram))
        if (!is_jammed_geometric(vertex_fan(cell, gram).fan).jammed) return false;
    return true;
}

// For every tetrahedral cell D with vertex x and every center c in D, each
// edge midpoint of (-D) + x + c lies strictly inside the Voronoi cell of c.
// This is the interiority premise the half-lattice elimination rests on.
inline bool verify_midpoint_interior(const GramMatrix& gram) {
    const auto rel = relevant_vectors(gram);
    for (const auto& cell : voronoi_vertices(gram)) {
        if (cell.points.size() != 4) continue;
        for (const auto& c : cell.points)
            for (size_t i = 0; i < 4; ++i)
                for (size_t j = i + 1; j < 4; ++j) {
                    const Vec3 m = cell.center + c - Rat(1, 2) * (cell.points[i] + cell.points[j]);
                    const Vec3 d = m - c;
                    for (const auto& v : rel)
                        if (!(gram.norm(d) < gram.norm(d - v))) return false;
                }
    }
    return true;
}

struct SurveyEntry {
    std::string name;
    Mat3 gram;
    bool ok = false;
    std::string error;
    std::vector<ClassifiedCell> cells;
    std::vector<Rat> volumes;          // per cell class, lattice coordinates
    std::map<std::string, int> type_counts;
    int relevant_count = 0;
    bool jammed_ok = false;
    bool midpoint_ok = false;
    bool partition_ok = false;
    double runtime_ms = 0.0;
};

struct SurveyReport {
    std::vector<SurveyEntry> entries;
};

inline SurveyEntry survey_one(const std::string& name, const Mat3& gram_rows) {
    SurveyEntry e;
    e.name = name;
    e.gram = gram_rows;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        const GramMatrix gram(gram_rows);
        e.relevant_count = static_cast<int>(relevant_vectors(gram).size());
        Rat total = 0;
        for (const auto& cell : voronoi_vertices(gram)) {
            auto cc = classify_cell(cell, gram);
            const Rat vol = volume(hull3(cell.points));
            total += vol;
            ++e.type_counts[cc.type_tag];
            e.volumes.push_back(vol);
            e.cells.push_back(std::move(cc));
        }
        // One cell of each class per fundamental domain, and the covolume in
        // lattice coordinates is 1: the classes partition space exactly.
        e.partition_ok = total == 1;
        e.jammed_ok = verify_vertex_fans_jammed(gram);
        e.midpoint_ok = verify_midpoint_interior(gram);
        bool checks = e.partition_ok && e.jammed_ok && e.midpoint_ok;
        for (const auto& c : e.cells) checks = checks && c.duality_ok && c.lattice_ok;
        e.ok = checks;
    } catch (const std::exception& ex) {
        e.ok = false;
        e.error = ex.what();
    }
    const auto t1 = std::chrono::steady_clock::now();
    e.runtime_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    return e;
}

inline SurveyReport survey(const std::vector<std::pair<std::string, Mat3>>& grams,
                           unsigned threads = 0) {
    SurveyReport rep;
    rep.entries.resize(grams.size());
    if (threads == 0) threads = std::thread::hardware_concurrency();
    if (threads == 0) threads = 1;
    threads = std::min<unsigned>(threads, static_cast<unsigned>(grams.size() ? grams.size() : 1));
    if (threads <= 1) {
        for (size_t i = 0; i < grams.size(); ++i)
            rep.entries[i] = survey_one(grams[i].first, grams[i].second);
        return rep;
    }
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back([&rep, &grams, t, threads]() {
            for (size_t i = t; i < grams.size(); i += threads)
                rep.entries[i] = survey_one(grams[i].first, grams[i].second);
        });
    for (auto& th : pool) th.join();
    return rep;
}

}  // namespace jammedfan
