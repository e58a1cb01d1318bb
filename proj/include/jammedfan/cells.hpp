// From a jammed complex to its cell: the midpoint equations carried by
// valence-4 rays and antipodal cone pairs, their exact solution space, and
// the duality check between the fan's cone poset and the face lattice of the
// convex hull of the solution points.
#pragma once

#include "fan_complex.hpp"
#include "hull.hpp"
#include "linalg.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace jammedfan {

// x[idx[0]] + x[idx[1]] == x[idx[2]] + x[idx[3]] for one point per cell.
struct EquationQuad {
    std::array<int, 4> idx;
};

struct EquationSystem {
    int cell_count = 0;
    std::vector<EquationQuad> quads;
};

// The equations forced on one point per cone of a jammed complex: around a
// valence-4 ray the two opposite cell pairs share their midpoint, and with
// an antipodal involution all antipodal pair sums agree.
inline EquationSystem derive_equations(const FanComplex& fc) {
    const auto chk = is_jammed(fc);
    if (!chk.jammed)
        throw std::invalid_argument("derive_equations: complex is not jammed: " + chk.reason);

    EquationSystem sys;
    sys.cell_count = static_cast<int>(fc.cells.size());
    const auto val = detail::valences(fc);
    for (int r = 0; r < fc.ray_count; ++r) {
        if (val[static_cast<size_t>(r)] != 4) continue;
        const auto l = link(fc, r);
        sys.quads.push_back({{l.cells[0], l.cells[2], l.cells[1], l.cells[3]}});
    }
    if (chk.involution) {
        std::vector<std::array<int, 2>> pairs;
        for (int ci = 0; ci < sys.cell_count; ++ci) {
            const int cj = chk.involution->cell_map[static_cast<size_t>(ci)];
            if (ci < cj) pairs.push_back({ci, cj});
        }
        std::sort(pairs.begin(), pairs.end());
        for (size_t t = 1; t < pairs.size(); ++t)
            sys.quads.push_back({{pairs[0][0], pairs[0][1], pairs[t][0], pairs[t][1]}});
    }
    return sys;
}

struct PointConfig {
    std::vector<Vec3> x;  // one point per cell, x[0] fixed at the origin
};

inline bool satisfies(const EquationSystem& sys, const PointConfig& cfg) {
    for (const auto& q : sys.quads) {
        const auto& x = cfg.x;
        if (x[static_cast<size_t>(q.idx[0])] + x[static_cast<size_t>(q.idx[1])] !=
            x[static_cast<size_t>(q.idx[2])] + x[static_cast<size_t>(q.idx[3])])
            return false;
    }
    return true;
}

namespace detail {

// Reduced row echelon form of the quad system over unknowns x_1..x_{n-1};
// returns pivot columns.  Each matrix row is the full reduced row.
inline std::vector<int> rref(std::vector<std::vector<Rat>>& mat, int cols) {
    std::vector<int> pivots;
    size_t prow = 0;
    for (int col = 0; col < cols && prow < mat.size(); ++col) {
        size_t sel = prow;
        while (sel < mat.size() && mat[sel][static_cast<size_t>(col)] == 0) ++sel;
        if (sel == mat.size()) continue;
        std::swap(mat[prow], mat[sel]);
        const Rat inv = Rat(1) / mat[prow][static_cast<size_t>(col)];
        for (auto& e : mat[prow]) e *= inv;
        for (size_t r = 0; r < mat.size(); ++r) {
            if (r == prow) continue;
            const Rat f = mat[r][static_cast<size_t>(col)];
            if (f == 0) continue;
            for (int c2 = 0; c2 < cols; ++c2)
                mat[r][static_cast<size_t>(c2)] -= f * mat[prow][static_cast<size_t>(c2)];
        }
        pivots.push_back(col);
        ++prow;
    }
    return pivots;
}

inline PointConfig solve_cell_impl(const EquationSystem& sys, const std::array<Vec3, 3>& free_images) {
    const int n = sys.cell_count;
    if (n < 1) throw std::invalid_argument("solve_cell: empty system");
    const int cols = n - 1;  // unknown x_m lives in column m-1
    std::vector<std::vector<Rat>> mat;
    for (const auto& q : sys.quads) {
        std::vector<Rat> row(static_cast<size_t>(cols), Rat(0));
        const Rat coef[4] = {1, 1, -1, -1};
        for (int t = 0; t < 4; ++t) {
            const int m = q.idx[static_cast<size_t>(t)];
            if (m < 0 || m >= n) throw std::invalid_argument("solve_cell: quad index out of range");
            if (m > 0) row[static_cast<size_t>(m - 1)] += coef[t];
        }
        mat.push_back(std::move(row));
    }
    const auto pivots = rref(mat, cols);
    const int free_count = cols - static_cast<int>(pivots.size());
    if (free_count != 3)
        throw std::logic_error("solve_cell: solution space has dimension " + std::to_string(free_count) +
                               ", expected 3");
    std::vector<int> free_cols;
    {
        std::vector<char> is_pivot(static_cast<size_t>(cols), 0);
        for (int p : pivots) is_pivot[static_cast<size_t>(p)] = 1;
        for (int c = 0; c < cols; ++c)
            if (!is_pivot[static_cast<size_t>(c)]) free_cols.push_back(c);
    }

    PointConfig cfg;
    cfg.x.assign(static_cast<size_t>(n), Vec3());
    for (int t = 0; t < 3; ++t) cfg.x[static_cast<size_t>(free_cols[static_cast<size_t>(t)] + 1)] = free_images[static_cast<size_t>(t)];
    for (size_t r = 0; r < pivots.size(); ++r) {
        Vec3 v;
        for (int t = 0; t < 3; ++t) {
            const Rat coef = mat[r][static_cast<size_t>(free_cols[static_cast<size_t>(t)])];
            v = v - coef * free_images[static_cast<size_t>(t)];
        }
        cfg.x[static_cast<size_t>(pivots[r] + 1)] = v;
    }
    return cfg;
}

}  // namespace detail

// Solution with the free unknowns sent to caller-chosen vectors.  The
// solution space is three-dimensional for every jammed complex, so any
// choice of three images determines the configuration.
inline PointConfig solve_cell(const EquationSystem& sys, const std::array<Vec3, 3>& free_images) {
    return detail::solve_cell_impl(sys, free_images);
}

// Canonical solution: free unknowns sent to the unit vectors, then the whole
// configuration renormalized by a lattice basis so the points generate
// exactly the integer lattice.
inline PointConfig solve_cell(const EquationSystem& sys) {
    PointConfig cfg = detail::solve_cell_impl(sys, {Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(0, 0, 1)});
    Int denom = 1;
    for (const Vec3& p : cfg.x)
        for (int i = 0; i < 3; ++i) denom = lcm(denom, denominator(p[i]));
    std::vector<Vec3> scaled;
    for (size_t m = 1; m < cfg.x.size(); ++m) scaled.push_back(Rat(denom) * cfg.x[m]);
    const Mat3 basis = lattice_basis(scaled);  // rows span denom * (point lattice)
    Mat3 bt = transpose(basis);
    for (auto& p : cfg.x) {
        p = solve3(bt, Rat(denom) * p);
        if (!is_integral(p)) throw std::logic_error("solve_cell: renormalization left non-integer points");
    }
    return cfg;
}

// The subcell of each cone: the set of maximal cones containing it.
struct SubcellEntry {
    int dim = 0;                     // 1 = ray, 2 = edge, 3 = maximal cone
    std::vector<int> cone;           // ray labels (empty for a maximal cone)
    int cell = -1;                   // set for dim 3
    std::vector<int> incident_cells;
};

inline std::vector<SubcellEntry> subcells(const FanComplex& fc) {
    std::vector<SubcellEntry> out;
    for (int r = 0; r < fc.ray_count; ++r) {
        SubcellEntry e;
        e.dim = 1;
        e.cone = {r};
        for (size_t ci = 0; ci < fc.cells.size(); ++ci)
            if (std::find(fc.cells[ci].begin(), fc.cells[ci].end(), r) != fc.cells[ci].end())
                e.incident_cells.push_back(static_cast<int>(ci));
        out.push_back(std::move(e));
    }
    for (const auto& [edge, cs] : detail::edge_cells(fc)) {
        SubcellEntry e;
        e.dim = 2;
        e.cone = {edge.first, edge.second};
        e.incident_cells = cs;
        std::sort(e.incident_cells.begin(), e.incident_cells.end());
        out.push_back(std::move(e));
    }
    for (size_t ci = 0; ci < fc.cells.size(); ++ci) {
        SubcellEntry e;
        e.dim = 3;
        e.cell = static_cast<int>(ci);
        e.incident_cells = {static_cast<int>(ci)};
        out.push_back(std::move(e));
    }
    return out;
}

// Anti-isomorphism between the cone poset of the fan and the face lattice of
// the cell: each subcell set must be the vertex set of a face of the right
// dimension, and every face must arise this way.
struct DualityReport {
    bool ok = false;
    std::vector<std::string> violations;
    std::vector<std::pair<std::string, std::string>> mapping;  // cone -> face
};

inline DualityReport check_duality(const FanComplex& fc, const PointConfig& cfg) {
    DualityReport rep;
    auto fail = [&rep](std::string m) { rep.violations.push_back(std::move(m)); };
    const size_t n = fc.cells.size();
    if (cfg.x.size() != n) {
        fail("configuration has " + std::to_string(cfg.x.size()) + " points for " + std::to_string(n) + " cones");
        return rep;
    }
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            if (cfg.x[i] == cfg.x[j])
                fail("cones " + std::to_string(i) + " and " + std::to_string(j) + " share a point");
    if (!rep.violations.empty()) return rep;

    Polytope3 hull;
    try {
        hull = hull3(cfg.x);
    } catch (const DegenerateConfig& e) {
        fail(std::string("cell is degenerate: ") + e.what());
        return rep;
    }
    if (hull.vertices.size() != n) {
        for (size_t i = 0; i < n; ++i)
            if (std::find(hull.vertices.begin(), hull.vertices.end(), cfg.x[i]) == hull.vertices.end())
                fail("point of cone " + std::to_string(i) + " is not a vertex of the cell");
        return rep;
    }
    // Hull vertex -> cone label.
    std::vector<int> label(n);
    for (size_t vi = 0; vi < n; ++vi) {
        const auto it = std::find(cfg.x.begin(), cfg.x.end(), hull.vertices[vi]);
        label[vi] = static_cast<int>(it - cfg.x.begin());
    }

    auto labeled = [&label](const std::vector<int>& vs) {
        std::vector<int> out;
        for (int v : vs) out.push_back(label[static_cast<size_t>(v)]);
        std::sort(out.begin(), out.end());
        return out;
    };
    std::vector<std::vector<int>> facet_sets;
    for (const auto& f : hull.facets) facet_sets.push_back(labeled(f.vertices));
    std::vector<std::vector<int>> edge_sets;
    for (const auto& e : hull.edges) edge_sets.push_back(labeled({e[0], e[1]}));

    auto set_string = [](const std::vector<int>& s) {
        std::string out = "{";
        for (size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
        return out + "}";
    };

    std::vector<char> facet_hit(facet_sets.size(), 0), edge_hit(edge_sets.size(), 0);
    for (const auto& sc : subcells(fc)) {
        if (sc.dim == 3) {
            rep.mapping.emplace_back("cone " + std::to_string(sc.cell),
                                     "vertex " + set_string(sc.incident_cells));
            continue;
        }
        const auto& want = sc.incident_cells;
        const auto& pool = sc.dim == 1 ? facet_sets : edge_sets;
        auto& hit = sc.dim == 1 ? facet_hit : edge_hit;
        const auto it = std::find(pool.begin(), pool.end(), want);
        const std::string cone_desc =
            (sc.dim == 1 ? "ray " + std::to_string(sc.cone[0])
                         : "edge {" + std::to_string(sc.cone[0]) + "," + std::to_string(sc.cone[1]) + "}");
        if (it == pool.end()) {
            fail(cone_desc + " has subcell " + set_string(want) + " which is not a face of the cell");
            continue;
        }
        hit[static_cast<size_t>(it - pool.begin())] = 1;
        rep.mapping.emplace_back(cone_desc,
                                 (sc.dim == 1 ? "facet " : "edge ") + set_string(want));
    }
    for (size_t i = 0; i < facet_sets.size(); ++i)
        if (!facet_hit[i]) fail("cell facet " + set_string(facet_sets[i]) + " corresponds to no ray");
    for (size_t i = 0; i < edge_sets.size(); ++i)
        if (!edge_hit[i]) fail("cell edge " + set_string(edge_sets[i]) + " corresponds to no fan edge");

    rep.ok = rep.violations.empty();
    if (!rep.ok) rep.mapping.clear();
    return rep;
}

}  // namespace jammedfan
