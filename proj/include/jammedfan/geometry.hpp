// Geometric realizations of fan complexes: concrete rational ray vectors
// together with the combinatorial structure.  Provides the exact
// completeness verifier (does the stored data describe a complete polyhedral
// fan?), the geometric jammedness test, normal fans of polytopes, and the
// five witness fans.
#pragma once

#include "fan_complex.hpp"
#include "hull.hpp"
#include "linalg.hpp"

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace jammedfan {

struct GeometricFan {
    std::vector<Vec3> rays;
    FanComplex complex;
};

struct CompletenessReport {
    bool complete = false;
    std::vector<std::string> diagnostics;
};

namespace detail {

// Projection to the quotient plane R^3 / span(v): two independent linear
// functionals vanishing on v, chosen from v's first nonzero coordinate.
struct QuotientProj {
    int k;
    Vec3 v;
    std::array<Rat, 2> operator()(const Vec3& x) const {
        const int i = k == 0 ? 1 : 0;
        const int j = k == 2 ? 1 : 2;
        return {v[k] * x[i] - v[i] * x[k], v[k] * x[j] - v[j] * x[k]};
    }
};

inline QuotientProj quotient_proj(const Vec3& v) {
    int k = 0;
    while (v[k] == 0) ++k;
    return {k, v};
}

inline Rat cross2(const std::array<Rat, 2>& a, const std::array<Rat, 2>& b) {
    return a[0] * b[1] - a[1] * b[0];
}

}  // namespace detail

// Verifies that the rays and cells describe a complete fan: the complex is a
// valid sphere decomposition, every cell is a pointed cone with its walk in
// strictly convex position, the two cells at each edge lie strictly on
// opposite sides of its plane, and the cells around each ray wind around it
// exactly once.  Together these make the induced map to the sphere a degree
// one covering, so the cones tile R^3.
inline CompletenessReport verify_complete(const GeometricFan& fan) {
    CompletenessReport rep;
    auto fail = [&rep](std::string msg) { rep.diagnostics.push_back(std::move(msg)); };

    const auto v = validate(fan.complex);
    if (!v.ok) {
        rep.diagnostics = v.violations;
        return rep;
    }
    if (static_cast<int>(fan.rays.size()) != fan.complex.ray_count) {
        fail("ray vector count does not match the complex");
        return rep;
    }
    for (size_t r = 0; r < fan.rays.size(); ++r) {
        if (fan.rays[r].is_zero()) {
            fail("ray " + std::to_string(r) + " is the zero vector");
            return rep;
        }
    }
    {
        std::map<Vec3, int> dirs;
        for (size_t r = 0; r < fan.rays.size(); ++r) {
            const auto [it, fresh] = dirs.emplace(primitive_ray(fan.rays[r]), static_cast<int>(r));
            if (!fresh)
                fail("rays " + std::to_string(it->second) + " and " + std::to_string(r) +
                     " point in the same direction");
        }
        if (!rep.diagnostics.empty()) return rep;
    }

    const auto ray = [&fan](int r) -> const Vec3& { return fan.rays[static_cast<size_t>(r)]; };

    // Each cell: every wall plane through consecutive rays has all other
    // rays of the cell strictly on one common side.
    for (size_t ci = 0; ci < fan.complex.cells.size(); ++ci) {
        const auto& w = fan.complex.cells[ci];
        const size_t L = w.size();
        int cell_side = 0;
        bool cell_ok = true;
        for (size_t t = 0; t < L && cell_ok; ++t) {
            const Vec3 nrm = cross(ray(w[t]), ray(w[(t + 1) % L]));
            for (size_t s = 0; s < L; ++s) {
                if (s == t || s == (t + 1) % L) continue;
                const int sgn = sign(dot(nrm, ray(w[s])));
                if (sgn == 0 || (cell_side != 0 && sgn != cell_side)) {
                    fail("cell " + std::to_string(ci) + " is not a pointed cone with a strictly convex walk");
                    cell_ok = false;
                    break;
                }
                cell_side = sgn;
            }
        }
    }
    if (!rep.diagnostics.empty()) return rep;

    // Each edge: the two incident cells lie strictly on opposite sides.
    for (const auto& [e, cs] : detail::edge_cells(fan.complex)) {
        const Vec3 nrm = cross(ray(e.first), ray(e.second));
        int side[2] = {0, 0};
        bool edge_ok = true;
        for (int which = 0; which < 2 && edge_ok; ++which) {
            for (int r : fan.complex.cells[static_cast<size_t>(cs[static_cast<size_t>(which)])]) {
                if (r == e.first || r == e.second) continue;
                const int sgn = sign(dot(nrm, ray(r)));
                if (sgn == 0 || (side[which] != 0 && sgn != side[which])) {
                    edge_ok = false;
                    break;
                }
                side[which] = sgn;
            }
        }
        if (!edge_ok || side[0] == 0 || side[1] == 0 || side[0] == side[1])
            fail("cells " + std::to_string(cs[0]) + " and " + std::to_string(cs[1]) +
                 " do not lie strictly on opposite sides of edge {" + std::to_string(e.first) + "," +
                 std::to_string(e.second) + "}");
    }
    if (!rep.diagnostics.empty()) return rep;

    // Each ray: the link rays, projected to the quotient plane, turn with a
    // consistent orientation and wind around the origin exactly once.
    for (int r = 0; r < fan.complex.ray_count; ++r) {
        const auto proj = detail::quotient_proj(ray(r));
        const auto l = link(fan.complex, r);
        const size_t k = l.rays.size();
        std::vector<std::array<Rat, 2>> w;
        bool ok = true;
        for (int u : l.rays) {
            auto p = proj(ray(u));
            if (p[0] == 0 && p[1] == 0) {
                fail("edge {" + std::to_string(r) + "," + std::to_string(u) + "} does not span a plane");
                ok = false;
                break;
            }
            w.push_back(std::move(p));
        }
        if (!ok) continue;
        int orient = 0;
        for (size_t t = 0; t < k && ok; ++t) {
            const int sgn = sign(detail::cross2(w[t], w[(t + 1) % k]));
            if (sgn == 0 || (orient != 0 && sgn != orient)) {
                fail("cells around ray " + std::to_string(r) + " do not turn consistently");
                ok = false;
            }
            orient = sgn;
        }
        if (!ok) continue;
        // Winding: crossings of the direction w[0] by the oriented sectors.
        int crossings = 0;
        for (size_t t = 0; t < k; ++t) {
            if (detail::cross2(w[t], w[0]) == 0 && w[t][0] * w[0][0] + w[t][1] * w[0][1] > 0) {
                ++crossings;
                continue;
            }
            const Rat c1 = Rat(orient) * detail::cross2(w[t], w[0]);
            const Rat c2 = Rat(orient) * detail::cross2(w[0], w[(t + 1) % k]);
            if (c1 > 0 && c2 > 0) ++crossings;
        }
        if (crossings != 1)
            fail("cells around ray " + std::to_string(r) + " wind " + std::to_string(crossings) +
                 " times instead of once");
    }

    rep.complete = rep.diagnostics.empty();
    return rep;
}

// Geometric jammedness: completeness, the combinatorial conditions, and the
// geometric content of the two nontrivial cases.  At a valence-4 ray the
// four link directions must form two antipodal pairs (the link is a jammed
// planar fan); with disjoint cone pairs the ray set must be closed under
// negation and negation must realize exactly the disjoint pairing.
struct GeometricJammedReport {
    bool jammed = false;
    std::vector<std::string> diagnostics;
    JammedCheck combinatorial;
    std::vector<int> negation_ray_map;  // filled when disjoint pairs exist
};

inline GeometricJammedReport is_jammed_geometric(const GeometricFan& fan) {
    GeometricJammedReport rep;
    const auto comp = verify_complete(fan);
    if (!comp.complete) {
        rep.diagnostics = comp.diagnostics;
        rep.diagnostics.push_back("fan is not complete");
        return rep;
    }
    rep.combinatorial = is_jammed(fan.complex);
    if (!rep.combinatorial.jammed) {
        rep.diagnostics.push_back(rep.combinatorial.reason);
        return rep;
    }

    const auto ray = [&fan](int r) -> const Vec3& { return fan.rays[static_cast<size_t>(r)]; };
    const auto val = detail::valences(fan.complex);
    for (int r = 0; r < fan.complex.ray_count; ++r) {
        if (val[static_cast<size_t>(r)] != 4) continue;
        const auto proj = detail::quotient_proj(ray(r));
        const auto l = link(fan.complex, r);
        for (int t = 0; t < 2; ++t) {
            const auto a = proj(ray(l.rays[static_cast<size_t>(t)]));
            const auto b = proj(ray(l.rays[static_cast<size_t>(t + 2)]));
            const bool antipodal = detail::cross2(a, b) == 0 && a[0] * b[0] + a[1] * b[1] < 0;
            if (!antipodal)
                rep.diagnostics.push_back("link of valence-4 ray " + std::to_string(r) +
                                          " is not a pair of aligned wall planes");
        }
    }
    if (!rep.diagnostics.empty()) return rep;

    if (rep.combinatorial.pairs_disjoint > 0) {
        std::map<Vec3, int> dirs;
        for (size_t r = 0; r < fan.rays.size(); ++r) dirs[primitive_ray(fan.rays[r])] = static_cast<int>(r);
        std::vector<int> nu(fan.rays.size(), -1);
        for (size_t r = 0; r < fan.rays.size(); ++r) {
            const auto it = dirs.find(primitive_ray(-fan.rays[r]));
            if (it == dirs.end()) {
                rep.diagnostics.push_back("ray set is not closed under negation at ray " + std::to_string(r));
                return rep;
            }
            nu[r] = it->second;
        }
        const auto cmap = detail::induced_cell_map(fan.complex, nu);
        if (cmap.empty()) {
            rep.diagnostics.push_back("negation does not map cones to cones");
            return rep;
        }
        std::vector<int> partner(fan.complex.cells.size(), -1);
        for (const auto& [i, j] : rep.combinatorial.disjoint_pairs) {
            partner[static_cast<size_t>(i)] = j;
            partner[static_cast<size_t>(j)] = i;
        }
        for (size_t ci = 0; ci < cmap.size(); ++ci) {
            if (cmap[ci] != partner[ci]) {
                rep.diagnostics.push_back("negation pairs cone " + std::to_string(ci) + " with " +
                                          std::to_string(cmap[ci]) + ", expected " + std::to_string(partner[ci]));
                return rep;
            }
        }
        rep.negation_ray_map = std::move(nu);
    }

    rep.jammed = rep.diagnostics.empty();
    return rep;
}

// Normal fan of a polytope: one ray per facet (the primitive outer normal),
// one maximal cone per vertex, walked in the cyclic order of the facets
// around that vertex.
inline GeometricFan normal_fan(const Polytope3& poly) {
    GeometricFan fan;
    fan.complex.ray_count = static_cast<int>(poly.facets.size());
    for (const auto& f : poly.facets) fan.rays.push_back(f.normal);

    // Edges of each vertex: the two neighbors in each incident facet walk.
    const int nv = static_cast<int>(poly.vertices.size());
    for (int vi = 0; vi < nv; ++vi) {
        struct Inc {
            int facet, prev, next;
        };
        std::vector<Inc> inc;
        for (size_t fi = 0; fi < poly.facets.size(); ++fi) {
            const auto& vs = poly.facets[fi].vertices;
            const size_t m = vs.size();
            for (size_t p = 0; p < m; ++p)
                if (vs[p] == vi)
                    inc.push_back({static_cast<int>(fi), vs[(p + m - 1) % m], vs[(p + 1) % m]});
        }
        if (inc.size() < 3) throw std::logic_error("normal_fan: vertex with fewer than 3 facets");
        // Walk: cross from a facet to the next one through the shared edge.
        std::map<std::array<int, 2>, std::vector<int>> by_edge;
        for (const auto& in : inc) {
            by_edge[{std::min(vi, in.prev), std::max(vi, in.prev)}].push_back(in.facet);
            by_edge[{std::min(vi, in.next), std::max(vi, in.next)}].push_back(in.facet);
        }
        std::vector<int> walk;
        int cur = inc[0].facet;
        int exit = inc[0].next;
        for (size_t step = 0; step < inc.size(); ++step) {
            walk.push_back(cur);
            const auto& pairf = by_edge.at({std::min(vi, exit), std::max(vi, exit)});
            if (pairf.size() != 2) throw std::logic_error("normal_fan: edge not shared by two facets");
            const int nxt = pairf[0] == cur ? pairf[1] : pairf[0];
            int nxt_exit = -1;
            for (const auto& in : inc)
                if (in.facet == nxt) nxt_exit = in.prev == exit ? in.next : in.prev;
            cur = nxt;
            exit = nxt_exit;
        }
        if (cur != inc[0].facet) throw std::logic_error("normal_fan: facets around a vertex do not close up");
        fan.complex.cells.push_back(std::move(walk));
    }
    return fan;
}

inline const std::array<const char*, 5>& witness_tags() {
    static const std::array<const char*, 5> tags = {
        "tetrahedron", "quadrangular-pyramid", "triangular-prism", "octahedron", "parallelepiped"};
    return tags;
}

// A concrete complete fan of each combinatorial type, as the normal fan of
// the polytope the type is named after.
inline GeometricFan witness(const std::string& type_tag) {
    std::vector<Vec3> pts;
    if (type_tag == "tetrahedron") {
        pts = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    } else if (type_tag == "quadrangular-pyramid") {
        pts = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}, {0, 0, 1}};
    } else if (type_tag == "triangular-prism") {
        pts = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 0, 1}, {0, 1, 1}};
    } else if (type_tag == "octahedron") {
        pts = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
    } else if (type_tag == "parallelepiped") {
        for (int x = 0; x < 2; ++x)
            for (int y = 0; y < 2; ++y)
                for (int z = 0; z < 2; ++z) pts.push_back(Vec3(x, y, z));
    } else {
        throw std::invalid_argument("witness: unknown type tag \"" + type_tag + "\"");
    }
    return normal_fan(hull3(pts));
}

}  // namespace jammedfan
