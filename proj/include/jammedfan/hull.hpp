// Exact convex hulls in R^3 over the rationals.  Input sizes here are tiny
// (cells and difference bodies with at most a few dozen points), so facets
// are found by checking every spanning triple against every point.
#pragma once

#include "linalg.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace jammedfan {

// Raised when a point set does not span R^3 affinely.
struct DegenerateConfig : std::runtime_error {
    int affine_rank;
    explicit DegenerateConfig(int r)
        : std::runtime_error("point set spans an affine subspace of dimension " + std::to_string(r)),
          affine_rank(r) {}
};

struct Facet {
    Vec3 normal;  // primitive, outward: dot(normal, x) <= offset on the hull
    Rat offset;
    std::vector<int> vertices;  // cyclic walk, counterclockwise seen from outside
};

struct Polytope3 {
    std::vector<Vec3> vertices;  // extreme points only
    std::vector<Facet> facets;
    std::vector<std::array<int, 2>> edges;
};

inline Polytope3 hull3(const std::vector<Vec3>& input) {
    std::vector<Vec3> pts;
    for (const Vec3& p : input)
        if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
    const size_t n = pts.size();

    {
        std::vector<Vec3> diffs;
        for (size_t i = 1; i < n; ++i) diffs.push_back(pts[i] - pts[0]);
        const int r = rank(diffs);
        if (n == 0 || r < 3) throw DegenerateConfig(n == 0 ? -1 : r);
    }

    // Supporting planes from spanning triples.
    std::map<std::pair<Vec3, Rat>, std::vector<int>> facet_points;
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i + 1; j < n; ++j) {
            for (size_t k = j + 1; k < n; ++k) {
                Vec3 nrm = cross(pts[j] - pts[i], pts[k] - pts[i]);
                if (nrm.is_zero()) continue;
                Rat off = dot(nrm, pts[i]);
                bool above = false, below = false;
                for (size_t t = 0; t < n && !(above && below); ++t) {
                    const int s = sign(dot(nrm, pts[t]) - off);
                    if (s > 0) above = true;
                    if (s < 0) below = true;
                }
                if (above && below) continue;
                if (above) {
                    nrm = -nrm;
                    off = -off;
                }
                const Vec3 prim = primitive_ray(nrm);
                int c = 0;
                while (prim[c] == 0) ++c;
                const Rat scaled_off = off * prim[c] / nrm[c];
                auto& on_set = facet_points[{prim, scaled_off}];
                if (on_set.empty()) {
                    for (size_t t = 0; t < n; ++t)
                        if (dot(prim, pts[t]) == scaled_off) on_set.push_back(static_cast<int>(t));
                }
            }
        }
    }

    // A point is extreme exactly when its incident facet normals span R^3.
    std::vector<std::vector<Vec3>> normals_at(n);
    for (const auto& [key, on_set] : facet_points)
        for (int t : on_set) normals_at[static_cast<size_t>(t)].push_back(key.first);
    std::vector<int> vertex_index(n, -1);
    Polytope3 poly;
    for (size_t t = 0; t < n; ++t) {
        if (rank(normals_at[t]) == 3) {
            vertex_index[t] = static_cast<int>(poly.vertices.size());
            poly.vertices.push_back(pts[t]);
        }
    }

    for (const auto& [key, on_set] : facet_points) {
        Facet f;
        f.normal = key.first;
        f.offset = key.second;
        std::vector<int> vs;
        for (int t : on_set)
            if (vertex_index[static_cast<size_t>(t)] >= 0) vs.push_back(vertex_index[static_cast<size_t>(t)]);
        if (vs.size() < 3) throw std::logic_error("hull3: facet with fewer than 3 vertices");

        // Cyclic order: exact angular sort around the facet centroid in a
        // projection plane where the normal has a nonzero component.
        int drop = 0;
        while (f.normal[drop] == 0) ++drop;
        const int u = drop == 0 ? 1 : 0;
        const int v = drop == 2 ? 1 : 2;
        Vec3 centroid;
        for (int w : vs) centroid = centroid + poly.vertices[static_cast<size_t>(w)];
        centroid = Rat(1, static_cast<int>(vs.size())) * centroid;
        auto angular = [&](int a, int b) {
            const Vec3& pa = poly.vertices[static_cast<size_t>(a)];
            const Vec3& pb = poly.vertices[static_cast<size_t>(b)];
            const Rat ax = pa[u] - centroid[u], ay = pa[v] - centroid[v];
            const Rat bx = pb[u] - centroid[u], by = pb[v] - centroid[v];
            const int ha = (ay < 0 || (ay == 0 && ax < 0)) ? 1 : 0;
            const int hb = (by < 0 || (by == 0 && bx < 0)) ? 1 : 0;
            if (ha != hb) return ha < hb;
            return ax * by - ay * bx > 0;
        };
        std::sort(vs.begin(), vs.end(), angular);
        // Orient the walk so it runs counterclockwise seen from outside.
        const Vec3& w0 = poly.vertices[static_cast<size_t>(vs[0])];
        const Vec3& w1 = poly.vertices[static_cast<size_t>(vs[1])];
        const Vec3& w2 = poly.vertices[static_cast<size_t>(vs[2])];
        if (dot(cross(w1 - w0, w2 - w0), f.normal) < 0) std::reverse(vs.begin() + 1, vs.end());
        f.vertices = std::move(vs);
        poly.facets.push_back(std::move(f));
    }

    std::map<std::array<int, 2>, int> edge_count;
    for (const auto& f : poly.facets) {
        const size_t m = f.vertices.size();
        for (size_t t = 0; t < m; ++t) {
            const int a = f.vertices[t];
            const int b = f.vertices[(t + 1) % m];
            ++edge_count[{std::min(a, b), std::max(a, b)}];
        }
    }
    for (const auto& [e, cnt] : edge_count) {
        if (cnt != 2) throw std::logic_error("hull3: edge not shared by exactly two facets");
        poly.edges.push_back(e);
    }
    return poly;
}

// Exact volume by coning each facet over the vertex centroid.
inline Rat volume(const Polytope3& poly) {
    Vec3 ref;
    for (const Vec3& p : poly.vertices) ref = ref + p;
    ref = Rat(1, static_cast<int>(poly.vertices.size())) * ref;
    Rat six_vol = 0;
    for (const auto& f : poly.facets) {
        const Vec3& a = poly.vertices[static_cast<size_t>(f.vertices[0])];
        for (size_t t = 1; t + 1 < f.vertices.size(); ++t) {
            const Vec3& b = poly.vertices[static_cast<size_t>(f.vertices[t])];
            const Vec3& c = poly.vertices[static_cast<size_t>(f.vertices[t + 1])];
            Rat d = dot(a - ref, cross(b - ref, c - ref));
            if (d < 0) d = -d;
            six_vol += d;
        }
    }
    return six_vol / 6;
}

// Vertex index sets of all faces, dimension by dimension, for comparing
// combinatorics between polytopes.
struct FaceSets {
    std::vector<std::vector<int>> facets;  // sorted vertex sets
    std::vector<std::array<int, 2>> edges;
    int vertex_count = 0;
};

inline FaceSets face_sets(const Polytope3& poly) {
    FaceSets fs;
    fs.vertex_count = static_cast<int>(poly.vertices.size());
    for (const auto& f : poly.facets) {
        auto vs = f.vertices;
        std::sort(vs.begin(), vs.end());
        fs.facets.push_back(std::move(vs));
    }
    std::sort(fs.facets.begin(), fs.facets.end());
    fs.edges = poly.edges;
    return fs;
}

}  // namespace jammedfan
