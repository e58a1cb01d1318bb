// Exhaustive enumeration of candidate fan complexes.  Profiles come from the
// counting relations; complexes are grown cell by cell as a disk with a
// simple boundary cycle (every sphere complex built from polygons admits such
// a build order), then deduplicated by canonical code.
#pragma once

#include "fan_complex.hpp"

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace jammedfan {

// Solutions of the counting system for complexes all of whose rays have
// valence 3 or 4:
//   2b = 3*a3 + 4*a4                 (edge count from valences)
//   a3 + a4 - b + c = 2              (Euler)
//   C(c,2) = 2*a4 + b [+ c/2]       (cone pair accounting; the c/2 term
//                                    counts antipodal pairs and applies in
//                                    the centrally symmetric case)
// For fixed c the system is linear with a unique candidate, and a3 turns
// negative for every c beyond the returned range, so the search below is
// exhaustive.
inline std::vector<Profile> solve_profiles(bool symmetric) {
    std::vector<Profile> out;
    for (int c = 4; c <= 16; ++c) {
        if (symmetric && c % 2 != 0) continue;
        const int pairs = c * (c - 1) / 2 - (symmetric ? c / 2 : 0);
        for (int a4 = 0; 2 * a4 <= pairs; ++a4) {
            const int b = pairs - 2 * a4;
            const int a3 = 2 - c + b - a4;
            if (a3 < 0 || b < 3) continue;
            if (2 * b != 3 * a3 + 4 * a4) continue;
            if (a3 + a4 - b + c != 2) continue;
            if (c * (c - 1) / 2 != 2 * a4 + b + (symmetric ? c / 2 : 0)) continue;
            out.push_back(Profile{a3, a4, b, c});
        }
    }
    return out;
}

struct CensusItem {
    FanComplex complex;
    std::string code;
    bool jammed = false;
    std::string rejection;  // why not jammed, when applicable
};

struct CensusEntry {
    Profile profile;
    std::vector<CensusItem> items;  // sorted by canonical code
    int jammed_count = 0;
};

namespace detail {

struct Growth {
    const Profile target;
    std::vector<std::vector<int>> cells;
    std::vector<int> boundary;  // simple cycle of open rays
    std::vector<int> degree;
    std::set<std::pair<int, int>> edges;
    int next_ray = 0;
    int closed3 = 0, closed4 = 0;
    std::map<std::string, FanComplex>* found = nullptr;

    int ray_budget() const { return target.a3 + target.a4; }

    void emit() {
        FanComplex fc;
        fc.ray_count = next_ray;
        fc.cells = cells;
        if (!validate(fc).ok) return;
        if (!(profile(fc) == target)) return;
        auto code = canonical_code(fc);
        found->emplace(std::move(code), std::move(fc));
    }

    void close_disk() {
        const int len = static_cast<int>(boundary.size());
        if (len < 3) return;
        int add3 = 0, add4 = 0;
        for (int r : boundary) {
            const int d = degree[static_cast<size_t>(r)] + 1;
            if (d == 3) ++add3;
            else if (d == 4) ++add4;
            else return;
        }
        if (closed3 + add3 != target.a3 || closed4 + add4 != target.a4) return;
        if (static_cast<int>(edges.size()) != target.b) return;
        if (next_ray != ray_budget()) return;
        cells.push_back(boundary);
        emit();
        cells.pop_back();
    }

    void grow() {
        const int t = static_cast<int>(cells.size());
        if (t == target.c - 1) {
            close_disk();
            return;
        }
        const int len = static_cast<int>(boundary.size());
        // Remaining cells after this one, excluding the closing cell, each
        // contribute at least one new edge.
        const int future_min_edges = target.c - t - 2;
        for (int i = 0; i < len; ++i) {
            for (int k = 1; k < len; ++k) {
                const int max_new = ray_budget() - next_ray;
                for (int m = 0; m <= max_new; ++m) {
                    if (k + 1 + m < 3) continue;
                    if (len - (k - 1) + m < 3) continue;
                    if (static_cast<int>(edges.size()) + m + 1 + future_min_edges > target.b) break;
                    attach(i, k, m);
                }
            }
        }
    }

    void attach(int i, int k, int m) {
        const int len = static_cast<int>(boundary.size());
        auto at = [&](int p) { return boundary[static_cast<size_t>(((p % len) + len) % len)]; };
        const int head = at(i);
        const int tail = at(i + k);
        if (degree[static_cast<size_t>(head)] + 1 > 4) return;
        if (degree[static_cast<size_t>(tail)] + 1 > 4) return;
        if (m == 0 && edges.count(edge_key(head, tail))) return;
        int add3 = 0, add4 = 0;
        for (int j = 1; j < k; ++j) {
            const int d = degree[static_cast<size_t>(at(i + j))] + 1;
            if (d == 3) ++add3;
            else if (d == 4) ++add4;
            else return;
        }
        if (closed3 + add3 > target.a3 || closed4 + add4 > target.a4) return;

        // Build the new cell: the arc, then the chain of new rays.
        std::vector<int> walk;
        for (int j = 0; j <= k; ++j) walk.push_back(at(i + j));
        for (int j = 0; j < m; ++j) walk.push_back(next_ray + j);

        std::vector<int> saved_boundary = boundary;
        std::vector<int> nb;
        nb.push_back(head);
        for (int j = m - 1; j >= 0; --j) nb.push_back(next_ray + j);
        for (int p = i + k; p != i && p != i + len; ++p) nb.push_back(at(p));
        boundary = nb;

        std::vector<std::pair<int, int>> new_edges;
        {
            const size_t L = walk.size();
            for (size_t s = 0; s < L; ++s) {
                auto e = edge_key(walk[s], walk[(s + 1) % L]);
                if (edges.insert(e).second) new_edges.push_back(e);
            }
        }
        for (int r : walk) ++degree[static_cast<size_t>(r)];
        next_ray += m;
        closed3 += add3;
        closed4 += add4;
        cells.push_back(std::move(walk));

        grow();

        const auto& w = cells.back();
        for (int r : w) --degree[static_cast<size_t>(r)];
        cells.pop_back();
        next_ray -= m;
        closed3 -= add3;
        closed4 -= add4;
        for (const auto& e : new_edges) edges.erase(e);
        boundary = std::move(saved_boundary);
    }
};

}  // namespace detail

// All valid complexes with the given profile, one representative per
// isomorphism class, each tested for jammedness.
inline CensusEntry generate(const Profile& p) {
    if (p.a3 < 0 || p.a4 < 0 || p.b < 0 || p.c < 4)
        throw std::invalid_argument("generate: malformed profile");
    if (p.a3 + p.a4 > 8)
        throw std::invalid_argument("generate: profiles with more than 8 rays are outside the supported range");

    std::map<std::string, FanComplex> found;
    detail::Growth g{p, {}, {}, std::vector<int>(static_cast<size_t>(p.a3 + p.a4), 0), {}, 0, 0, 0, &found};
    const int V = p.a3 + p.a4;
    for (int l = 3; l <= V && l + (p.c - 2) <= p.b; ++l) {
        std::vector<int> first(static_cast<size_t>(l));
        for (int r = 0; r < l; ++r) first[static_cast<size_t>(r)] = r;
        g.cells.push_back(first);
        g.boundary = first;
        for (int r = 0; r < l; ++r) {
            ++g.degree[static_cast<size_t>(r)];
            g.edges.insert(detail::edge_key(r, (r + 1) % l));
        }
        g.next_ray = l;
        g.grow();
        g.cells.clear();
        g.boundary.clear();
        g.edges.clear();
        std::fill(g.degree.begin(), g.degree.end(), 0);
        g.next_ray = 0;
    }

    CensusEntry entry;
    entry.profile = p;
    for (auto& [code, fc] : found) {
        CensusItem item;
        item.code = code;
        auto check = is_jammed(fc);
        item.jammed = check.jammed;
        item.rejection = check.reason;
        item.complex = std::move(fc);
        if (item.jammed) ++entry.jammed_count;
        entry.items.push_back(std::move(item));
    }
    return entry;
}

// Names the combinatorial type by the shape of the dual cell: fan cones
// correspond to cell vertices and fan rays to cell facets, a facet's vertex
// count being the ray's valence.
inline std::string dual_cell_tag(const FanComplex& fc) {
    const Profile p = profile(fc);
    if (p.a3 + p.a4 != fc.ray_count) return "";
    if (p == Profile{4, 0, 6, 4}) return "tetrahedron";
    if (p == Profile{4, 1, 8, 5}) return "quadrangular-pyramid";
    if (p == Profile{2, 3, 9, 6}) return "triangular-prism";
    if (p == Profile{8, 0, 12, 6}) return "octahedron";
    if (p == Profile{0, 6, 12, 8}) return "parallelepiped";
    return "";
}

struct ClassifiedType {
    Profile profile;
    bool symmetric = false;
    std::string code;
    std::string type_tag;
    FanComplex complex;
};

// Runs the whole pipeline: profiles, censuses, jammedness.  Returns the
// jammed types in deterministic order (asymmetric profiles first).
inline std::vector<ClassifiedType> classify_jammed() {
    std::vector<ClassifiedType> out;
    std::set<std::string> tags;
    for (const bool symmetric : {false, true}) {
        for (const Profile& p : solve_profiles(symmetric)) {
            const CensusEntry census = generate(p);
            for (const CensusItem& item : census.items) {
                if (!item.jammed) continue;
                ClassifiedType ct;
                ct.profile = p;
                ct.symmetric = symmetric;
                ct.code = item.code;
                ct.type_tag = dual_cell_tag(item.complex);
                ct.complex = item.complex;
                if (ct.type_tag.empty())
                    throw std::logic_error("classify_jammed: jammed complex with unrecognized dual cell");
                if (!tags.insert(ct.type_tag).second)
                    throw std::logic_error("classify_jammed: duplicate type tag " + ct.type_tag);
                out.push_back(std::move(ct));
            }
        }
    }
    return out;
}

// Jammedness in the plane.  A complete 2-dimensional fan with n rays has n
// sectors; sectors share a ray exactly when adjacent, so each sector is
// disjoint from n-3 others.
inline bool jammed_2d(int n) {
    if (n < 3) throw std::invalid_argument("jammed_2d: a complete fan in the plane has at least 3 rays");
    if (n == 3) return true;  // every pair of sectors shares a ray
    if (n == 4) return true;  // two disjoint pairs, exactly the pairs of the involution i -> i+2
    // Some sector is disjoint from at least two others, but an involution
    // pairs it with only one, so the disjoint pairs cannot all be antipodal.
    return false;
}

}  // namespace jammedfan
