// Combinatorial fan complexes: the face structure of a complete polyhedral
// fan in R^3, recorded as a regular CW decomposition of the sphere.  Rays are
// numbered 0..R-1; every full-dimensional cone is stored as the cyclic walk
// of its boundary rays.  This header provides validation, ray links,
// canonical codes (isomorphism testing and automorphism groups), antipodal
// involutions, and the jammedness test.
#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace jammedfan {

struct FanComplex {
    int ray_count = 0;
    std::vector<std::vector<int>> cells;  // cyclic ray walks, one per 3-cone
};

struct Profile {
    int a3 = 0;  // rays of valence 3
    int a4 = 0;  // rays of valence 4
    int b = 0;   // two-dimensional cones (edges)
    int c = 0;   // full-dimensional cones

    friend bool operator==(const Profile& x, const Profile& y) {
        return x.a3 == y.a3 && x.a4 == y.a4 && x.b == y.b && x.c == y.c;
    }
    friend bool operator<(const Profile& x, const Profile& y) {
        return std::tie(x.c, x.a3, x.a4, x.b) < std::tie(y.c, y.a3, y.a4, y.b);
    }
};

struct ValidityReport {
    bool ok = true;
    std::vector<std::string> violations;
};

namespace detail {

inline std::pair<int, int> edge_key(int a, int b) { return {std::min(a, b), std::max(a, b)}; }

// Cells incident to each edge.  Meaningful once walks are well-formed and
// every edge has exactly two incident cells.
inline std::map<std::pair<int, int>, std::vector<int>> edge_cells(const FanComplex& fc) {
    std::map<std::pair<int, int>, std::vector<int>> ec;
    for (size_t ci = 0; ci < fc.cells.size(); ++ci) {
        const auto& w = fc.cells[ci];
        for (size_t t = 0; t < w.size(); ++t)
            ec[edge_key(w[t], w[(t + 1) % w.size()])].push_back(static_cast<int>(ci));
    }
    return ec;
}

inline std::vector<int> valences(const FanComplex& fc) {
    std::vector<int> val(static_cast<size_t>(fc.ray_count), 0);
    for (const auto& w : fc.cells)
        for (int r : w) ++val[static_cast<size_t>(r)];
    return val;
}

}  // namespace detail

// The cyclic structure around one ray: cells[i] lies between link rays
// rays[i] and rays[(i+1) % k].  Both lists have length equal to the valence.
struct LinkCycle {
    std::vector<int> cells;
    std::vector<int> rays;
};

namespace detail {

// Walks the cells around ray r.  Requires well-formed walks and the global
// two-cells-per-edge condition; returns an error message otherwise.
inline std::optional<LinkCycle> try_link(const FanComplex& fc,
                                         const std::map<std::pair<int, int>, std::vector<int>>& ec,
                                         int r, std::string* error) {
    struct Inc {
        int cell, prev, next;
    };
    std::vector<Inc> inc;
    for (size_t ci = 0; ci < fc.cells.size(); ++ci) {
        const auto& w = fc.cells[ci];
        const size_t L = w.size();
        for (size_t p = 0; p < L; ++p)
            if (w[p] == r)
                inc.push_back({static_cast<int>(ci), w[(p + L - 1) % L], w[(p + 1) % L]});
    }
    const size_t k = inc.size();
    if (k == 0) {
        if (error) *error = "ray " + std::to_string(r) + " lies in no cell";
        return std::nullopt;
    }
    LinkCycle link;
    int cell = inc[0].cell;
    int entry = inc[0].prev;
    int exit = inc[0].next;
    std::set<int> seen;
    for (size_t step = 0; step < k; ++step) {
        link.cells.push_back(cell);
        link.rays.push_back(entry);
        if (!seen.insert(cell).second) {
            if (error) *error = "link of ray " + std::to_string(r) + " revisits a cell";
            return std::nullopt;
        }
        auto it = ec.find(edge_key(r, exit));
        if (it == ec.end() || it->second.size() != 2) {
            if (error) *error = "link of ray " + std::to_string(r) + " crosses a malformed edge";
            return std::nullopt;
        }
        const int next_cell = it->second[0] == cell ? it->second[1] : it->second[0];
        int next_exit = -1;
        for (const Inc& in : inc)
            if (in.cell == next_cell) next_exit = in.prev == exit ? in.next : in.prev;
        if (next_exit < 0) {
            if (error) *error = "link of ray " + std::to_string(r) + " leaves its incident cells";
            return std::nullopt;
        }
        entry = exit;
        exit = next_exit;
        cell = next_cell;
    }
    if (cell != inc[0].cell || entry != inc[0].prev) {
        if (error) *error = "link of ray " + std::to_string(r) + " is not a single cycle";
        return std::nullopt;
    }
    return link;
}

}  // namespace detail

// Checks that the stored walks describe a regular CW decomposition of the
// sphere: well-formed walks, every edge in exactly two cells, single-cycle
// links, Euler relation, and the pairwise cone intersection conditions.
inline ValidityReport validate(const FanComplex& fc) {
    ValidityReport rep;
    auto fail = [&rep](std::string msg) {
        rep.ok = false;
        rep.violations.push_back(std::move(msg));
    };

    if (fc.cells.empty()) {
        fail("complex has no cells");
        return rep;
    }
    if (fc.ray_count < 1) {
        fail("complex has no rays");
        return rep;
    }
    bool walks_ok = true;
    for (size_t ci = 0; ci < fc.cells.size(); ++ci) {
        const auto& w = fc.cells[ci];
        if (w.size() < 3) {
            fail("cell " + std::to_string(ci) + " has fewer than 3 rays");
            walks_ok = false;
            continue;
        }
        std::set<int> dist;
        for (int r : w) {
            if (r < 0 || r >= fc.ray_count) {
                fail("cell " + std::to_string(ci) + " references ray " + std::to_string(r) + " out of range");
                walks_ok = false;
            } else if (!dist.insert(r).second) {
                fail("cell " + std::to_string(ci) + " repeats ray " + std::to_string(r));
                walks_ok = false;
            }
        }
    }
    if (!walks_ok) return rep;

    if (fc.cells.size() < 4)
        fail("complete fans have at least 4 full-dimensional cones, got " + std::to_string(fc.cells.size()));

    const auto val = detail::valences(fc);
    for (int r = 0; r < fc.ray_count; ++r) {
        if (val[static_cast<size_t>(r)] == 0)
            fail("ray " + std::to_string(r) + " lies in no cell");
        else if (val[static_cast<size_t>(r)] < 3)
            fail("ray " + std::to_string(r) + " has valence " + std::to_string(val[static_cast<size_t>(r)]) +
                 ", need at least 3");
    }

    const auto ec = detail::edge_cells(fc);
    bool edges_ok = true;
    for (const auto& [e, cs] : ec) {
        if (cs.size() != 2) {
            fail("edge {" + std::to_string(e.first) + "," + std::to_string(e.second) + "} lies in " +
                 std::to_string(cs.size()) + " cells, need exactly 2");
            edges_ok = false;
        }
    }

    for (size_t i = 0; i < fc.cells.size(); ++i) {
        for (size_t j = i + 1; j < fc.cells.size(); ++j) {
            std::vector<int> shared;
            std::set<int> si(fc.cells[i].begin(), fc.cells[i].end());
            for (int r : fc.cells[j])
                if (si.count(r)) shared.push_back(r);
            if (shared.size() == 2) {
                auto it = ec.find(detail::edge_key(shared[0], shared[1]));
                if (it == ec.end())
                    fail("cells " + std::to_string(i) + " and " + std::to_string(j) +
                         " share two rays that do not form an edge");
            } else if (shared.size() > 2) {
                fail("cells " + std::to_string(i) + " and " + std::to_string(j) + " share " +
                     std::to_string(shared.size()) + " rays");
            }
        }
    }

    if (edges_ok) {
        for (int r = 0; r < fc.ray_count; ++r) {
            if (val[static_cast<size_t>(r)] < 3) continue;
            std::string err;
            if (!detail::try_link(fc, ec, r, &err)) fail(err);
        }
    }

    const long long V = fc.ray_count;
    const long long E = static_cast<long long>(ec.size());
    const long long F = static_cast<long long>(fc.cells.size());
    if (V - E + F != 2)
        fail("Euler relation fails: V-E+F = " + std::to_string(V - E + F));

    return rep;
}

inline Profile profile(const FanComplex& fc) {
    Profile p;
    for (int v : detail::valences(fc)) {
        if (v == 3) ++p.a3;
        if (v == 4) ++p.a4;
    }
    p.b = static_cast<int>(detail::edge_cells(fc).size());
    p.c = static_cast<int>(fc.cells.size());
    return p;
}

// Link of a ray in a valid complex.
inline LinkCycle link(const FanComplex& fc, int r) {
    const auto ec = detail::edge_cells(fc);
    std::string err;
    auto l = detail::try_link(fc, ec, r, &err);
    if (!l) throw std::invalid_argument("link: " + err);
    return *l;
}

namespace detail {

// A flag is (cell, position in walk, direction).  Encoding breadth-first from
// a flag relabels rays by first visit and lists every cell walk in discovery
// order, which determines the complex up to isomorphism.
struct FlagCode {
    std::string code;
    std::vector<int> relabel;  // original ray -> canonical label
};

inline FlagCode encode_from_flag(const FanComplex& fc,
                                 const std::map<std::pair<int, int>, std::vector<int>>& ec,
                                 int start_cell, int start_pos, int dir) {
    FlagCode out;
    out.relabel.assign(static_cast<size_t>(fc.ray_count), -1);
    int next_label = 0;
    std::vector<char> seen(fc.cells.size(), 0);
    std::vector<std::tuple<int, int, int>> queue;
    queue.emplace_back(start_cell, start_pos, dir);
    seen[static_cast<size_t>(start_cell)] = 1;
    std::string code = "r" + std::to_string(fc.ray_count) + ":";
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        const auto [ci, p, d] = queue[qi];
        const auto& w = fc.cells[static_cast<size_t>(ci)];
        const int L = static_cast<int>(w.size());
        std::vector<int> oriented(static_cast<size_t>(L));
        for (int t = 0; t < L; ++t)
            oriented[static_cast<size_t>(t)] = w[static_cast<size_t>(((p + d * t) % L + L) % L)];
        for (int r : oriented)
            if (out.relabel[static_cast<size_t>(r)] < 0) out.relabel[static_cast<size_t>(r)] = next_label++;
        code += '[';
        for (int t = 0; t < L; ++t) {
            code += std::to_string(out.relabel[static_cast<size_t>(oriented[static_cast<size_t>(t)])]);
            code += (t + 1 < L) ? "," : "]";
        }
        for (int t = 0; t < L; ++t) {
            const int a = oriented[static_cast<size_t>(t)];
            const int b = oriented[static_cast<size_t>((t + 1) % L)];
            const auto& cs = ec.at(edge_key(a, b));
            const int cj = cs[0] == ci ? cs[1] : cs[0];
            if (seen[static_cast<size_t>(cj)]) continue;
            seen[static_cast<size_t>(cj)] = 1;
            // Enter the neighbor at b walking back across the shared edge.
            const auto& wj = fc.cells[static_cast<size_t>(cj)];
            const int Lj = static_cast<int>(wj.size());
            int s = -1, d2 = 0;
            for (int u = 0; u < Lj; ++u) {
                if (wj[static_cast<size_t>(u)] != b) continue;
                if (wj[static_cast<size_t>((u + 1) % Lj)] == a) {
                    s = u;
                    d2 = 1;
                } else if (wj[static_cast<size_t>((u + Lj - 1) % Lj)] == a) {
                    s = u;
                    d2 = -1;
                }
            }
            queue.emplace_back(cj, s, d2);
        }
    }
    if (queue.size() != fc.cells.size()) code += "|disconnected";
    out.code = std::move(code);
    return out;
}

}  // namespace detail

// Canonical code: minimum flag encoding.  Equal codes characterize
// isomorphic complexes.  Requires a valid complex.
inline std::string canonical_code(const FanComplex& fc) {
    const auto ec = detail::edge_cells(fc);
    std::string best;
    for (size_t ci = 0; ci < fc.cells.size(); ++ci) {
        const int L = static_cast<int>(fc.cells[ci].size());
        for (int p = 0; p < L; ++p) {
            for (int d : {1, -1}) {
                auto enc = detail::encode_from_flag(fc, ec, static_cast<int>(ci), p, d);
                if (best.empty() || enc.code < best) best = std::move(enc.code);
            }
        }
    }
    return best;
}

// Ray relabeling realizing the canonical code (first minimizing flag).
inline std::vector<int> canonical_labeling(const FanComplex& fc) {
    const auto ec = detail::edge_cells(fc);
    std::string best;
    std::vector<int> best_relabel;
    for (size_t ci = 0; ci < fc.cells.size(); ++ci) {
        const int L = static_cast<int>(fc.cells[ci].size());
        for (int p = 0; p < L; ++p) {
            for (int d : {1, -1}) {
                auto enc = detail::encode_from_flag(fc, ec, static_cast<int>(ci), p, d);
                if (best.empty() || enc.code < best) {
                    best = std::move(enc.code);
                    best_relabel = std::move(enc.relabel);
                }
            }
        }
    }
    return best_relabel;
}

inline bool are_isomorphic(const FanComplex& a, const FanComplex& b) {
    return canonical_code(a) == canonical_code(b);
}

// All ray permutations preserving the complex.
inline std::vector<std::vector<int>> automorphisms(const FanComplex& fc) {
    const auto ec = detail::edge_cells(fc);
    const auto base = detail::encode_from_flag(fc, ec, 0, 0, 1);
    std::set<std::vector<int>> perms;
    for (size_t ci = 0; ci < fc.cells.size(); ++ci) {
        const int L = static_cast<int>(fc.cells[ci].size());
        for (int p = 0; p < L; ++p) {
            for (int d : {1, -1}) {
                auto enc = detail::encode_from_flag(fc, ec, static_cast<int>(ci), p, d);
                if (enc.code != base.code) continue;
                std::vector<int> inv(static_cast<size_t>(fc.ray_count));
                for (int r = 0; r < fc.ray_count; ++r)
                    inv[static_cast<size_t>(enc.relabel[static_cast<size_t>(r)])] = r;
                std::vector<int> sigma(static_cast<size_t>(fc.ray_count));
                for (int r = 0; r < fc.ray_count; ++r)
                    sigma[static_cast<size_t>(r)] = inv[static_cast<size_t>(base.relabel[static_cast<size_t>(r)])];
                perms.insert(std::move(sigma));
            }
        }
    }
    return {perms.begin(), perms.end()};
}

namespace detail {

// Cyclic walks up to rotation and reflection, as a lookup key.
inline std::vector<int> normalized_walk(std::vector<int> w) {
    std::vector<int> best;
    const size_t L = w.size();
    for (int refl = 0; refl < 2; ++refl) {
        for (size_t s = 0; s < L; ++s) {
            std::vector<int> cand(L);
            for (size_t t = 0; t < L; ++t) cand[t] = w[(s + t) % L];
            if (best.empty() || cand < best) best = std::move(cand);
        }
        std::reverse(w.begin(), w.end());
    }
    return best;
}

// Cell permutation induced by a ray permutation; empty when the image of
// some walk is not a cell.
inline std::vector<int> induced_cell_map(const FanComplex& fc, const std::vector<int>& sigma) {
    std::map<std::vector<int>, int> lookup;
    for (size_t ci = 0; ci < fc.cells.size(); ++ci) lookup[normalized_walk(fc.cells[ci])] = static_cast<int>(ci);
    std::vector<int> cmap;
    for (const auto& w : fc.cells) {
        std::vector<int> img;
        img.reserve(w.size());
        for (int r : w) img.push_back(sigma[static_cast<size_t>(r)]);
        auto it = lookup.find(normalized_walk(img));
        if (it == lookup.end()) return {};
        cmap.push_back(it->second);
    }
    return cmap;
}

}  // namespace detail

// A fixed-point-free involution of the complex that fixes no cone of any
// dimension: the combinatorial shadow of central symmetry.
struct AntipodalInvolution {
    std::vector<int> ray_map;
    std::vector<int> cell_map;
};

namespace detail {

inline std::vector<AntipodalInvolution> antipodal_involutions(const FanComplex& fc) {
    std::vector<AntipodalInvolution> out;
    for (const auto& sigma : automorphisms(fc)) {
        bool ok = true;
        for (int r = 0; r < fc.ray_count && ok; ++r) {
            if (sigma[static_cast<size_t>(r)] == r) ok = false;  // fixed ray
            else if (sigma[static_cast<size_t>(sigma[static_cast<size_t>(r)])] != r) ok = false;  // not an involution
        }
        if (!ok) continue;
        for (const auto& [e, cs] : edge_cells(fc)) {
            (void)cs;
            if (edge_key(sigma[static_cast<size_t>(e.first)], sigma[static_cast<size_t>(e.second)]) == e) {
                ok = false;  // fixed edge
                break;
            }
        }
        if (!ok) continue;
        auto cmap = induced_cell_map(fc, sigma);
        if (cmap.empty()) continue;
        for (size_t ci = 0; ci < cmap.size() && ok; ++ci)
            if (cmap[ci] == static_cast<int>(ci)) ok = false;  // fixed cell
        if (!ok) continue;
        for (size_t ci = 0; ci < cmap.size() && ok; ++ci) {
            std::set<int> si(fc.cells[ci].begin(), fc.cells[ci].end());
            for (int r : fc.cells[static_cast<size_t>(cmap[ci])])
                if (si.count(r)) ok = false;  // antipodal cells must be disjoint
        }
        if (!ok) continue;
        out.push_back({sigma, cmap});
    }
    return out;
}

}  // namespace detail

// The antipodal involution, chosen least under the canonical labeling when
// several exist.  Requires a valid complex.
inline std::optional<AntipodalInvolution> antipodal_involution(const FanComplex& fc) {
    auto all = detail::antipodal_involutions(fc);
    if (all.empty()) return std::nullopt;
    const auto pi = canonical_labeling(fc);
    auto key = [&pi](const AntipodalInvolution& inv) {
        std::vector<int> k(inv.ray_map.size());
        for (size_t r = 0; r < inv.ray_map.size(); ++r)
            k[static_cast<size_t>(pi[r])] = pi[static_cast<size_t>(inv.ray_map[r])];
        return k;
    };
    const AntipodalInvolution* best = &all[0];
    auto best_key = key(all[0]);
    for (size_t i = 1; i < all.size(); ++i) {
        auto k = key(all[i]);
        if (k < best_key) {
            best_key = std::move(k);
            best = &all[i];
        }
    }
    return *best;
}

// Result of the jammedness test.  A complex is jammed when every pair of
// full-dimensional cones is rigidly pinned: the pair shares an edge, or
// shares a valence-4 ray sitting opposite in its link, or the complex admits
// an antipodal involution whose cell pairs are exactly the disjoint pairs.
struct JammedCheck {
    bool jammed = false;
    std::string reason;  // empty iff jammed
    int pairs_edge = 0;
    int pairs_ray = 0;
    int pairs_disjoint = 0;
    std::vector<std::array<int, 2>> disjoint_pairs;
    std::optional<AntipodalInvolution> involution;
};

inline JammedCheck is_jammed(const FanComplex& fc) {
    const auto v = validate(fc);
    if (!v.ok) throw std::invalid_argument("is_jammed: invalid complex: " + v.violations.front());

    JammedCheck out;
    const auto val = detail::valences(fc);
    for (int r = 0; r < fc.ray_count; ++r) {
        if (val[static_cast<size_t>(r)] > 4) {
            out.reason = "ray " + std::to_string(r) + " has valence " + std::to_string(val[static_cast<size_t>(r)]);
            return out;
        }
    }

    const auto ec = detail::edge_cells(fc);
    for (size_t i = 0; i < fc.cells.size(); ++i) {
        std::set<int> si(fc.cells[i].begin(), fc.cells[i].end());
        for (size_t j = i + 1; j < fc.cells.size(); ++j) {
            std::vector<int> shared;
            for (int r : fc.cells[j])
                if (si.count(r)) shared.push_back(r);
            if (shared.size() == 2) {
                ++out.pairs_edge;
            } else if (shared.size() == 1) {
                const int r = shared[0];
                if (val[static_cast<size_t>(r)] != 4) {
                    out.reason = "cells " + std::to_string(i) + " and " + std::to_string(j) +
                                 " meet only in ray " + std::to_string(r) + " of valence " +
                                 std::to_string(val[static_cast<size_t>(r)]);
                    return out;
                }
                std::string err;
                const auto l = detail::try_link(fc, ec, r, &err);
                int pi = -1, pj = -1;
                for (int t = 0; t < 4; ++t) {
                    if (l->cells[static_cast<size_t>(t)] == static_cast<int>(i)) pi = t;
                    if (l->cells[static_cast<size_t>(t)] == static_cast<int>(j)) pj = t;
                }
                if ((pi + 2) % 4 != pj) {
                    out.reason = "cells " + std::to_string(i) + " and " + std::to_string(j) +
                                 " are not opposite in the link of ray " + std::to_string(r);
                    return out;
                }
                ++out.pairs_ray;
            } else {
                ++out.pairs_disjoint;
                out.disjoint_pairs.push_back({static_cast<int>(i), static_cast<int>(j)});
            }
        }
    }

    if (!out.disjoint_pairs.empty()) {
        std::vector<int> partner(fc.cells.size(), -1);
        for (const auto& [i, j] : out.disjoint_pairs) {
            if (partner[static_cast<size_t>(i)] >= 0 || partner[static_cast<size_t>(j)] >= 0) {
                out.reason = "disjoint cell pairs do not form a perfect matching";
                return out;
            }
            partner[static_cast<size_t>(i)] = j;
            partner[static_cast<size_t>(j)] = i;
        }
        for (size_t ci = 0; ci < fc.cells.size(); ++ci) {
            if (partner[ci] < 0) {
                out.reason = "cell " + std::to_string(ci) + " is disjoint from no cell while disjoint pairs exist";
                return out;
            }
        }
        const auto pi = canonical_labeling(fc);
        std::optional<AntipodalInvolution> chosen;
        std::vector<int> chosen_key;
        for (const auto& inv : detail::antipodal_involutions(fc)) {
            bool matches = true;
            for (size_t ci = 0; ci < fc.cells.size() && matches; ++ci)
                if (inv.cell_map[ci] != partner[ci]) matches = false;
            if (!matches) continue;
            std::vector<int> k(inv.ray_map.size());
            for (size_t r = 0; r < inv.ray_map.size(); ++r)
                k[static_cast<size_t>(pi[r])] = pi[static_cast<size_t>(inv.ray_map[r])];
            if (!chosen || k < chosen_key) {
                chosen = inv;
                chosen_key = std::move(k);
            }
        }
        if (!chosen) {
            out.reason = "no antipodal involution realizes the disjoint cell pairs";
            return out;
        }
        out.involution = std::move(chosen);
    }

    out.jammed = true;
    return out;
}

}  // namespace jammedfan
