#pragma once

#include <array>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <vector>

#include "sunfree/bounds.hpp"
#include "sunfree/construct.hpp"
#include "sunfree/family.hpp"
#include "sunfree/mask.hpp"
#include "sunfree/petal_graph.hpp"
#include "sunfree/sunflower.hpp"

// Exhaustive maximum-sum oracles over sunflower-free tuples. These certify
// the closed-form values independently, so they avoid any pruning that
// presumes the bounds under test: only trivial cardinality caps are used.
//
// The k = 3 engine exploits that for a fixed first family the remaining two
// form a bipartite conflict problem: each forbidden (B in A2, C in A3) pair
// is an edge, and the best completion is a maximum independent set, found
// exactly via Koenig duality. Enumerating the first family then exhausts the
// whole space at desk scale.

namespace sunfree {

struct SearchResult {
    BigInt best_total = 0;
    std::optional<FamilyTuple> witness;
    std::uint64_t nodes_explored = 0;
    bool proven_optimal = false;
};

inline constexpr std::uint64_t kDefaultSearchBudget = 1'000'000'000;
inline constexpr std::uint64_t kProgressInterval = 10'000'000;

namespace detail {

// Progress goes to stderr so report output stays byte-identical.
inline void progress_checkpoint(std::uint64_t nodes, const BigInt& best) {
    if (nodes != 0 && nodes % kProgressInterval == 0)
        std::fprintf(stderr, "search: %llu nodes, incumbent %s\n",
                     static_cast<unsigned long long>(nodes), best.str().c_str());
}

}  // namespace detail

namespace detail {

// Conflict structure over a universe of <= 16 candidate sets.
struct ConflictTables {
    std::vector<SubsetMask> universe;
    // triple_completions[a][b]: indices c with {a,b,c} a forbidden triple.
    std::array<std::array<std::uint16_t, 16>, 16> triple_completions{};
    // pair_conflicts[a]: indices b forming a forbidden cross-family pair.
    std::array<std::uint16_t, 16> pair_conflicts{};

    int size() const { return static_cast<int>(universe.size()); }
};

inline bool is_sunflower_triple(SubsetMask x, SubsetMask y, SubsetMask z) {
    const SubsetMask sets[3] = {x, y, z};
    return x != y && y != z && x != z &&
           is_multicolor_sunflower(std::span<const SubsetMask>(sets, 3));
}

inline ConflictTables build_general_tables(int n) {
    ConflictTables t;
    const std::uint64_t u = std::uint64_t{1} << n;
    for (std::uint64_t b = 0; b < u; ++b) t.universe.push_back(SubsetMask{b});
    const int m = t.size();
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b)
            for (int c = b + 1; c < m; ++c) {
                if (!is_sunflower_triple(t.universe[a], t.universe[b],
                                         t.universe[c]))
                    continue;
                const int idx[3] = {a, b, c};
                for (int i = 0; i < 3; ++i)
                    for (int j = 0; j < 3; ++j) {
                        if (i == j) continue;
                        t.triple_completions[idx[i]][idx[j]] |=
                            std::uint16_t(1u << idx[3 - i - j]);
                    }
            }
    return t;
}

inline ConflictTables build_uniform_tables(int n, int s, int c, int t_petals) {
    ConflictTables t;
    t.universe = subsets_of_size(GroundSet(n), s);
    const int m = t.size();
    if (t_petals == 2) {
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b)
                if (a != b && (t.universe[a] & t.universe[b]).count() == c)
                    t.pair_conflicts[a] |= std::uint16_t(1u << b);
    } else {
        for (int a = 0; a < m; ++a)
            for (int b = a + 1; b < m; ++b)
                for (int cc = b + 1; cc < m; ++cc) {
                    if (!is_sunflower_triple(t.universe[a], t.universe[b],
                                             t.universe[cc]))
                        continue;
                    if ((t.universe[a] & t.universe[b]).count() != c) continue;
                    const int idx[3] = {a, b, cc};
                    for (int i = 0; i < 3; ++i)
                        for (int j = 0; j < 3; ++j) {
                            if (i == j) continue;
                            t.triple_completions[idx[i]][idx[j]] |=
                                std::uint16_t(1u << idx[3 - i - j]);
                        }
                }
    }
    return t;
}

inline Family family_from_index_mask(const ConflictTables& t, GroundSet g,
                                     std::uint32_t mask) {
    std::vector<SubsetMask> members;
    for (std::uint32_t m = mask; m;) {
        int i = std::countr_zero(m);
        m &= m - 1;
        members.push_back(t.universe[i]);
    }
    return Family(g, std::move(members));
}

// Lexicographic-least canonical key: families ordered by size descending
// then member list; used only to break ties among optima.
inline std::vector<std::vector<std::uint64_t>> canonical_key(const FamilyTuple& ft) {
    std::vector<std::vector<std::uint64_t>> fams;
    for (const Family& f : ft.families()) {
        std::vector<std::uint64_t> ms;
        for (SubsetMask m : f.members()) ms.push_back(m.bits);
        fams.push_back(std::move(ms));
    }
    std::sort(fams.begin(), fams.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() > b.size();
        return a < b;
    });
    return fams;
}

struct CompletionEngine {
    const ConflictTables& tables;
    GroundSet ground;
    int k;        // 2 or 3 families
    bool pairwise;  // true for the t = 2 constraint structure

    // Best completion of first-family index mask a1; fills out2/out3.
    int complete(std::uint32_t a1, std::uint32_t& out2, std::uint32_t& out3) const {
        const int m = tables.size();
        const std::uint32_t all = (m == 32) ? 0xFFFFFFFFu : ((1u << m) - 1);
        if (pairwise) {
            std::uint32_t blocked = 0;
            for (std::uint32_t v = a1; v;) {
                int a = std::countr_zero(v);
                v &= v - 1;
                blocked |= tables.pair_conflicts[a];
            }
            const std::uint32_t allowed = all & ~blocked;
            if (k == 2) {
                out2 = allowed;
                out3 = 0;
                return std::popcount(allowed);
            }
            PetalGraph g(m);
            for (int b = 0; b < m; ++b)
                if ((allowed >> b) & 1u)
                    g.rows[b] = std::uint16_t(tables.pair_conflicts[b] & allowed);
            VertexCover cover = min_vertex_cover(g);
            out2 = allowed & ~std::uint32_t(cover.rows);
            out3 = allowed & ~std::uint32_t(cover.cols);
            return std::popcount(out2) + std::popcount(out3);
        }
        PetalGraph g(m);
        for (std::uint32_t v = a1; v;) {
            int a = std::countr_zero(v);
            v &= v - 1;
            for (int b = 0; b < m; ++b)
                g.rows[b] |= tables.triple_completions[a][b];
        }
        VertexCover cover = min_vertex_cover(g);
        out2 = all & ~std::uint32_t(cover.rows);
        out3 = all & ~std::uint32_t(cover.cols);
        return std::popcount(out2) + std::popcount(out3);
    }

    // Trivial optimistic cap on any completion below a1.
    int node_bound(std::uint32_t a1) const {
        return std::popcount(a1) + (k - 1) * tables.size();
    }
};

}  // namespace detail

// Exact maximum of |A1|+|A2|+|A3| over sunflower-free triples in 2^[n],
// proven for k = 3 and n <= 4; beyond that a construction-seeded greedy with
// proven_optimal = false. The exact engine enumerates the first family over
// all 2^{2^n} choices and completes the other two optimally via Koenig.
inline SearchResult exhaustive_max_sum(
    int n, int k, std::uint64_t budget = kDefaultSearchBudget,
    bool use_pruning = true) {
    if (k < 3) throw std::domain_error("exhaustive_max_sum requires k >= 3");
    if (n < k) throw std::domain_error("exhaustive_max_sum requires n >= k");
    if (n > kMaxEnumGroundSize)
        throw std::domain_error("exhaustive_max_sum requires n <= 24");
    GroundSet g(n);
    SearchResult res;

    // Construction seed: a valid incumbent and the heuristic answer.
    ConstructionReport seed = sum_extremal(n, k);
    res.best_total = seed.total;
    res.witness = seed.tuple;

    const bool exact = (k == 3 && n <= 4);
    if (exact) {
        detail::ConflictTables tables = detail::build_general_tables(n);
        detail::CompletionEngine engine{tables, g, 3, false};
        const std::uint64_t space = std::uint64_t{1} << tables.size();
        std::optional<std::vector<std::vector<std::uint64_t>>> best_key;
        bool exhausted = true;
        for (std::uint64_t a1 = 0; a1 < space; ++a1) {
            if (res.nodes_explored >= budget) {
                exhausted = false;
                break;
            }
            ++res.nodes_explored;
            detail::progress_checkpoint(res.nodes_explored, res.best_total);
            if (use_pruning &&
                BigInt(engine.node_bound(std::uint32_t(a1))) < res.best_total)
                continue;
            std::uint32_t a2 = 0, a3 = 0;
            const int completion =
                engine.complete(std::uint32_t(a1), a2, a3);
            const BigInt total = BigInt(std::popcount(std::uint32_t(a1))) + completion;
            if (total < res.best_total) continue;
            std::vector<Family> fams{
                detail::family_from_index_mask(tables, g, std::uint32_t(a1)),
                detail::family_from_index_mask(tables, g, a2),
                detail::family_from_index_mask(tables, g, a3)};
            FamilyTuple cand(g, std::move(fams));
            if (total > res.best_total) {
                res.best_total = total;
                res.witness = cand;
                best_key.reset();
            } else {
                if (!best_key) best_key = detail::canonical_key(*res.witness);
                auto key = detail::canonical_key(cand);
                if (key < *best_key) {
                    res.witness = cand;
                    best_key = key;
                }
            }
        }
        res.proven_optimal = exhausted;
    } else {
        // Greedy sweep: try to extend the seed one set at a time.
        FamilyTuple current = *res.witness;
        bool improved = true;
        while (improved && res.nodes_explored < budget) {
            improved = false;
            for (int i = 0; i < k && res.nodes_explored < budget; ++i) {
                std::vector<Family> fams(current.families().begin(),
                                         current.families().end());
                for (std::uint64_t b = 0; b < g.universe_size(); ++b) {
                    if (res.nodes_explored >= budget) break;
                    SubsetMask m{b};
                    if (fams[i].contains(m)) continue;
                    ++res.nodes_explored;
                    detail::progress_checkpoint(res.nodes_explored,
                                                res.best_total);
                    std::vector<SubsetMask> extended(fams[i].members());
                    extended.push_back(m);
                    std::vector<Family> trial = fams;
                    trial[i] = Family(g, std::move(extended));
                    FamilyTuple t(g, trial);
                    if (!find_multicolor_sunflower(t).has_value()) {
                        fams = std::move(trial);
                        improved = true;
                    }
                }
                current = FamilyTuple(g, std::move(fams));
            }
        }
        res.best_total = current.total_size();
        res.witness = current;
        res.proven_optimal = false;
    }

    if (find_multicolor_sunflower(*res.witness).has_value())
        throw CertificationError("search witness failed re-certification");
    if (res.witness->total_size() != res.best_total)
        throw CertificationError("search total disagrees with witness");
    return res;
}

// Exact maximum of sum |A_i| over k-tuples of s-uniform families with no
// t-petal core-c multicolor sunflower; proven when C(n,s) <= 16 and k <= 3.
inline SearchResult exhaustive_max_sum_uniform(
    int n, int s, int c, int t, int k,
    std::uint64_t budget = kDefaultSearchBudget, bool use_pruning = true) {
    if (s < 1 || c < 0 || c > s - 1)
        throw std::domain_error("uniform search requires s >= 1, 0 <= c <= s-1");
    if (t < 2 || t > k)
        throw std::domain_error("uniform search requires 2 <= t <= k");
    if (n < s || n > kMaxEnumGroundSize)
        throw std::domain_error("uniform search requires s <= n <= 24");
    GroundSet g(n);
    SearchResult res;

    const std::vector<SubsetMask> layer = subsets_of_size(g, s);
    const int candidates = static_cast<int>(layer.size());

    // Seeds: t-1 full layers (a t-petal flower needs t nonempty families);
    // and for c = 0, n = t*s, all layers omitting element 1.
    {
        std::vector<Family> fams;
        for (int i = 0; i < k; ++i)
            fams.emplace_back(g, i < t - 1 ? layer : std::vector<SubsetMask>{});
        FamilyTuple seed_tuple(g, std::move(fams));
        res.best_total = seed_tuple.total_size();
        res.witness = seed_tuple;
    }
    if (c == 0 && n == t * s) {
        std::vector<SubsetMask> omit1;
        for (SubsetMask m : layer)
            if (!m.test(1)) omit1.push_back(m);
        std::vector<Family> fams(k, Family(g, omit1));
        FamilyTuple seed_tuple(g, std::move(fams));
        if (!find_uniform_sunflower(seed_tuple, t, c).has_value() &&
            seed_tuple.total_size() > res.best_total) {
            res.best_total = seed_tuple.total_size();
            res.witness = seed_tuple;
        }
    }

    const bool exact = (candidates <= 16 && k <= 3 && (t == k || t == 2));
    if (exact) {
        detail::ConflictTables tables =
            detail::build_uniform_tables(n, s, c, t);
        detail::CompletionEngine engine{tables, g, k, t == 2};
        const std::uint64_t space = std::uint64_t{1} << candidates;
        std::optional<std::vector<std::vector<std::uint64_t>>> best_key;
        bool exhausted = true;
        for (std::uint64_t a1 = 0; a1 < space; ++a1) {
            if (res.nodes_explored >= budget) {
                exhausted = false;
                break;
            }
            ++res.nodes_explored;
            detail::progress_checkpoint(res.nodes_explored, res.best_total);
            if (use_pruning &&
                BigInt(engine.node_bound(std::uint32_t(a1))) < res.best_total)
                continue;
            std::uint32_t a2 = 0, a3 = 0;
            const int completion = engine.complete(std::uint32_t(a1), a2, a3);
            const BigInt total =
                BigInt(std::popcount(std::uint32_t(a1))) + completion;
            if (total < res.best_total) continue;
            std::vector<Family> fams{
                detail::family_from_index_mask(tables, g, std::uint32_t(a1)),
                detail::family_from_index_mask(tables, g, a2)};
            if (k == 3)
                fams.push_back(detail::family_from_index_mask(tables, g, a3));
            FamilyTuple cand(g, std::move(fams));
            if (total > res.best_total) {
                res.best_total = total;
                res.witness = cand;
                best_key.reset();
            } else {
                if (!best_key) best_key = detail::canonical_key(*res.witness);
                auto key = detail::canonical_key(cand);
                if (key < *best_key) {
                    res.witness = cand;
                    best_key = key;
                }
            }
        }
        res.proven_optimal = exhausted;
    } else {
        // Greedy extension of the better seed.
        FamilyTuple current = *res.witness;
        bool improved = true;
        while (improved && res.nodes_explored < budget) {
            improved = false;
            for (int i = 0; i < k && res.nodes_explored < budget; ++i) {
                std::vector<Family> fams(current.families().begin(),
                                         current.families().end());
                for (SubsetMask m : layer) {
                    if (res.nodes_explored >= budget) break;
                    if (fams[i].contains(m)) continue;
                    ++res.nodes_explored;
                    detail::progress_checkpoint(res.nodes_explored,
                                                res.best_total);
                    std::vector<SubsetMask> extended(fams[i].members());
                    extended.push_back(m);
                    std::vector<Family> trial = fams;
                    trial[i] = Family(g, std::move(extended));
                    FamilyTuple tt(g, trial);
                    if (!find_uniform_sunflower(tt, t, c).has_value()) {
                        fams = std::move(trial);
                        improved = true;
                    }
                }
                current = FamilyTuple(g, std::move(fams));
            }
        }
        res.best_total = current.total_size();
        res.witness = current;
        res.proven_optimal = false;
    }

    if (find_uniform_sunflower(*res.witness, t, c).has_value())
        throw CertificationError("uniform search witness failed re-certification");
    if (res.witness->total_size() != res.best_total)
        throw CertificationError("uniform search total disagrees with witness");
    return res;
}

}  // namespace sunfree
