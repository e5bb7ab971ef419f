#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sunfree/bounds.hpp"
#include "sunfree/family.hpp"
#include "sunfree/mask.hpp"
#include "sunfree/sunflower.hpp"

// The extremal family constructions, emitted as concrete tuples with exact
// size accounting. Members are materialized whenever n <= 24 so the generic
// detector can certify the tuple; beyond that only the counts are reported.

namespace sunfree {

struct ConstructionReport {
    // Present iff the member lists were materialized (n <= 24).
    std::optional<FamilyTuple> tuple;
    int n = 0;
    int k = 0;
    std::vector<BigInt> sizes;
    BigInt total;
    BigInt product;
    std::string claimed_formula;
};

namespace detail {

inline ConstructionReport finish_report(std::optional<FamilyTuple> tuple, int n,
                                        int k, std::vector<BigInt> sizes,
                                        std::string formula) {
    ConstructionReport r;
    r.tuple = std::move(tuple);
    r.n = n;
    r.k = k;
    r.sizes = std::move(sizes);
    r.total = 0;
    r.product = 1;
    for (const BigInt& s : r.sizes) {
        r.total += s;
        r.product *= s;
    }
    r.claimed_formula = std::move(formula);
    if (r.tuple) {
        for (int i = 0; i < k; ++i)
            if (BigInt(r.tuple->family(i).size()) != r.sizes[i])
                throw CertificationError("construction size accounting mismatch");
    }
    return r;
}

}  // namespace detail

// Families 1..k-1 = 2^[n]; family k = {empty} plus every set of size
// >= n-k+2. Total is s_formula(n,k).
inline ConstructionReport sum_extremal(int n, int k) {
    if (k < 3 || n < k) throw std::domain_error("sum_extremal requires n >= k >= 3");
    GroundSet g(n);
    std::vector<BigInt> sizes(k, pow2(n));
    BigInt last = 1;
    for (int s = n - k + 2; s <= n; ++s) last += binomial(n, s);
    sizes[k - 1] = last;

    std::optional<FamilyTuple> tuple;
    if (n <= kMaxEnumGroundSize) {
        std::vector<Family> fams;
        for (int i = 0; i + 1 < k; ++i) fams.push_back(Family::power_set(g));
        std::vector<SubsetMask> special{SubsetMask{0}};
        for (std::uint64_t b = 0; b < g.universe_size(); ++b)
            if (std::popcount(b) >= n - k + 2) special.push_back(SubsetMask{b});
        fams.emplace_back(g, std::move(special));
        tuple = FamilyTuple(g, std::move(fams));
    }
    return detail::finish_report(std::move(tuple), n, k, std::move(sizes),
                                 "(k-1)*2^n + 1 + sum_{s=n-k+2}^{n} C(n,s)");
}

// A_1 = A_2 = {S : 1 in S or |S| >= n-1}, A_3 = {S : 1 not in S or
// |S| >= n-1}, A_4..A_k = 2^[n]. Sizes 2^{n-1}+1, 2^{n-1}+1, 2^{n-1}+n,
// then 2^n; the k = 3 product is (1/8 + o(1)) 2^{3n}.
inline ConstructionReport product_extremal(int n, int k) {
    if (n < 3 || k < 3) throw std::domain_error("product_extremal requires n, k >= 3");
    GroundSet g(n);
    std::vector<BigInt> sizes(k, pow2(n));
    sizes[0] = sizes[1] = pow2(n - 1) + 1;
    sizes[2] = pow2(n - 1) + n;

    std::optional<FamilyTuple> tuple;
    if (n <= kMaxEnumGroundSize) {
        std::vector<SubsetMask> with1, without1;
        for (std::uint64_t b = 0; b < g.universe_size(); ++b) {
            const bool big = std::popcount(b) >= n - 1;
            if ((b & 1) || big) with1.push_back(SubsetMask{b});
            if (!(b & 1) || big) without1.push_back(SubsetMask{b});
        }
        std::vector<Family> fams;
        fams.emplace_back(g, with1);
        fams.emplace_back(g, with1);
        fams.emplace_back(g, std::move(without1));
        for (int i = 3; i < k; ++i) fams.push_back(Family::power_set(g));
        tuple = FamilyTuple(g, std::move(fams));
    }
    return detail::finish_report(std::move(tuple), n, k, std::move(sizes),
                                 "(2^{n-1}+1)^2 * (2^{n-1}+n) * 2^{n(k-3)}");
}

// k identical copies of all s-subsets of [n] omitting element 1, on n = m*s.
// Tight for the first branch of uniform_bound with t = m, c = 0: every
// perfect matching of [n] by s-sets has a block containing 1.
inline ConstructionReport tk_matching_extremal(int s, int m, int k) {
    if (s < 1 || m < 2 || k < m)
        throw std::domain_error("tk_matching_extremal requires s >= 1, k >= m = t >= 2");
    const int n = m * s;
    if (n > kMaxEnumGroundSize)
        throw std::domain_error("tk_matching_extremal requires m*s <= 24");
    GroundSet g(n);
    std::vector<SubsetMask> omitting;
    for (SubsetMask ss : subsets_of_size(g, s))
        if (!ss.test(1)) omitting.push_back(ss);
    std::vector<BigInt> sizes(k, BigInt(omitting.size()));
    std::vector<Family> fams;
    for (int i = 0; i < k; ++i) fams.emplace_back(g, omitting);
    return detail::finish_report(FamilyTuple(g, std::move(fams)), n, k,
                                 std::move(sizes), "(t-1)k/m * C(n,s) with t=m");
}

// k-1 copies of all s-subsets of [n] plus one empty family; total
// (k-1) C(n,s), tight for the uniform lemma.
inline ConstructionReport uniform_tight(int n, int s, int k) {
    if (k < 3) throw std::domain_error("uniform_tight requires k >= 3");
    if (s < 0 || s > n) throw std::domain_error("uniform_tight requires 0 <= s <= n");
    GroundSet g(n);
    std::vector<BigInt> sizes(k, binomial(n, s));
    sizes[k - 1] = 0;
    std::optional<FamilyTuple> tuple;
    if (n <= kMaxEnumGroundSize) {
        std::vector<Family> fams;
        for (int i = 0; i + 1 < k; ++i) fams.push_back(Family::uniform_layer(g, s));
        fams.emplace_back(g, std::vector<SubsetMask>{});
        tuple = FamilyTuple(g, std::move(fams));
    }
    return detail::finish_report(std::move(tuple), n, k, std::move(sizes),
                                 "(k-1) * C(n,s)");
}

// Runs the generic detector over a materialized construction.
inline bool certified_sunflower_free(const ConstructionReport& r) {
    if (!r.tuple)
        throw std::domain_error("construction was not materialized; detection refused");
    return !find_multicolor_sunflower(*r.tuple).has_value();
}

}  // namespace sunfree
