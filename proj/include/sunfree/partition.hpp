#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <mutex>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <thread>
#include <vector>

#include "sunfree/family.hpp"
#include "sunfree/mask.hpp"
#include "sunfree/petal_graph.hpp"
#include "sunfree/sunflower.hpp"

// Exact and Monte Carlo evaluation of the random-partition averaging
// arguments: ordered (k+2)-part partitions for the uniform bound, and
// 4-part partitions with nonempty tail parts for the product bound.

namespace sunfree {

// Ordered partition shape X_1,...,X_{k+2} with |X_1| = n - (c + k(s-c)),
// |X_2| = c and |X_j| = s - c for j = 3..k+2.
struct UniformPartitionSpec {
    int n, s, c, k;

    UniformPartitionSpec(int n_, int s_, int c_, int k_)
        : n(n_), s(s_), c(c_), k(k_) {
        if (s < 1 || c < 0 || c > s - 1 || k < 2)
            throw std::domain_error("infeasible partition spec: need s >= 1, 0 <= c <= s-1, k >= 2");
        if (n < c + k * (s - c))
            throw std::domain_error("infeasible partition spec: need n >= c + k(s-c)");
    }

    std::vector<int> part_sizes() const {
        std::vector<int> z{n - (c + k * (s - c)), c};
        for (int j = 0; j < k; ++j) z.push_back(s - c);
        return z;
    }
};

// An ordered partition of [n] into X_1..X_4 with X_2, X_3, X_4 nonempty.
struct FourPartSample {
    int n = 0;
    std::array<SubsetMask, 4> part{};

    bool valid() const {
        std::uint64_t seen = 0;
        for (const SubsetMask& p : part) {
            if (p.bits & seen) return false;
            seen |= p.bits;
        }
        if (seen != GroundSet(n).full_mask()) return false;
        return !part[1].empty() && !part[2].empty() && !part[3].empty();
    }
};

struct ExpectationReport {
    BigRat exact_value;
    // Exact E[(P+Q)^2], filled when the full partition space was enumerated.
    std::optional<BigRat> exact_second_moment;
    std::optional<double> mc_estimate;
    std::optional<double> mc_stderr;
    std::uint64_t sample_count = 0;
    std::uint64_t seed = 0;
};

// p(n) = 4^n - 3*3^n + 3*2^n - 1: ordered 4-part partitions of [n] with
// X_2, X_3, X_4 nonempty.
inline BigInt count_four_partitions_formula(int n) {
    if (n < 1) throw std::domain_error("count_four_partitions requires n >= 1");
    BigInt four = 1, three = 1, two = 1;
    for (int i = 0; i < n; ++i) {
        four *= 4;
        three *= 3;
        two *= 2;
    }
    return four - 3 * three + 3 * two - 1;
}

// Explicit enumeration of part assignments (n <= 12).
inline BigInt count_four_partitions_by_enumeration(int n) {
    if (n < 1 || n > 12)
        throw std::domain_error("partition enumeration supported for 1 <= n <= 12");
    std::uint64_t count = 0;
    const std::uint64_t limit = std::uint64_t{1} << (2 * n);
    for (std::uint64_t a = 0; a < limit; ++a) {
        unsigned hit = 0;
        std::uint64_t v = a;
        for (int i = 0; i < n; ++i) {
            hit |= 1u << (v & 3u);
            v >>= 2;
        }
        if ((hit & 0b1110u) == 0b1110u) ++count;
    }
    return BigInt(count);
}

// Formula value, cross-checked against the enumeration the first time each
// n <= 12 is requested.
inline BigInt count_four_partitions(int n) {
    BigInt p = count_four_partitions_formula(n);
    if (n <= 12) {
        static std::mutex mu;
        static std::set<int> verified;
        std::lock_guard<std::mutex> lock(mu);
        if (!verified.count(n)) {
            if (count_four_partitions_by_enumeration(n) != p)
                throw CertificationError("p(n) formula disagrees with enumeration");
            verified.insert(n);
        }
    }
    return p;
}

namespace detail {

// Calls fn(subset) for every size-z subset of the pool mask.
template <typename Fn>
inline void for_each_subset_of_size(std::uint64_t pool, int z, Fn&& fn) {
    std::vector<int> positions;
    for (std::uint64_t b = pool; b;) {
        positions.push_back(std::countr_zero(b));
        b &= b - 1;
    }
    const int m = static_cast<int>(positions.size());
    if (z < 0 || z > m) return;
    std::vector<int> idx(z);
    for (int i = 0; i < z; ++i) idx[i] = i;
    for (;;) {
        std::uint64_t sub = 0;
        for (int i : idx) sub |= std::uint64_t{1} << positions[i];
        fn(SubsetMask{sub});
        int i = z - 1;
        while (i >= 0 && idx[i] == m - z + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < z; ++j) idx[j] = idx[j - 1] + 1;
    }
}

// Enumerates all ordered partitions of [n] with the given part sizes.
template <typename Fn>
inline void for_each_sized_partition(int n, const std::vector<int>& sizes,
                                     Fn&& fn) {
    std::vector<SubsetMask> parts(sizes.size());
    auto rec = [&](auto&& self, std::size_t part_idx, std::uint64_t pool) -> void {
        if (part_idx == sizes.size()) {
            fn(parts);
            return;
        }
        for_each_subset_of_size(pool, sizes[part_idx], [&](SubsetMask chosen) {
            parts[part_idx] = chosen;
            self(self, part_idx + 1, pool & ~chosen.bits);
        });
    };
    rec(rec, 0, GroundSet(n).full_mask());
}

}  // namespace detail

// Enumerates every ordered partition matching the spec and returns the exact
// fraction in which X_2 .. X_j equals A. Equals 1/C(n,s) for any valid A, j.
inline BigRat membership_probability_check(const UniformPartitionSpec& spec,
                                           SubsetMask A, int j) {
    if (spec.n > 10)
        throw std::domain_error("membership_probability_check enumerates n <= 10 only");
    if (A.count() != spec.s)
        throw std::domain_error("membership_probability_check requires |A| = s");
    if (!A.fits(GroundSet(spec.n)))
        throw std::domain_error("A exceeds the ground set");
    if (j < 3 || j > spec.k + 2)
        throw std::domain_error("slot index j must lie in [3, k+2]");
    std::uint64_t total = 0, matching = 0;
    detail::for_each_sized_partition(
        spec.n, spec.part_sizes(), [&](const std::vector<SubsetMask>& parts) {
            ++total;
            if ((parts[1] | parts[j - 1]) == A) ++matching;
        });
    if (total == 0) throw std::domain_error("empty partition space");
    return BigRat(BigInt(matching), BigInt(total));
}

// Ordered pairs (B1, B2) in F x G with B1\B2 and B2\B1 nonempty and
// B1 union B2 != [n]. Good pairs biject with the 4-part partitions that
// realize (Y_1, Y_2) = (B1, B2).
inline std::int64_t good_pair_count(const Family& F, const Family& G) {
    if (!(F.ground() == G.ground()))
        throw std::invalid_argument("good_pair_count requires a shared ground set");
    const std::uint64_t full = F.ground().full_mask();
    std::int64_t count = 0;
    for (SubsetMask b1 : F.members())
        for (SubsetMask b2 : G.members()) {
            if ((b1.bits & ~b2.bits) == 0) continue;
            if ((b2.bits & ~b1.bits) == 0) continue;
            if ((b1.bits | b2.bits) == full) continue;
            ++count;
        }
    return count;
}

// Exact E|E(G)| for the uniform-lemma bipartite graph, computed in closed
// form (k * sum|A_i| / C(n,s)) and, for n <= 10, re-derived by full partition
// enumeration; the two must agree exactly. When the tuple has no k-petal
// core-c sunflower the value is checked against the Koenig cap (k-1)k.
inline ExpectationReport expected_edge_count_uniform(
    const FamilyTuple& ft, const UniformPartitionSpec& spec) {
    if (ft.ground().n != spec.n || ft.k() != spec.k)
        throw std::invalid_argument("tuple and partition spec disagree on n or k");
    for (int i = 0; i < ft.k(); ++i)
        if (!ft.family(i).is_uniform(spec.s))
            throw std::domain_error("family " + std::to_string(i + 1) +
                                    " is not " + std::to_string(spec.s) + "-uniform");

    BigInt total_members = 0;
    for (int i = 0; i < ft.k(); ++i) total_members += ft.family(i).size();
    BigRat exact = BigRat(BigInt(spec.k) * total_members, binomial(spec.n, spec.s));

    if (spec.n <= 10) {
        std::uint64_t partitions = 0;
        std::uint64_t edges = 0;
        detail::for_each_sized_partition(
            spec.n, spec.part_sizes(), [&](const std::vector<SubsetMask>& parts) {
                ++partitions;
                for (int j = 2; j < 2 + spec.k; ++j) {
                    SubsetMask y = parts[1] | parts[j];
                    for (int i = 0; i < ft.k(); ++i)
                        if (ft.family(i).contains(y)) ++edges;
                }
            });
        if (BigRat(BigInt(edges), BigInt(partitions)) != exact)
            throw CertificationError(
                "closed-form and enumerated edge expectations disagree");
    }

    if (!find_uniform_sunflower(ft, spec.k, spec.c).has_value()) {
        if (exact > BigRat(BigInt(spec.k - 1) * spec.k))
            throw CertificationError(
                "edge expectation exceeds (k-1)k on a sunflower-free tuple");
    }

    ExpectationReport rep;
    rep.exact_value = exact;
    return rep;
}

struct PqValue {
    int p = 0;
    int q = 0;
};

namespace detail {

// Membership matrix rows[i] = slots j with X_1 u X_{j+2} in family i.
inline std::array<std::uint8_t, 3> sample_edges(const FamilyTuple& ft,
                                                const FourPartSample& sample) {
    std::array<SubsetMask, 3> slot_set{sample.part[0] | sample.part[1],
                                       sample.part[0] | sample.part[2],
                                       sample.part[0] | sample.part[3]};
    std::array<std::uint8_t, 3> rows{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (ft.family(i).contains(slot_set[j])) rows[i] |= std::uint8_t(1u << j);
    return rows;
}

// P and Q evaluated literally from their indicator-sum definitions: ordered
// pairs/triples of distinct families against ordered pairs of distinct
// slots, each halved.
inline PqValue pq_from_edges(const std::array<std::uint8_t, 3>& rows) {
    int p2 = 0, q2 = 0;
    for (int b1 = 0; b1 < 3; ++b1)
        for (int b2 = 0; b2 < 3; ++b2) {
            if (b1 == b2) continue;
            for (int y1 = 0; y1 < 3; ++y1)
                for (int y2 = 0; y2 < 3; ++y2) {
                    if (y1 == y2) continue;
                    const bool y1b1 = (rows[b1] >> y1) & 1u;
                    const bool y2b2 = (rows[b2] >> y2) & 1u;
                    if (y1b1 && y2b2) {
                        ++p2;
                        // Ordered triples (B1,B2,B3) have B3 forced once
                        // (B1,B2) is fixed.
                        const int b3 = 3 - b1 - b2;
                        if ((rows[b3] >> y2) & 1u) ++q2;
                    }
                }
        }
    // q2 above iterated (b1,b2) with b3 forced; each unordered {b2,b3} with a
    // shared slot was hit twice via the two orders, matching the 1/2 factor.
    return PqValue{p2 / 2, q2 / 2};
}

}  // namespace detail

// The pair statistic (P, Q) of one 4-part sample: P counts halved ordered
// edge pairs across distinct families and slots, Q the halved ordered triples
// where one slot lies in two families. Pointwise P = m2 of the induced petal
// graph, and Q = t whenever no slot set lies in all three families.
inline PqValue pq_statistic(const FamilyTuple& ft, const FourPartSample& sample) {
    if (ft.k() != 3) throw std::domain_error("pq_statistic requires k = 3");
    if (ft.ground().n != sample.n)
        throw std::invalid_argument("sample and tuple disagree on n");
    if (!sample.valid()) throw std::invalid_argument("invalid 4-part sample");
    return detail::pq_from_edges(detail::sample_edges(ft, sample));
}

inline PetalGraph petal_graph_of_sample(const FamilyTuple& ft,
                                        const FourPartSample& sample) {
    if (ft.k() != 3) throw std::domain_error("petal graph sample requires k = 3");
    auto rows = detail::sample_edges(ft, sample);
    PetalGraph g(3);
    for (int i = 0; i < 3; ++i) g.rows[i] = rows[i];
    return g;
}

// Exact E(P+Q) over the uniform 4-part partition:
//   (3/p(n)) * [ sum over ordered i != j of good(A_i, A_j)
//                + 2 * sum over i of good(A_i, A_j .. A_l) ]
// with {j,l} complementary to i. For n <= 8 the value is re-derived by full
// enumeration (which also yields the exact second moment). When the tuple is
// sunflower-free with empty triple intersection, E(P+Q) <= 6 is enforced.
// An empty partition space (p(n) = 0, i.e. n <= 2) yields 0: every good-pair
// count vanishes identically there.
inline ExpectationReport exact_pq_expectation(const FamilyTuple& ft) {
    if (ft.k() != 3) throw std::domain_error("exact_pq_expectation requires k = 3");
    const int n = ft.ground().n;
    const BigInt p = count_four_partitions(n);

    BigInt numerator = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (i != j) numerator += good_pair_count(ft.family(i), ft.family(j));
    std::array<Family, 3> inter{intersect(ft.family(1), ft.family(2)),
                                intersect(ft.family(2), ft.family(0)),
                                intersect(ft.family(0), ft.family(1))};
    for (int i = 0; i < 3; ++i)
        numerator += 2 * good_pair_count(ft.family(i), inter[i]);

    ExpectationReport rep;
    if (p == 0) {
        if (numerator != 0)
            throw CertificationError("good pairs exist with an empty partition space");
        rep.exact_value = 0;
        rep.exact_second_moment = 0;
    } else {
        rep.exact_value = BigRat(3 * numerator, p);
    }

    if (n <= 8 && p > 0) {
        BigInt sum = 0, sum_sq = 0;
        std::uint64_t partitions = 0;
        const std::uint64_t limit = std::uint64_t{1} << (2 * n);
        for (std::uint64_t a = 0; a < limit; ++a) {
            FourPartSample s;
            s.n = n;
            std::uint64_t v = a;
            for (int i = 0; i < n; ++i) {
                s.part[v & 3u].bits |= std::uint64_t{1} << i;
                v >>= 2;
            }
            if (s.part[1].empty() || s.part[2].empty() || s.part[3].empty())
                continue;
            ++partitions;
            PqValue pq = detail::pq_from_edges(detail::sample_edges(ft, s));
            sum += pq.p + pq.q;
            sum_sq += BigInt(pq.p + pq.q) * (pq.p + pq.q);
        }
        if (BigInt(partitions) != p)
            throw CertificationError("partition count mismatch in enumeration");
        if (BigRat(sum, p) != rep.exact_value)
            throw CertificationError(
                "closed-form and enumerated E(P+Q) disagree");
        rep.exact_second_moment = BigRat(sum_sq, p);
    }

    // The <= 6 certificate applies exactly when the hypotheses of the
    // averaged structure bound hold.
    bool empty_common = intersect(inter[0], ft.family(0)).size() == 0;
    if (empty_common && rep.exact_value > 6) {
        if (!find_multicolor_sunflower(ft).has_value())
            throw CertificationError(
                "E(P+Q) > 6 on a sunflower-free tuple with empty intersection");
    }
    return rep;
}

// Monte Carlo companion: rejection-samples uniform 4-part partitions and
// averages P+Q. Sampling is split into fixed blocks of 4096 draws; block b
// derives its generator from seed + b, so results do not depend on the
// number of worker threads.
inline ExpectationReport mc_pq_expectation(const FamilyTuple& ft,
                                           std::uint64_t samples,
                                           std::uint64_t seed,
                                           unsigned threads = 1) {
    if (ft.k() != 3) throw std::domain_error("mc_pq_expectation requires k = 3");
    if (samples == 0) throw std::invalid_argument("samples must be positive");
    const int n = ft.ground().n;
    if (count_four_partitions(n) == 0)
        throw std::domain_error("no valid partitions to sample (p(n) = 0)");

    constexpr std::uint64_t kBlock = 4096;
    const std::uint64_t blocks = (samples + kBlock - 1) / kBlock;
    std::vector<std::int64_t> block_sum(blocks, 0), block_sq(blocks, 0);

    auto run_block = [&](std::uint64_t b) {
        std::mt19937_64 rng(seed + b);
        const std::uint64_t in_block = std::min(kBlock, samples - b * kBlock);
        std::int64_t s1 = 0, s2 = 0;
        for (std::uint64_t i = 0; i < in_block; ++i) {
            FourPartSample smp;
            smp.n = n;
            for (;;) {
                smp.part = {};
                std::uint64_t reservoir = 0;
                int bits_left = 0;
                for (int e = 0; e < n; ++e) {
                    if (bits_left == 0) {
                        reservoir = rng();
                        bits_left = 64;
                    }
                    smp.part[reservoir & 3u].bits |= std::uint64_t{1} << e;
                    reservoir >>= 2;
                    bits_left -= 2;
                }
                if (!smp.part[1].empty() && !smp.part[2].empty() &&
                    !smp.part[3].empty())
                    break;
            }
            PqValue pq = detail::pq_from_edges(detail::sample_edges(ft, smp));
            const std::int64_t x = pq.p + pq.q;
            s1 += x;
            s2 += x * x;
        }
        block_sum[b] = s1;
        block_sq[b] = s2;
    };

    if (threads <= 1 || blocks == 1) {
        for (std::uint64_t b = 0; b < blocks; ++b) run_block(b);
    } else {
        const unsigned nt = std::min<std::uint64_t>(threads, blocks);
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < nt; ++t)
            pool.emplace_back([&, t] {
                for (std::uint64_t b = t; b < blocks; b += nt) run_block(b);
            });
        for (std::thread& th : pool) th.join();
    }

    std::int64_t s1 = 0, s2 = 0;
    for (std::uint64_t b = 0; b < blocks; ++b) {
        s1 += block_sum[b];
        s2 += block_sq[b];
    }
    const double mean = double(s1) / double(samples);
    double var = 0.0;
    if (samples > 1)
        var = (double(s2) - double(s1) * double(s1) / double(samples)) /
              double(samples - 1);
    if (var < 0) var = 0;

    ExpectationReport rep = exact_pq_expectation(ft);
    rep.mc_estimate = mean;
    rep.mc_stderr = std::sqrt(var / double(samples));
    rep.sample_count = samples;
    rep.seed = seed;
    return rep;
}

}  // namespace sunfree
