#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

// Ground-set arithmetic on bitmask-encoded subsets of [n] = {1,...,n}.
// Element i corresponds to bit i-1. Everything here is a plain value type.

namespace sunfree {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

// Raised when a result that certifies a mathematical statement fails its own
// recheck; seeing one means a bug, never an input problem.
struct CertificationError : std::logic_error {
    using std::logic_error::logic_error;
};

// Maximum n for which masks fit in one word.
inline constexpr int kMaxGroundSize = 64;
// Operations that enumerate whole power sets refuse beyond this.
inline constexpr int kMaxEnumGroundSize = 24;

struct GroundSet {
    int n = 0;

    explicit GroundSet(int n_) : n(n_) {
        if (n < 1 || n > kMaxGroundSize)
            throw std::domain_error("ground set size must be in [1,64], got " +
                                    std::to_string(n_));
    }

    std::uint64_t full_mask() const {
        return n == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
    }
    std::uint64_t universe_size() const {
        // Number of subsets; only meaningful when enumerable.
        if (n > kMaxEnumGroundSize)
            throw std::domain_error("power set enumeration requires n <= 24");
        return std::uint64_t{1} << n;
    }
    bool operator==(const GroundSet&) const = default;
};

struct SubsetMask {
    std::uint64_t bits = 0;

    constexpr SubsetMask() = default;
    constexpr explicit SubsetMask(std::uint64_t b) : bits(b) {}

    static SubsetMask of(std::initializer_list<int> elements) {
        std::uint64_t b = 0;
        for (int e : elements) {
            if (e < 1 || e > kMaxGroundSize)
                throw std::domain_error("element out of [1,64]: " + std::to_string(e));
            b |= std::uint64_t{1} << (e - 1);
        }
        return SubsetMask{b};
    }

    constexpr int count() const { return std::popcount(bits); }
    constexpr bool empty() const { return bits == 0; }
    constexpr bool test(int element) const {
        return (bits >> (element - 1)) & 1u;
    }
    constexpr bool contains(SubsetMask other) const {
        return (bits & other.bits) == other.bits;
    }
    bool fits(const GroundSet& g) const {
        return (bits & ~g.full_mask()) == 0;
    }

    friend constexpr SubsetMask operator&(SubsetMask a, SubsetMask b) {
        return SubsetMask{a.bits & b.bits};
    }
    friend constexpr SubsetMask operator|(SubsetMask a, SubsetMask b) {
        return SubsetMask{a.bits | b.bits};
    }
    // Set difference a \ b.
    friend constexpr SubsetMask operator-(SubsetMask a, SubsetMask b) {
        return SubsetMask{a.bits & ~b.bits};
    }
    auto operator<=>(const SubsetMask&) const = default;
};

// Renders as "{1,3,4}"; the empty set as "{}".
inline std::string to_string(SubsetMask m) {
    std::string out = "{";
    bool first = true;
    for (std::uint64_t b = m.bits; b;) {
        int i = std::countr_zero(b);
        b &= b - 1;
        if (!first) out += ',';
        out += std::to_string(i + 1);
        first = false;
    }
    out += '}';
    return out;
}

inline std::vector<int> elements_of(SubsetMask m) {
    std::vector<int> out;
    for (std::uint64_t b = m.bits; b;) {
        out.push_back(std::countr_zero(b) + 1);
        b &= b - 1;
    }
    return out;
}

inline BigInt pow2(int n) {
    if (n < 0) throw std::domain_error("pow2 of negative exponent");
    return BigInt{1} << n;
}

inline BigInt binomial(int n, int k) {
    if (n < 0) throw std::domain_error("binomial with negative n");
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    BigInt r = 1;
    for (int i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;  // exact: r is always a binomial coefficient
    }
    return r;
}

// All s-element subsets of [n] in increasing mask order.
inline std::vector<SubsetMask> subsets_of_size(const GroundSet& g, int s) {
    std::vector<SubsetMask> out;
    if (s < 0 || s > g.n) return out;
    if (s == 0) {
        out.push_back(SubsetMask{0});
        return out;
    }
    // Gosper's hack walks fixed-popcount masks in increasing order.
    std::uint64_t v =
        s == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << s) - 1);
    std::uint64_t limit = g.full_mask();
    while (v <= limit) {
        out.push_back(SubsetMask{v});
        std::uint64_t t = v | (v - 1);
        if (t == ~std::uint64_t{0}) break;
        v = (t + 1) | (((~t & (t + 1)) - 1) >> (std::countr_zero(v) + 1));
    }
    return out;
}

}  // namespace sunfree
