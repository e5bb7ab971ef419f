#pragma once

#include <stdexcept>
#include <string>

#include "sunfree/mask.hpp"

// Closed-form extremal bounds, evaluated in exact integer/rational arithmetic.

namespace sunfree {

// Maximum of sum |A_1| + ... + |A_k| over sunflower-free k-tuples in 2^[n]:
//   (k-1) 2^n + 1 + sum_{s=n-k+2}^{n} C(n,s),  for n >= k >= 3.
inline BigInt s_formula(int n, int k) {
    if (k < 3) throw std::domain_error("s_formula requires k >= 3");
    if (n < k) throw std::domain_error("s_formula requires n >= k");
    BigInt r = BigInt(k - 1) * pow2(n) + 1;
    for (int s = n - k + 2; s <= n; ++s) r += binomial(n, s);
    return r;
}

// Cap on sum |A_i| over k s-uniform families with no t-petal core-c
// multicolor sunflower:
//   (t-1)k/m * C(n,s)   for c+t(s-c) <= n <= c+k(s-c),  m = floor((n-c)/(s-c))
//   (t-1)   * C(n,s)    for n >= c+k(s-c).
// Both branches agree at n = c+k(s-c). t = 1 is rejected: one-petal
// sunflowers are defined not to exist, so no nontrivial cap applies.
inline BigRat uniform_bound(int n, int s, int c, int t, int k) {
    if (s < 1) throw std::domain_error("uniform_bound requires s >= 1");
    if (t < 2 || t > k)
        throw std::domain_error("uniform_bound requires 2 <= t <= k");
    if (c < 0 || c > s - 1)
        throw std::domain_error("uniform_bound requires 0 <= c <= s-1");
    if (n < c + t * (s - c))
        throw std::domain_error("uniform_bound requires n >= c + t(s-c)");
    const BigInt ns = binomial(n, s);
    if (n >= c + k * (s - c)) return BigRat(BigInt(t - 1) * ns);
    const int m = (n - c) / (s - c);
    return BigRat(BigInt(t - 1) * k * ns, m);
}

// Leading factor ((k-1)/k)^k of the AM-GM product bound.
inline BigRat amgm_leading_factor(int k) {
    if (k < 3) throw std::domain_error("amgm bound requires k >= 3");
    BigInt num = 1, den = 1;
    for (int i = 0; i < k; ++i) {
        num *= k - 1;
        den *= k;
    }
    return BigRat(num, den);
}

// ((k-1)/k)^k * 2^{kn}: the leading-order upper bound on the product of k
// sunflower-free family sizes.
inline BigRat amgm_product_bound(int n, int k) {
    return amgm_leading_factor(k) * BigRat(pow2(k * n));
}

}  // namespace sunfree
