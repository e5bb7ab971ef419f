#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "sunfree/construct.hpp"
#include "sunfree/sunflower.hpp"

using namespace sunfree;

TEST_CASE("max-sum construction") {
    ConstructionReport r = sum_extremal(3, 3);
    CHECK(r.sizes == std::vector<BigInt>{8, 8, 5});
    CHECK(r.total == 21);
    CHECK(certified_sunflower_free(r));

    ConstructionReport r5 = sum_extremal(5, 3);
    CHECK(r5.sizes == std::vector<BigInt>{32, 32, 7});
    CHECK(r5.total == 71);

    CHECK_THROWS_AS(sum_extremal(3, 4), std::domain_error);
}

TEST_CASE("max-sum construction totals equal the closed form up to n=12") {
    for (int k = 3; k <= 12; ++k)
        for (int n = k; n <= 12; ++n)
            CHECK(sum_extremal(n, k).total == s_formula(n, k));
}

TEST_CASE("max-sum construction certified for n <= 10") {
    for (int n = 3; n <= 10; ++n)
        CHECK(certified_sunflower_free(sum_extremal(n, 3)));
}

TEST_CASE("product construction") {
    ConstructionReport r = product_extremal(4, 3);
    CHECK(r.sizes == std::vector<BigInt>{9, 9, 12});
    CHECK(r.product == 972);
    CHECK(certified_sunflower_free(r));
    CHECK_FALSE(oracles::product_has_sunflower(*r.tuple));

    for (int n = 3; n <= 8; ++n) {
        CHECK(certified_sunflower_free(product_extremal(n, 3)));
        if (n <= 6) CHECK(certified_sunflower_free(product_extremal(n, 4)));
    }

    // |A_1| / 2^n approaches 1/2.
    for (int n = 3; n <= 12; ++n) {
        ConstructionReport rn = product_extremal(n, 3);
        BigRat ratio(rn.sizes[0], pow2(n));
        BigRat err = ratio - BigRat(1, 2);
        if (err < 0) err = -err;
        CHECK(err <= BigRat(2, pow2(n)));
    }

    // Product stays above the finite-n floor of the 1/8 coefficient.
    for (int n = 3; n <= 12; ++n) {
        ConstructionReport rn = product_extremal(n, 3);
        CHECK(BigRat(rn.product) >=
              BigRat(pow2(3 * n), 8) - BigRat(3 * pow2(2 * n + 2)));
    }
}

TEST_CASE("matching-layer construction") {
    ConstructionReport r = tk_matching_extremal(2, 2, 3);
    CHECK(r.n == 4);
    CHECK(r.sizes == std::vector<BigInt>{3, 3, 3});
    CHECK(r.total == 9);
    CHECK(r.total == BigRat(uniform_bound(4, 2, 0, 2, 3)));
    // No 2-petal core-0 sunflower.
    CHECK_FALSE(find_uniform_sunflower(*r.tuple, 2, 0).has_value());

    ConstructionReport r2 = tk_matching_extremal(3, 2, 4);
    CHECK(r2.n == 6);
    CHECK(r2.sizes == std::vector<BigInt>{10, 10, 10, 10});
    CHECK(r2.total == 40);
    CHECK_FALSE(find_uniform_sunflower(*r2.tuple, 2, 0).has_value());

    // First-branch cap is met exactly.
    CHECK(BigRat(r2.total) == uniform_bound(6, 3, 0, 2, 4));
}

TEST_CASE("uniform tight construction") {
    ConstructionReport r = uniform_tight(4, 2, 3);
    CHECK(r.sizes == std::vector<BigInt>{6, 6, 0});
    CHECK(r.total == 12);
    CHECK(certified_sunflower_free(r));
    CHECK(uniform_tight(6, 2, 3).total == 30);
}

TEST_CASE("constructions report exact sizes without materializing past 24") {
    ConstructionReport r = sum_extremal(30, 3);
    CHECK_FALSE(r.tuple.has_value());
    CHECK(r.total == s_formula(30, 3));
    CHECK_THROWS_AS(certified_sunflower_free(r), std::domain_error);
}
