#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "sunfree/bounds.hpp"
#include "sunfree/construct.hpp"
#include "sunfree/search.hpp"

using namespace sunfree;

TEST_CASE("exhaustive maximum sum at n=3") {
    SearchResult r = exhaustive_max_sum(3, 3);
    CHECK(r.best_total == 21);
    CHECK(r.proven_optimal);
    CHECK(r.best_total == s_formula(3, 3));
    CHECK(r.nodes_explored > 0);
    CHECK_FALSE(oracles::product_has_sunflower(*r.witness));
    CHECK(r.witness->total_size() == 21);

    // An optimum with two full families exists.
    ConstructionReport c = sum_extremal(3, 3);
    CHECK(c.total == r.best_total);
    CHECK(c.tuple->family(0).size() == 8);
    CHECK(c.tuple->family(1).size() == 8);
}

TEST_CASE("exhaustive maximum sum at n=4") {
    SearchResult r = exhaustive_max_sum(4, 3);
    CHECK(r.best_total == 38);
    CHECK(r.proven_optimal);
    CHECK(r.best_total >= 38);  // seeded lower bound holds regardless
    CHECK_FALSE(oracles::product_has_sunflower(*r.witness));
}

TEST_CASE("budget exhaustion degrades to the seeded bound") {
    SearchResult r = exhaustive_max_sum(3, 3, 5);
    CHECK_FALSE(r.proven_optimal);
    CHECK(r.best_total >= 21);  // the construction seed survives
    CHECK(r.nodes_explored <= 5);
}

TEST_CASE("heuristic path past the proven range") {
    SearchResult r = exhaustive_max_sum(5, 3, 20000);
    CHECK_FALSE(r.proven_optimal);
    CHECK(r.best_total >= s_formula(5, 3));
    CHECK_FALSE(oracles::product_has_sunflower(*r.witness));
}

TEST_CASE("uniform search certifies the cap instances") {
    SearchResult a = exhaustive_max_sum_uniform(3, 1, 0, 3, 3);
    CHECK(a.best_total == 6);
    CHECK(a.proven_optimal);
    CHECK(BigRat(a.best_total) == uniform_bound(3, 1, 0, 3, 3));

    SearchResult b = exhaustive_max_sum_uniform(4, 2, 1, 3, 3);
    CHECK(b.best_total == 12);
    CHECK(b.proven_optimal);
    CHECK(BigRat(b.best_total) == uniform_bound(4, 2, 1, 3, 3));

    SearchResult c = exhaustive_max_sum_uniform(4, 2, 0, 2, 3);
    CHECK(c.best_total == 9);
    CHECK(c.proven_optimal);
    CHECK(BigRat(c.best_total) == uniform_bound(4, 2, 0, 2, 3));

    CHECK_FALSE(oracles::product_has_uniform_sunflower(*a.witness, 3, 0));
    CHECK_FALSE(oracles::product_has_uniform_sunflower(*b.witness, 3, 1));
    CHECK_FALSE(oracles::product_has_uniform_sunflower(*c.witness, 2, 0));
}

TEST_CASE("uniform search agrees with the cap on larger instances") {
    SearchResult a = exhaustive_max_sum_uniform(5, 2, 1, 3, 3);
    CHECK(a.proven_optimal);
    CHECK(BigRat(a.best_total) == uniform_bound(5, 2, 1, 3, 3));

    SearchResult b = exhaustive_max_sum_uniform(6, 2, 0, 3, 3);
    CHECK(b.proven_optimal);
    CHECK(b.best_total == 30);
    CHECK(BigRat(b.best_total) == uniform_bound(6, 2, 0, 3, 3));

    // Off the n = m*s lattice the first-branch cap is sound but not tight:
    // the exhaustive optimum here is three 4-set stars through one point.
    SearchResult c = exhaustive_max_sum_uniform(5, 2, 0, 2, 3);
    CHECK(c.proven_optimal);
    CHECK(c.best_total == 12);
    CHECK(BigRat(c.best_total) <= uniform_bound(5, 2, 0, 2, 3));
}

TEST_CASE("no sunflower-free triple beats the proven optimum") {
    std::mt19937_64 rng(71);
    int checked = 0;
    while (checked < 150) {
        GroundSet g(3);
        FamilyTuple t = oracles::random_tuple(rng, g, 3, 8);
        if (oracles::product_has_sunflower(t)) continue;
        ++checked;
        CHECK(t.total_size() <= 21);
    }
}

TEST_CASE("two-family uniform search") {
    SearchResult r = exhaustive_max_sum_uniform(4, 2, 0, 2, 2);
    CHECK(r.proven_optimal);
    CHECK(r.best_total == 6);
    CHECK(BigRat(r.best_total) == uniform_bound(4, 2, 0, 2, 2));
    CHECK_FALSE(oracles::product_has_uniform_sunflower(*r.witness, 2, 0));
}

TEST_CASE("pruning never changes the optimum") {
    SearchResult pruned = exhaustive_max_sum_uniform(3, 1, 0, 3, 3,
                                                     kDefaultSearchBudget, true);
    SearchResult full = exhaustive_max_sum_uniform(3, 1, 0, 3, 3,
                                                   kDefaultSearchBudget, false);
    CHECK(pruned.best_total == full.best_total);
    CHECK(pruned.proven_optimal);
    CHECK(full.proven_optimal);

    SearchResult gp = exhaustive_max_sum(3, 3, kDefaultSearchBudget, true);
    SearchResult gf = exhaustive_max_sum(3, 3, kDefaultSearchBudget, false);
    CHECK(gp.best_total == gf.best_total);
}

TEST_CASE("uniform search heuristic beyond the exact range") {
    // C(7,2) = 21 > 16 candidate sets: heuristic with the (t-1)-layers seed.
    SearchResult r = exhaustive_max_sum_uniform(7, 2, 0, 2, 3, 3000);
    CHECK_FALSE(r.proven_optimal);
    CHECK(r.best_total >= 21);
    CHECK_FALSE(oracles::product_has_uniform_sunflower(*r.witness, 2, 0));
}

TEST_CASE("search rejects out-of-domain parameters") {
    CHECK_THROWS_AS(exhaustive_max_sum(2, 3), std::domain_error);
    CHECK_THROWS_AS(exhaustive_max_sum(5, 2), std::domain_error);
    CHECK_THROWS_AS(exhaustive_max_sum_uniform(4, 2, 2, 3, 3), std::domain_error);
    CHECK_THROWS_AS(exhaustive_max_sum_uniform(4, 2, 0, 1, 3), std::domain_error);
}

TEST_CASE("search results are reproducible") {
    SearchResult a = exhaustive_max_sum(3, 3);
    SearchResult b = exhaustive_max_sum(3, 3);
    CHECK(a.best_total == b.best_total);
    CHECK(a.nodes_explored == b.nodes_explored);
    REQUIRE(a.witness->k() == b.witness->k());
    for (int i = 0; i < a.witness->k(); ++i)
        CHECK(a.witness->family(i) == b.witness->family(i));
}
