#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "oracles.hpp"
#include "sunfree/construct.hpp"
#include "sunfree/sunflower.hpp"

using namespace sunfree;

namespace {
std::vector<SubsetMask> sets(std::initializer_list<SubsetMask> l) { return l; }
}  // namespace

TEST_CASE("pairwise core") {
    auto s1 = sets({SubsetMask::of({1, 2}), SubsetMask::of({1, 3}),
                    SubsetMask::of({1, 4})});
    CHECK(pairwise_core(s1) == SubsetMask::of({1}));

    // {1,2} and {1,2,3} intersect in {1,2}, not in the common {1}.
    auto s2 = sets({SubsetMask::of({1, 2}), SubsetMask::of({1, 2, 3}),
                    SubsetMask::of({1, 4})});
    CHECK_FALSE(pairwise_core(s2).has_value());

    auto s3 = sets({SubsetMask::of({1}), SubsetMask::of({2}), SubsetMask::of({3})});
    CHECK(pairwise_core(s3) == SubsetMask{});

    std::vector<SubsetMask> one{SubsetMask::of({1})};
    CHECK_THROWS_AS(pairwise_core(one), std::invalid_argument);
}

TEST_CASE("sunflower predicate") {
    CHECK(is_multicolor_sunflower(sets({SubsetMask::of({1, 2}),
                                        SubsetMask::of({1, 3}),
                                        SubsetMask::of({1, 4})})));
    // First set equals the core: empty petal.
    CHECK_FALSE(is_multicolor_sunflower(sets(
        {SubsetMask::of({1}), SubsetMask::of({1, 2}), SubsetMask::of({1, 3})})));
    // The empty set never lies in a sunflower.
    CHECK_FALSE(is_multicolor_sunflower(
        sets({SubsetMask{}, SubsetMask::of({1}), SubsetMask::of({2})})));
}

TEST_CASE("sunflower implies pairwise distinct sets") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 2000; ++trial) {
        GroundSet g(1 + int(rng() % 6));
        const int k = 2 + int(rng() % 3);
        std::vector<SubsetMask> s;
        for (int i = 0; i < k; ++i) s.push_back(SubsetMask{rng() & g.full_mask()});
        if (!is_multicolor_sunflower(s)) continue;
        for (std::size_t i = 0; i < s.size(); ++i)
            for (std::size_t j = i + 1; j < s.size(); ++j)
                CHECK(s[i] != s[j]);
    }
}

TEST_CASE("detector basics") {
    GroundSet g(4);
    FamilyTuple flower(g, {Family(g, {SubsetMask::of({1, 2})}),
                           Family(g, {SubsetMask::of({1, 3})}),
                           Family(g, {SubsetMask::of({1, 4})})});
    auto w = find_multicolor_sunflower(flower);
    REQUIRE(w.has_value());
    CHECK(w->core == SubsetMask::of({1}));
    CHECK(witness_valid(flower, *w));

    // {1} has an empty petal over core {1}; no sunflower here.
    FamilyTuple no(g, {Family(g, {SubsetMask{}, SubsetMask::of({1})}),
                       Family(g, {SubsetMask::of({1, 2})}),
                       Family(g, {SubsetMask::of({1, 3})})});
    CHECK_FALSE(find_multicolor_sunflower(no).has_value());
}

TEST_CASE("max-sum construction is detector-free at n=5") {
    ConstructionReport r = sum_extremal(5, 3);
    CHECK_FALSE(find_multicolor_sunflower(*r.tuple).has_value());
    // Independent unpruned product scan agrees.
    CHECK_FALSE(oracles::product_has_sunflower(*r.tuple));
}

TEST_CASE("detector agrees with the unpruned product scan") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 400; ++trial) {
        GroundSet g(2 + int(rng() % 4));
        FamilyTuple t = oracles::random_tuple(rng, g, 2 + int(rng() % 2), 5);
        auto w = find_multicolor_sunflower(t);
        CHECK(w.has_value() == oracles::product_has_sunflower(t));
        if (w) CHECK(witness_valid(t, *w));
    }
}

TEST_CASE("uniform detector with fixed core size") {
    // Three copies of all 2-subsets of {2,3,4} inside [4].
    GroundSet g(4);
    std::vector<SubsetMask> pool{SubsetMask::of({2, 3}), SubsetMask::of({2, 4}),
                                 SubsetMask::of({3, 4})};
    Family f(g, pool);
    FamilyTuple t(g, {f, f, f});
    // Two disjoint 2-sets would need four elements from a 3-element pool.
    CHECK_FALSE(find_uniform_sunflower(t, 2, 0).has_value());
    auto w = find_uniform_sunflower(t, 2, 1);
    REQUIRE(w.has_value());
    CHECK(w->core.count() == 1);
    CHECK(witness_valid(t, *w));
    // One-petal sunflowers are defined not to exist.
    CHECK_FALSE(find_uniform_sunflower(t, 1, 0).has_value());
    CHECK_THROWS_AS(find_uniform_sunflower(t, 4, 0), std::invalid_argument);
}

TEST_CASE("uniform detector agrees with the oracle") {
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 300; ++trial) {
        GroundSet g(3 + int(rng() % 3));
        FamilyTuple t = oracles::random_tuple(rng, g, 3, 5);
        const int tt = 2 + int(rng() % 2);
        const int c = int(rng() % 3);
        auto w = find_uniform_sunflower(t, tt, c);
        CHECK(w.has_value() == oracles::product_has_uniform_sunflower(t, tt, c));
        if (w) {
            CHECK(witness_valid(t, *w));
            CHECK(w->core.count() == c);
            CHECK(int(w->sets.size()) == tt);
        }
    }
}

TEST_CASE("existence is invariant under family permutation") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 200; ++trial) {
        GroundSet g(2 + int(rng() % 3));
        FamilyTuple t = oracles::random_tuple(rng, g, 3, 4);
        const bool has = find_multicolor_sunflower(t).has_value();
        std::vector<int> perm{0, 1, 2};
        do {
            FamilyTuple p = t.permuted(perm);
            auto w = find_multicolor_sunflower(p);
            CHECK(w.has_value() == has);
            if (w) CHECK(witness_valid(p, *w));
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
}

TEST_CASE("removing members preserves sunflower-freeness") {
    std::mt19937_64 rng(43);
    int checked = 0;
    for (int trial = 0; trial < 400 && checked < 60; ++trial) {
        GroundSet g(2 + int(rng() % 3));
        FamilyTuple t = oracles::random_tuple(rng, g, 3, 4);
        if (find_multicolor_sunflower(t).has_value()) continue;
        ++checked;
        for (int i = 0; i < t.k(); ++i)
            for (SubsetMask m : t.family(i).members()) {
                std::vector<Family> fams(t.families().begin(), t.families().end());
                fams[i] = fams[i].without(m);
                CHECK_FALSE(
                    find_multicolor_sunflower(FamilyTuple(g, fams)).has_value());
            }
    }
    CHECK(checked > 0);
}
