#include <catch2/catch_amalgamated.hpp>

#include "sunfree/acceptance.hpp"

using namespace sunfree;

TEST_CASE("criteria run and report timings") {
    auto rs = run_acceptance({}, {"C6"});
    REQUIRE(rs.size() == 1);
    CHECK(rs[0].id == "C6");
    CHECK(rs[0].pass);
    CHECK(rs[0].millis >= 0);
    CHECK_FALSE(rs[0].expected.empty());
    CHECK_FALSE(rs[0].observed.empty());
}

TEST_CASE("an injected detector fault fails exactly the certification rows") {
    AcceptanceHooks broken;
    // Claims every tuple contains a sunflower.
    broken.detector = [](const FamilyTuple& ft) {
        SunflowerWitness w;
        w.core = SubsetMask{};
        w.sets = {SubsetMask::of({1}), SubsetMask::of({2})};
        w.family_indices = {0, 1};
        (void)ft;
        return std::optional<SunflowerWitness>(w);
    };
    auto rs = run_acceptance(broken, {"C2", "C6", "C9"});
    REQUIRE(rs.size() == 3);
    CHECK(rs[0].id == "C2");
    CHECK_FALSE(rs[0].pass);
    CHECK(rs[0].observed.find("sunflower-found") != std::string::npos);
    CHECK(rs[1].id == "C6");
    CHECK(rs[1].pass);  // does not go through the detector hook
    CHECK(rs[2].id == "C9");
    CHECK_FALSE(rs[2].pass);
}

TEST_CASE("filter selects criteria by id") {
    auto rs = run_acceptance({}, {"C5", "C4"});
    REQUIRE(rs.size() == 2);
    CHECK(rs[0].id == "C4");
    CHECK(rs[1].id == "C5");
    CHECK(rs[0].pass);
    CHECK(rs[1].pass);
}
