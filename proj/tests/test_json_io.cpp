#include <catch2/catch_amalgamated.hpp>

#include "sunfree/acceptance.hpp"
#include "sunfree/json_io.hpp"

using namespace sunfree;

TEST_CASE("construction reports serialize flat") {
    nlohmann::json j = to_json(sum_extremal(4, 3));
    CHECK(j["schema"] == 1);
    CHECK(j["total"] == "38");
    CHECK(j["sizes"] == nlohmann::json::array({"16", "16", "6"}));
    CHECK(j["materialized"] == true);
}

TEST_CASE("expectation reports carry num/den strings") {
    GroundSet g(4);
    FamilyTuple one(g, {Family(g, {SubsetMask::of({1})}),
                        Family(g, {SubsetMask::of({2})}), Family(g, {})});
    ExpectationReport r = exact_pq_expectation(one);
    CHECK(r.exact_value == BigRat(1, 10));
    nlohmann::json j = to_json(r);
    CHECK(j["exact"] == "1/10");
    CHECK(BigRat(j["exact"].get<std::string>()) == r.exact_value);

    ExpectationReport mc = mc_pq_expectation(one, 256, 5);
    nlohmann::json jm = to_json(mc);
    CHECK(jm["samples"] == 256);
    CHECK(jm["seed"] == 5);
    CHECK(jm.contains("mc_stderr"));
}

TEST_CASE("classification serializes as a list of template names") {
    CHECK(to_json(classify(PetalGraph(3))) ==
          nlohmann::json::array({"G1", "G2", "G3"}));
    CHECK(to_json(classify(template_graph(Template::G3))) ==
          nlohmann::json::array({"G3"}));
}

TEST_CASE("search results embed the witness in family format") {
    nlohmann::json j = to_json(exhaustive_max_sum(3, 3));
    CHECK(j["best_total"] == "21");
    std::istringstream is(j["witness"].get<std::string>());
    FamilyTuple back = read_family_tuple(is);
    CHECK(back.total_size() == 21);
    CHECK_FALSE(find_multicolor_sunflower(back).has_value());
}

TEST_CASE("solve reports serialize the case label and point") {
    nlohmann::json j = to_json(solve_case2());
    CHECK(j["case"] == "CASE2");
    CHECK(j["point"].contains("a"));
    CHECK(j["constraint_check"] == true);
}
