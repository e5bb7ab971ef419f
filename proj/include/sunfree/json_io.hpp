#pragma once

#include <cstdio>
#include <sstream>
#include <string>

#include <json.hpp>

#include "sunfree/construct.hpp"
#include "sunfree/optimize.hpp"
#include "sunfree/partition.hpp"
#include "sunfree/search.hpp"

// JSON views of the report types. Exact integers and rationals are encoded
// as strings ("num/den" for rationals); every top-level object carries
// "schema": 1.

namespace sunfree {

inline constexpr int kJsonSchemaVersion = 1;

inline std::string to_string(const BigInt& v) { return v.str(); }

inline std::string to_string(const BigRat& v) {
    std::ostringstream os;
    os << boost::multiprecision::numerator(v);
    if (boost::multiprecision::denominator(v) != 1)
        os << '/' << boost::multiprecision::denominator(v);
    return os.str();
}

// Shortest-round-trip style double formatting (17 significant digits).
inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline nlohmann::json to_json(const ConstructionReport& r) {
    nlohmann::json sizes = nlohmann::json::array();
    for (const BigInt& s : r.sizes) sizes.push_back(to_string(s));
    nlohmann::json j{{"schema", kJsonSchemaVersion},
                     {"n", r.n},
                     {"k", r.k},
                     {"sizes", sizes},
                     {"total", to_string(r.total)},
                     {"product", to_string(r.product)},
                     {"claimed_formula", r.claimed_formula},
                     {"materialized", r.tuple.has_value()}};
    return j;
}

inline nlohmann::json to_json(const SearchResult& r) {
    std::ostringstream witness;
    if (r.witness) write_family_tuple(witness, *r.witness);
    return nlohmann::json{{"schema", kJsonSchemaVersion},
                          {"best_total", to_string(r.best_total)},
                          {"nodes_explored", r.nodes_explored},
                          {"proven_optimal", r.proven_optimal},
                          {"witness", witness.str()}};
}

inline nlohmann::json to_json(const ExpectationReport& r) {
    nlohmann::json j{{"schema", kJsonSchemaVersion},
                     {"exact", to_string(r.exact_value)}};
    if (r.exact_second_moment)
        j["exact_second_moment"] = to_string(*r.exact_second_moment);
    if (r.mc_estimate) {
        j["mc_estimate"] = *r.mc_estimate;
        j["mc_stderr"] = *r.mc_stderr;
        j["samples"] = r.sample_count;
        j["seed"] = r.seed;
    }
    return j;
}

inline nlohmann::json to_json(const SolveReport& r) {
    const OptPoint& p = r.point;
    nlohmann::json mus = nlohmann::json::array();
    for (double m : r.multipliers.mu) mus.push_back(m);
    return nlohmann::json{{"schema", kJsonSchemaVersion},
                          {"case", to_string(r.case_label)},
                          {"value", r.value},
                          {"point",
                           {{"a", p.a},
                            {"b", p.b},
                            {"c", p.c},
                            {"d", p.d},
                            {"e", p.e},
                            {"f", p.f}}},
                          {"residual", r.residual},
                          {"constraint_check", r.constraint_check},
                          {"mu", mus},
                          {"lambda", r.multipliers.lambda}};
}

inline nlohmann::json to_json(const std::vector<Template>& templates) {
    nlohmann::json j = nlohmann::json::array();
    for (Template t : templates) j.push_back(to_string(t));
    return j;
}

inline nlohmann::json witness_json(const SunflowerWitness& w) {
    nlohmann::json sets = nlohmann::json::array();
    for (std::size_t i = 0; i < w.sets.size(); ++i)
        sets.push_back({{"family", w.family_indices[i] + 1},
                        {"set", to_string(w.sets[i])}});
    return nlohmann::json{{"core", to_string(w.core)}, {"sets", sets}};
}

}  // namespace sunfree
