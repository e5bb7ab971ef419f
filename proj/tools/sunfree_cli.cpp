// Command-line surface for the sunflower-free certification toolkit.
//
// Exit protocol: 0 = verified / success, 1 = usage or input error,
// 2 = verification failure (a counterexample or disagreement was found).

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "sunfree/acceptance.hpp"
#include "sunfree/json_io.hpp"
#include "sunfree/sunfree.hpp"

namespace {

using namespace sunfree;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitRefuted = 2;

enum class Format { Text, Json, Csv };

struct CommonOpts {
    bool json = false;
    bool csv = false;
    Format format() const {
        if (json) return Format::Json;
        if (csv) return Format::Csv;
        return Format::Text;
    }
};

void add_format_flags(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_flag("--json", opts.json, "emit JSON");
    cmd->add_flag("--csv", opts.csv, "emit CSV");
}

FamilyTuple load_tuple(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open family file '" + path + "'");
    return read_family_tuple(in);
}

std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

int cmd_sum_bound(int n, int k, const CommonOpts& opts) {
    const BigInt v = s_formula(n, k);
    if (opts.format() == Format::Json) {
        nlohmann::json j{{"schema", kJsonSchemaVersion},
                         {"command", "sum-bound"},
                         {"n", n},
                         {"k", k},
                         {"value", to_string(v)}};
        std::cout << j.dump() << '\n';
    } else {
        std::cout << v << '\n';
    }
    return kExitOk;
}

int cmd_uniform_bound(int n, int s, int c, int t, int k, const CommonOpts& opts) {
    const BigRat v = uniform_bound(n, s, c, t, k);
    if (opts.format() == Format::Json) {
        nlohmann::json j{{"schema", kJsonSchemaVersion},
                         {"command", "uniform-bound"},
                         {"n", n},
                         {"s", s},
                         {"c", c},
                         {"t", t},
                         {"k", k},
                         {"value", to_string(v)}};
        std::cout << j.dump() << '\n';
    } else {
        std::cout << v << '\n';
    }
    return kExitOk;
}

int cmd_search_sum(int n, int k, std::optional<int> s, int c, int t,
                   std::uint64_t budget, const CommonOpts& opts) {
    SearchResult r = s ? exhaustive_max_sum_uniform(n, *s, c, t, k, budget)
                       : exhaustive_max_sum(n, k, budget);
    if (opts.format() == Format::Json) {
        nlohmann::json j = to_json(r);
        j["command"] = "search-sum";
        std::cout << j.dump() << '\n';
    } else {
        std::cout << "best_total=" << r.best_total
                  << " proven_optimal=" << (r.proven_optimal ? "true" : "false")
                  << " nodes=" << r.nodes_explored << '\n';
        write_family_tuple(std::cout, *r.witness);
    }
    return kExitOk;
}

int cmd_detect(const std::string& path, std::optional<int> t, int c,
               const CommonOpts& opts) {
    FamilyTuple ft = load_tuple(path);
    std::optional<SunflowerWitness> w =
        t ? find_uniform_sunflower(ft, *t, c) : find_multicolor_sunflower(ft);
    if (opts.format() == Format::Json) {
        nlohmann::json j{{"schema", kJsonSchemaVersion},
                         {"command", "detect"},
                         {"sunflower_free", !w.has_value()}};
        if (w) j["witness"] = witness_json(*w);
        std::cout << j.dump() << '\n';
    } else if (!w) {
        std::cout << "sunflower-free\n";
    } else {
        std::cout << "multicolor sunflower found: core=" << to_string(w->core);
        for (std::size_t i = 0; i < w->sets.size(); ++i)
            std::cout << " family" << (w->family_indices[i] + 1) << "="
                      << to_string(w->sets[i]);
        std::cout << '\n';
    }
    return w ? kExitRefuted : kExitOk;
}

int cmd_construct(const std::string& which, int n, int k, int s, int t,
                  const CommonOpts& opts) {
    ConstructionReport r = [&] {
        if (which == "sum") return sum_extremal(n, k);
        if (which == "product") return product_extremal(n, k);
        if (which == "tk-matching") return tk_matching_extremal(s, t, k);
        if (which == "uniform-tight") return uniform_tight(n, s, k);
        throw std::invalid_argument("unknown construction '" + which + "'");
    }();
    if (opts.format() == Format::Json) {
        nlohmann::json j = to_json(r);
        j["command"] = "construct";
        j["construction"] = which;
        if (r.tuple) {
            std::ostringstream os;
            write_family_tuple(os, *r.tuple);
            j["families"] = os.str();
        }
        std::cout << j.dump() << '\n';
    } else {
        if (!r.tuple)
            throw std::invalid_argument(
                "n too large to materialize members; use --json for counts");
        write_family_tuple(std::cout, *r.tuple);
    }
    return kExitOk;
}

int cmd_graphs_verify(const CommonOpts& opts) {
    StructureLemmaReport rep = verify_structure_lemma();
    if (opts.format() == Format::Json) {
        nlohmann::json j{{"schema", kJsonSchemaVersion},
                         {"command", "graphs-verify"},
                         {"ok", rep.ok},
                         {"scanned", rep.scanned},
                         {"admissible", rep.admissible},
                         {"max_m2_plus_t", rep.max_m2_plus_t}};
        if (rep.counterexample)
            j["counterexample"] = to_string(*rep.counterexample);
        std::cout << j.dump() << '\n';
    } else {
        std::cout << "scanned " << rep.scanned << " graphs, " << rep.admissible
                  << " admissible, max m2+t = " << rep.max_m2_plus_t << ": "
                  << (rep.ok ? "verified" : "REFUTED") << '\n';
        if (rep.counterexample)
            std::cout << to_string(*rep.counterexample) << '\n';
    }
    return rep.ok ? kExitOk : kExitRefuted;
}

int cmd_expectation(const std::string& path, std::uint64_t samples,
                    std::uint64_t seed, unsigned threads, std::optional<int> s,
                    int c, const CommonOpts& opts) {
    FamilyTuple ft = load_tuple(path);
    ExpectationReport rep;
    std::string kind;
    if (s) {
        UniformPartitionSpec spec(ft.ground().n, *s, c, ft.k());
        rep = expected_edge_count_uniform(ft, spec);
        kind = "edge-count";
    } else if (samples > 0) {
        rep = mc_pq_expectation(ft, samples, seed, threads);
        kind = "pq";
    } else {
        rep = exact_pq_expectation(ft);
        kind = "pq";
    }
    if (opts.format() == Format::Json) {
        nlohmann::json j = to_json(rep);
        j["command"] = "expectation";
        j["kind"] = kind;
        std::cout << j.dump() << '\n';
    } else {
        std::cout << "exact=" << rep.exact_value;
        if (rep.mc_estimate)
            std::cout << " mc=" << format_double(*rep.mc_estimate)
                      << " stderr=" << format_double(*rep.mc_stderr)
                      << " samples=" << rep.sample_count << " seed=" << rep.seed;
        std::cout << '\n';
    }
    return kExitOk;
}

int cmd_optimize(double tol, const CommonOpts& opts) {
    SolveReport r = solve_global(tol);
    if (opts.format() == Format::Json) {
        nlohmann::json j = to_json(r);
        j["command"] = "optimize";
        std::cout << j.dump() << '\n';
    } else {
        char line[256];
        std::snprintf(line, sizeof(line),
                      "case=%s value=%.6f a=%.6f b=%.6f c=%.6f d=%.6f e=%.6f "
                      "f=%.6f residual=%.3g",
                      to_string(r.case_label), r.value, r.point.a, r.point.b,
                      r.point.c, r.point.d, r.point.e, r.point.f, r.residual);
        std::cout << line << '\n';
    }
    return kExitOk;
}

int cmd_report(const CommonOpts& opts, const std::vector<std::string>& only) {
    std::vector<CriterionResult> rs = run_acceptance({}, only);
    bool all = true;
    for (const CriterionResult& r : rs) all = all && r.pass;
    switch (opts.format()) {
        case Format::Json: {
            nlohmann::json rows = nlohmann::json::array();
            for (const CriterionResult& r : rs)
                rows.push_back({{"id", r.id},
                                {"name", r.name},
                                {"expected", r.expected},
                                {"observed", r.observed},
                                {"status", r.pass ? "PASS" : "FAIL"},
                                {"millis", r.millis}});
            nlohmann::json j{{"schema", kJsonSchemaVersion},
                             {"command", "report"},
                             {"all_pass", all},
                             {"criteria", rows}};
            std::cout << j.dump() << '\n';
            break;
        }
        case Format::Csv: {
            std::cout << "id,expected,observed,status,millis\n";
            for (const CriterionResult& r : rs)
                std::cout << r.id << ',' << csv_quote(r.expected) << ','
                          << csv_quote(r.observed) << ','
                          << (r.pass ? "PASS" : "FAIL") << ',' << r.millis
                          << '\n';
            break;
        }
        case Format::Text: {
            for (const CriterionResult& r : rs)
                std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.id << ' '
                          << r.name << " | expected: " << r.expected
                          << " | observed: " << r.observed << " (" << r.millis
                          << " ms)\n";
            std::cout << (all ? "ALL CRITERIA PASS" : "CRITERIA FAILED") << '\n';
            break;
        }
    }
    return all ? kExitOk : kExitRefuted;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"certification toolkit for multicolor sunflower-free families"};
    app.require_subcommand(1);

    int n = 0, k = 3, s = 0, c = 0, t = 0;
    std::uint64_t budget = kDefaultSearchBudget;
    std::uint64_t samples = 0, seed = 0;
    unsigned threads = 1;
    double tol = 1e-9;
    std::string families_path, which;
    CommonOpts fmt_sum, fmt_uni, fmt_search, fmt_detect, fmt_construct,
        fmt_graphs, fmt_exp, fmt_opt, fmt_report;

    CLI::App* sum_bound = app.add_subcommand("sum-bound", "closed-form maximum sum");
    sum_bound->add_option("--n", n)->required();
    sum_bound->add_option("--k", k)->required();
    add_format_flags(sum_bound, fmt_sum);

    CLI::App* uni_bound =
        app.add_subcommand("uniform-bound", "uniform-layer cap on the sum");
    uni_bound->add_option("--n", n)->required();
    uni_bound->add_option("--s", s)->required();
    uni_bound->add_option("--c", c)->required();
    uni_bound->add_option("--t", t)->required();
    uni_bound->add_option("--k", k)->required();
    add_format_flags(uni_bound, fmt_uni);

    CLI::App* search =
        app.add_subcommand("search-sum", "exhaustive / heuristic max-sum search");
    search->add_option("--n", n)->required();
    search->add_option("--k", k)->required();
    CLI::Option* search_s = search->add_option("--s", s, "s-uniform search");
    search->add_option("--c", c);
    search->add_option("--t", t);
    search->add_option("--budget", budget);
    search->add_option("--threads", threads);
    add_format_flags(search, fmt_search);

    CLI::App* detect = app.add_subcommand("detect", "multicolor sunflower detector");
    detect->add_option("--families", families_path)->required();
    CLI::Option* detect_t = detect->add_option("--t", t, "petal count");
    detect->add_option("--c", c, "required core size");
    add_format_flags(detect, fmt_detect);

    CLI::App* construct =
        app.add_subcommand("construct", "emit an extremal construction");
    construct
        ->add_option("--which", which,
                     "sum | product | tk-matching | uniform-tight")
        ->required();
    construct->add_option("--n", n);
    construct->add_option("--k", k);
    construct->add_option("--s", s);
    construct->add_option("--t", t);
    add_format_flags(construct, fmt_construct);

    CLI::App* graphs =
        app.add_subcommand("graphs-verify", "verify the 3x3 structure lemma");
    add_format_flags(graphs, fmt_graphs);

    CLI::App* expectation =
        app.add_subcommand("expectation", "partition-averaged statistics");
    expectation->add_option("--families", families_path)->required();
    expectation->add_option("--samples", samples);
    expectation->add_option("--seed", seed);
    expectation->add_option("--threads", threads);
    CLI::Option* exp_s =
        expectation->add_option("--s", s, "uniform edge-count spec");
    expectation->add_option("--c", c);
    add_format_flags(expectation, fmt_exp);

    CLI::App* optimize = app.add_subcommand("optimize", "constrained product-coefficient program");
    optimize->add_option("--tol", tol);
    add_format_flags(optimize, fmt_opt);

    CLI::App* report = app.add_subcommand("report", "run the full acceptance suite");
    std::vector<std::string> report_only;
    report->add_option("--only", report_only, "run only the listed criterion ids");
    add_format_flags(report, fmt_report);

    CLI11_PARSE(app, argc, argv);

    try {
        if (sum_bound->parsed()) return cmd_sum_bound(n, k, fmt_sum);
        if (uni_bound->parsed())
            return cmd_uniform_bound(n, s, c, t, k, fmt_uni);
        if (search->parsed())
            return cmd_search_sum(
                n, k, *search_s ? std::optional<int>(s) : std::nullopt, c, t,
                budget, fmt_search);
        if (detect->parsed())
            return cmd_detect(families_path,
                              *detect_t ? std::optional<int>(t) : std::nullopt,
                              c, fmt_detect);
        if (construct->parsed())
            return cmd_construct(which, n, k, s, t, fmt_construct);
        if (graphs->parsed()) return cmd_graphs_verify(fmt_graphs);
        if (expectation->parsed())
            return cmd_expectation(families_path, samples, seed, threads,
                                   *exp_s ? std::optional<int>(s) : std::nullopt,
                                   c, fmt_exp);
        if (optimize->parsed()) return cmd_optimize(tol, fmt_opt);
        if (report->parsed()) return cmd_report(fmt_report, report_only);
    } catch (const FamilyParseError& ex) {
        std::cerr << "error: " << ex.what() << '\n';
        return kExitUsage;
    } catch (const CertificationError& ex) {
        std::cerr << "certification failure: " << ex.what() << '\n';
        return kExitRefuted;
    } catch (const std::domain_error& ex) {
        std::cerr << "error: " << ex.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& ex) {
        std::cerr << "error: " << ex.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& ex) {
        std::cerr << "failure: " << ex.what() << '\n';
        return kExitRefuted;
    }
    return kExitUsage;
}
