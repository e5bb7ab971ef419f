#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "sunfree/sunfree.hpp"

// The certification suite: each criterion pins one quantitative claim at its
// stated tolerance and reports expected vs observed. The CLI `report`
// command and the acceptance test binary both run exactly this list.

namespace sunfree {

struct CriterionResult {
    std::string id;
    std::string name;
    std::string expected;
    std::string observed;
    bool pass = false;
    std::int64_t millis = 0;
};

// Hooks exist so the harness can inject a broken detector and watch the
// affected criterion fail; production runs use the defaults.
struct AcceptanceHooks {
    std::function<std::optional<SunflowerWitness>(const FamilyTuple&)> detector =
        [](const FamilyTuple& ft) { return find_multicolor_sunflower(ft); };
};

inline constexpr std::uint64_t kAcceptanceSeed = 71201;

namespace detail {

inline std::string rat_str(const BigRat& v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

struct Criterion {
    std::string id;
    std::string name;
    std::function<void(std::string&, std::string&, bool&)> run;
};

inline std::vector<Criterion> acceptance_criteria(const AcceptanceHooks& hooks) {
    std::vector<Criterion> cs;

    cs.push_back({"C1", "max-sum search value at n=3, k=3",
                  [](std::string& exp, std::string& obs, bool& ok) {
                      exp = "best=21 proven, equal to the closed form";
                      SearchResult r = exhaustive_max_sum(3, 3);
                      std::ostringstream os;
                      os << "best=" << r.best_total
                         << (r.proven_optimal ? " proven" : " unproven")
                         << ", formula=" << s_formula(3, 3);
                      obs = os.str();
                      ok = r.best_total == 21 && r.proven_optimal &&
                           r.best_total == s_formula(3, 3);
                  }});

    cs.push_back({"C2", "max-sum construction certified for n=3..10",
                  [&hooks](std::string& exp, std::string& obs, bool& ok) {
                      exp = "sunflower-free with total = closed form, n=3..10";
                      ok = true;
                      std::ostringstream os;
                      for (int n = 3; n <= 10; ++n) {
                          ConstructionReport r = sum_extremal(n, 3);
                          const bool free_ok = !hooks.detector(*r.tuple).has_value();
                          const bool total_ok = r.total == s_formula(n, 3);
                          if (!free_ok || !total_ok) {
                              ok = false;
                              os << "n=" << n << (free_ok ? "" : " sunflower-found")
                                 << (total_ok ? "" : " total-mismatch") << "; ";
                          }
                      }
                      obs = ok ? "all certified" : os.str();
                  }});

    cs.push_back({"C3", "uniform max-sum search equals the uniform cap",
                  [](std::string& exp, std::string& obs, bool& ok) {
                      exp = "6 on (3,1,0,3,3); 12 on (4,2,1,3,3); 9 on (4,2,0,2,3)";
                      struct Inst {
                          int n, s, c, t, k;
                          int want;
                      };
                      const Inst insts[] = {{3, 1, 0, 3, 3, 6},
                                            {4, 2, 1, 3, 3, 12},
                                            {4, 2, 0, 2, 3, 9}};
                      ok = true;
                      std::ostringstream os;
                      for (const Inst& in : insts) {
                          SearchResult r = exhaustive_max_sum_uniform(
                              in.n, in.s, in.c, in.t, in.k);
                          const BigRat bound =
                              uniform_bound(in.n, in.s, in.c, in.t, in.k);
                          os << r.best_total << (r.proven_optimal ? "" : "?") << " ";
                          if (!(r.proven_optimal && r.best_total == in.want &&
                                BigRat(r.best_total) == bound))
                              ok = false;
                      }
                      obs = os.str();
                  }});

    cs.push_back({"C4", "partition membership probability is 1/C(n,s)",
                  [](std::string& exp, std::string& obs, bool& ok) {
                      exp = "exact equality for all A and slots on three specs";
                      const int specs[][4] = {{5, 2, 1, 3}, {4, 2, 1, 3}, {3, 1, 0, 3}};
                      ok = true;
                      int checked = 0;
                      for (auto& sp : specs) {
                          UniformPartitionSpec spec(sp[0], sp[1], sp[2], sp[3]);
                          const BigRat want(BigInt(1), binomial(sp[0], sp[1]));
                          for (SubsetMask A : subsets_of_size(GroundSet(sp[0]), sp[1]))
                              for (int j = 3; j <= sp[3] + 2; ++j) {
                                  ++checked;
                                  if (membership_probability_check(spec, A, j) != want)
                                      ok = false;
                              }
                      }
                      obs = std::to_string(checked) + " probabilities checked" +
                            (ok ? ", all equal" : ", mismatch found");
                  }});

    cs.push_back({"C5", "partition count p(n) and good-pair bijection",
                  [](std::string& exp, std::string& obs, bool& ok) {
                      exp = "formula = enumeration and good pairs = p(n), n<=10";
                      ok = true;
                      for (int n = 1; n <= 10; ++n) {
                          if (count_four_partitions(n) !=
                              count_four_partitions_by_enumeration(n))
                              ok = false;
                          Family full = Family::power_set(GroundSet(n));
                          if (BigInt(good_pair_count(full, full)) !=
                              count_four_partitions(n))
                              ok = false;
                      }
                      obs = ok ? "agree for n=1..10" : "mismatch";
                  }});

    cs.push_back({"C6", "structure lemma over all 343 petal graphs",
                  [](std::string& exp, std::string& obs, bool& ok) {
                      exp = "all classified, max m2+t = 6, stats (6,0)(4,2)(3,2)";
                      StructureLemmaReport rep = verify_structure_lemma();
                      GraphStats s1 = graph_stats(template_graph(Template::G1));
                      GraphStats s2 = graph_stats(template_graph(Template::G2));
                      GraphStats s3 = graph_stats(template_graph(Template::G3));
                      std::ostringstream os;
                      os << "scanned=" << rep.scanned
                         << " admissible=" << rep.admissible
                         << " max=" << rep.max_m2_plus_t << " stats (" << s1.m2
                         << "," << s1.t << ")(" << s2.m2 << "," << s2.t << ")("
                         << s3.m2 << "," << s3.t << ")";
                      obs = os.str();
                      ok = rep.ok && rep.scanned == 343 && rep.admissible > 0 &&
                           rep.max_m2_plus_t == 6 && s1.m2 == 6 && s1.t == 0 &&
                           s2.m2 == 4 && s2.t == 2 && s3.m2 == 3 && s3.t == 2;
                  }});

    cs.push_back({"C7", "E(P+Q) <= 6 sweeps with Monte Carlo agreement",
                  [](std::string& exp, std::string& obs, bool& ok) {
                      exp = "exact <= 6 on every admissible triple; |mc-exact| <= 4 stderr";
                      ok = true;
                      std::int64_t exact_checked = 0, mc_checked = 0;
                      BigRat max_exact = 0;

                      // Exhaustive n = 2: every triple of families over 2^[2],
                      // keeping the sunflower-free ones with empty common part.
                      {
                          GroundSet g(2);
                          std::vector<Family> all16;
                          for (int fm = 0; fm < 16; ++fm) {
                              std::vector<SubsetMask> mem;
                              for (int b = 0; b < 4; ++b)
                                  if ((fm >> b) & 1)
                                      mem.push_back(SubsetMask{std::uint64_t(b)});
                              all16.emplace_back(g, std::move(mem));
                          }
                          for (int i = 0; i < 16; ++i)
                              for (int j = 0; j < 16; ++j)
                                  for (int l = 0; l < 16; ++l) {
                                      if ((i & j & l) != 0) continue;  // common member
                                      FamilyTuple ft(g, {all16[i], all16[j], all16[l]});
                                      if (find_multicolor_sunflower(ft)) continue;
                                      ExpectationReport r = exact_pq_expectation(ft);
                                      ++exact_checked;
                                      if (r.exact_value > max_exact)
                                          max_exact = r.exact_value;
                                      if (r.exact_value > 6) ok = false;
                                  }
                      }

                      // 10000 seeded random sunflower-free triples, n in {3,4,5}.
                      std::mt19937_64 rng(kAcceptanceSeed);
                      int accepted = 0;
                      while (accepted < 10000) {
                          const int n = 3 + int(rng() % 3);
                          GroundSet g(n);
                          std::vector<Family> fams;
                          for (int i = 0; i < 3; ++i) {
                              const int size = int(rng() % 7);
                              std::vector<SubsetMask> mem;
                              for (int s = 0; s < size; ++s)
                                  mem.push_back(SubsetMask{rng() & g.full_mask()});
                              fams.emplace_back(g, std::move(mem));
                          }
                          FamilyTuple ft(g, std::move(fams));
                          if (intersect(intersect(ft.family(0), ft.family(1)),
                                        ft.family(2))
                                  .size() != 0)
                              continue;
                          if (find_multicolor_sunflower(ft)) continue;
                          ++accepted;

                          ExpectationReport mc = mc_pq_expectation(
                              ft, 800, kAcceptanceSeed + 7919 * accepted);
                          ++exact_checked;
                          if (mc.exact_value > max_exact) max_exact = mc.exact_value;
                          if (mc.exact_value > 6) ok = false;

                          const double exact_d =
                              mc.exact_value.convert_to<double>();
                          double true_sd = 0;
                          if (mc.exact_second_moment) {
                              const BigRat var =
                                  *mc.exact_second_moment -
                                  mc.exact_value * mc.exact_value;
                              true_sd = std::sqrt(
                                  std::max(0.0, var.convert_to<double>()) / 800.0);
                          }
                          const double allow =
                              4.0 * std::max(*mc.mc_stderr, true_sd);
                          ++mc_checked;
                          if (std::abs(*mc.mc_estimate - exact_d) > allow)
                              ok = false;
                      }
                      std::ostringstream os;
                      os << exact_checked << " exact (max " << rat_str(max_exact)
                         << "), " << mc_checked << " mc within 4 stderr";
                      obs = os.str();
                  }});

    cs.push_back({"C8", "constrained optimization cases and global maximum",
                  [](std::string& exp, std::string& obs, bool& ok) {
                      exp = "1/8; (29+20*sqrt(10))/729; 0.130748 at the stated "
                            "point; CASE3 wins with agreement 1e-6";
                      ok = true;
                      SolveReport c1 = solve_case1();
                      if (c1.value != 0.125) ok = false;
                      SolveReport c2 = solve_case2();
                      const double c2_exact = (29 + 20 * std::sqrt(10.0)) / 729;
                      if (std::abs(c2.value - c2_exact) > 1e-12) ok = false;
                      SolveReport c3 = solve_case3(1e-12);
                      if (!(c3.value >= 0.130747 && c3.value <= 0.130749)) ok = false;
                      if (std::abs(c3.point.a - 0.37478) > 1e-4 ||
                          std::abs(c3.point.b - 0.590649) > 1e-4 ||
                          std::abs(c3.multipliers.lambda + 0.165171) > 1e-4 ||
                          std::abs(c3.point.d - 0.556078) > 1e-4)
                          ok = false;
                      SolveReport g = solve_global(1e-7);
                      if (g.case_label != OptCase::Case3 || !g.constraint_check)
                          ok = false;
                      const double upper = product_upper_scaled();
                      if (std::abs(upper - 0.13075) > 1e-12) ok = false;
                      // True ordering of the case values, each gap > 1e-4.
                      const double margin = 1e-4;
                      if (!(1.0 / 27 + margin < 0.125 &&
                            0.125 + margin < c2.value &&
                            c2.value + margin < c3.value))
                          ok = false;
                      std::ostringstream os;
                      os << "case1=" << c1.value << " case2=" << c2.value
                         << " case3=" << c3.value << " global="
                         << to_string(g.case_label) << " upper=" << upper;
                      obs = os.str();
                  }});

    cs.push_back({"C9", "product construction sizes, certification, floor",
                  [&hooks](std::string& exp, std::string& obs, bool& ok) {
                      exp = "sizes (2^{n-1}+1,2^{n-1}+1,2^{n-1}+n) for n=3..10; "
                            "sunflower-free for n<=8; product floor";
                      ok = true;
                      std::ostringstream os;
                      for (int n = 3; n <= 10; ++n) {
                          ConstructionReport r = product_extremal(n, 3);
                          const BigInt half = pow2(n - 1);
                          if (!(r.sizes[0] == half + 1 && r.sizes[1] == half + 1 &&
                                r.sizes[2] == half + n)) {
                              ok = false;
                              os << "n=" << n << " sizes; ";
                          }
                          if (n <= 8 && hooks.detector(*r.tuple).has_value()) {
                              ok = false;
                              os << "n=" << n << " sunflower; ";
                          }
                          const BigRat scaled(r.product, pow2(3 * n));
                          const BigRat floor =
                              BigRat(1, 8) - BigRat(BigInt(8), pow2(n));
                          if (scaled < floor) {
                              ok = false;
                              os << "n=" << n << " floor; ";
                          }
                      }
                      obs = ok ? "all certified" : os.str();
                  }});

    return cs;
}

}  // namespace detail

// Runs the whole suite, or just the criteria whose ids appear in `only`.
inline std::vector<CriterionResult> run_acceptance(
    const AcceptanceHooks& hooks = {}, const std::vector<std::string>& only = {}) {
    std::vector<CriterionResult> out;
    for (const detail::Criterion& c : detail::acceptance_criteria(hooks)) {
        if (!only.empty() &&
            std::find(only.begin(), only.end(), c.id) == only.end())
            continue;
        CriterionResult r;
        r.id = c.id;
        r.name = c.name;
        const auto start = std::chrono::steady_clock::now();
        try {
            c.run(r.expected, r.observed, r.pass);
        } catch (const std::exception& ex) {
            r.pass = false;
            r.observed = std::string("exception: ") + ex.what();
        }
        r.millis = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - start)
                       .count();
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace sunfree
