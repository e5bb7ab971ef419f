#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#ifndef SUNFREE_CLI_BIN
#error "SUNFREE_CLI_BIN must point at the built binary"
#endif

namespace {

struct RunResult {
    int exit_code;
    std::string output;  // stdout and stderr combined
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(SUNFREE_CLI_BIN) + " " + args + " 2>&1";
    std::array<char, 4096> buf{};
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0)
        out.append(buf.data(), got);
    const int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

std::filesystem::path temp_file(const std::string& name,
                                const std::string& content) {
    auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream(path) << content;
    return path;
}

}  // namespace

TEST_CASE("sum-bound prints the closed form") {
    RunResult r = run_cli("sum-bound --n 3 --k 3");
    CHECK(r.exit_code == 0);
    CHECK(r.output == "21\n");

    RunResult j = run_cli("sum-bound --n 5 --k 4 --json");
    CHECK(j.exit_code == 0);
    auto parsed = nlohmann::json::parse(j.output);
    CHECK(parsed["schema"] == 1);
    CHECK(parsed["value"] == "113");

    CHECK(run_cli("sum-bound --n 2 --k 3").exit_code == 1);
}

TEST_CASE("uniform-bound prints exact rationals") {
    RunResult r = run_cli("uniform-bound --n 4 --s 2 --c 0 --t 2 --k 3");
    CHECK(r.exit_code == 0);
    CHECK(r.output == "9\n");
    CHECK(run_cli("uniform-bound --n 3 --s 2 --c 0 --t 2 --k 3").exit_code == 1);
}

TEST_CASE("construct pipes into detect") {
    RunResult fam = run_cli("construct --which sum --n 5 --k 3");
    REQUIRE(fam.exit_code == 0);
    auto path = temp_file("sunfree_sum53.fam", fam.output);

    RunResult det = run_cli("detect --families " + path.string());
    CHECK(det.exit_code == 0);
    CHECK(det.output == "sunflower-free\n");

    RunResult tk = run_cli("construct --which tk-matching --s 2 --t 2 --k 3");
    REQUIRE(tk.exit_code == 0);
    auto tk_path = temp_file("sunfree_tk.fam", tk.output);
    RunResult det_u =
        run_cli("detect --families " + tk_path.string() + " --t 2 --c 0");
    CHECK(det_u.exit_code == 0);
    RunResult det_u1 =
        run_cli("detect --families " + tk_path.string() + " --t 2 --c 1");
    CHECK(det_u1.exit_code == 2);  // core-1 pairs exist in that layer
}

TEST_CASE("detect refutes with a witness and exit code 2") {
    auto path = temp_file("sunfree_flower.fam",
                          "n=4\n1,2\nn=4\n1,3\nn=4\n1,4\n");
    RunResult r = run_cli("detect --families " + path.string());
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("core={1}") != std::string::npos);

    RunResult j = run_cli("detect --families " + path.string() + " --json");
    CHECK(j.exit_code == 2);
    auto parsed = nlohmann::json::parse(j.output);
    CHECK(parsed["sunflower_free"] == false);
    CHECK(parsed["witness"]["core"] == "{1}");
}

TEST_CASE("unreadable family files name the offending line") {
    auto path = temp_file("sunfree_bad.fam", "n=3\n1,2\n9\n");
    RunResult r = run_cli("detect --families " + path.string());
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("line 3") != std::string::npos);

    RunResult missing = run_cli("detect --families /nonexistent/f.fam");
    CHECK(missing.exit_code == 1);
}

TEST_CASE("search-sum reports the proven optimum") {
    RunResult r = run_cli("search-sum --n 3 --k 3 --json");
    CHECK(r.exit_code == 0);
    auto parsed = nlohmann::json::parse(r.output);
    CHECK(parsed["best_total"] == "21");
    CHECK(parsed["proven_optimal"] == true);

    RunResult u = run_cli("search-sum --n 4 --k 3 --s 2 --c 1 --t 3 --json");
    CHECK(u.exit_code == 0);
    auto up = nlohmann::json::parse(u.output);
    CHECK(up["best_total"] == "12");
}

TEST_CASE("graphs-verify certifies the structure lemma") {
    RunResult r = run_cli("graphs-verify");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("343") != std::string::npos);
    CHECK(r.output.find("max m2+t = 6") != std::string::npos);
}

TEST_CASE("expectation command") {
    auto path = temp_file("sunfree_exp.fam", "n=3\n1\n1,2\nn=3\n2\nn=3\n3\n");
    RunResult exact = run_cli("expectation --families " + path.string());
    CHECK(exact.exit_code == 0);
    CHECK(exact.output.rfind("exact=", 0) == 0);

    RunResult mc = run_cli("expectation --families " + path.string() +
                           " --samples 2000 --seed 7 --json");
    CHECK(mc.exit_code == 0);
    auto parsed = nlohmann::json::parse(mc.output);
    CHECK(parsed["samples"] == 2000);
    CHECK(parsed["seed"] == 7);

    // Reproducible for a fixed seed, and thread count changes nothing.
    RunResult mc2 = run_cli("expectation --families " + path.string() +
                            " --samples 2000 --seed 7 --json");
    CHECK(mc.output == mc2.output);
    RunResult mc4 = run_cli("expectation --families " + path.string() +
                            " --samples 2000 --seed 7 --threads 4 --json");
    CHECK(mc.output == mc4.output);

    // Uniform edge-count expectation on a 2-uniform tuple.
    auto upath = temp_file("sunfree_uni.fam",
                           "n=4\n1,2\n3,4\nn=4\n1,3\nn=4\n2,3\n");
    RunResult edge =
        run_cli("expectation --families " + upath.string() + " --s 2 --c 1");
    CHECK(edge.exit_code == 0);
    CHECK(edge.output == "exact=2\n");  // 3 * 4 / C(4,2)
}

TEST_CASE("optimize emits the global report") {
    RunResult r = run_cli("optimize --tol 1e-12 --json");
    CHECK(r.exit_code == 0);
    auto parsed = nlohmann::json::parse(r.output);
    CHECK(parsed["case"] == "CASE3");
    CHECK(std::abs(double(parsed["value"]) - 0.130748) < 1e-5);
    CHECK(parsed["constraint_check"] == true);

    // Byte-identical across runs.
    RunResult again = run_cli("optimize --tol 1e-12 --json");
    CHECK(r.output == again.output);
}

TEST_CASE("report subcommand emits fixed csv columns") {
    RunResult r = run_cli("report --only C6 --csv");
    CHECK(r.exit_code == 0);
    CHECK(r.output.rfind("id,expected,observed,status,millis\n", 0) == 0);
    CHECK(r.output.find("C6,") != std::string::npos);
    CHECK(r.output.find(",PASS,") != std::string::npos);

    RunResult t = run_cli("report --only C6");
    CHECK(t.exit_code == 0);
    CHECK(t.output.find("[PASS] C6") != std::string::npos);
}

TEST_CASE("usage errors exit with 1") {
    CHECK(run_cli("").exit_code != 0);
    CHECK(run_cli("sum-bound").exit_code != 0);
    CHECK(run_cli("construct --which nonsense --n 4 --k 3").exit_code == 1);
}
