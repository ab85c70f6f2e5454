#include "doctest.h"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "rcrt/serialization.hpp"

using namespace rcrt;

namespace {

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run_raw(const std::string& cmd) {
    RunResult r;
    FILE* pipe = popen((cmd + " 2>/dev/null").c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) r.out.append(buf, n);
    int status = pclose(pipe);
    r.code = WEXITSTATUS(status);
    return r;
}

RunResult run(const std::string& args) { return run_raw(std::string(RCRT_CLI_PATH) + " " + args); }

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("flat design reports") {
    auto r = run("design-flat --L 3 --rho 10000");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "gammas = 101 102 103"));
    CHECK(contains(r.out, "m = 1"));

    r = run("design-flat --L 4 --rho 10000 --m-max 100");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "gammas = 21 22 23 25"));
    CHECK(contains(r.out, "m = 4"));
    CHECK(contains(r.out, "tau = 1"));

    r = run("design-flat --L 2 --rho 3");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "gammas = 3 4"));
}

TEST_CASE("baseline comparison output") {
    auto r = run("design-flat --L 3 --n-th 20000 --m-max 55 --compare-baselines");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "gammas = 19 20 21"));
    CHECK(contains(r.out, "m = 55/21"));
    CHECK(contains(r.out, "baseline_prime_gammas = 17 23 29"));
    CHECK(contains(r.out, "baseline_prime_m = 55/29"));
    CHECK(contains(r.out, "baseline_pow2_gammas = 31 32 33"));
    CHECK(contains(r.out, "gain_vs_prime = 29/21"));
    CHECK(contains(r.out, "gain_vs_pow2 = 11/7"));
}

TEST_CASE("layered design reports") {
    auto r = run("design-layered --rho 150 --K 3");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "gamma1 = 153"));
    CHECK(contains(r.out, "gamma2 = 158"));
    CHECK(contains(r.out, "chain = 5 3 2 1"));
    CHECK(contains(r.out, "kstar_exact = 10"));

    r = run("design-layered --rho 150 --K 1");
    CHECK(contains(r.out, "gamma1 = 151"));
    CHECK(contains(r.out, "gamma2 = 153"));

    r = run("design-layered --rho 2 --K 1");
    CHECK(contains(r.out, "gamma1 = 3"));
    CHECK(contains(r.out, "gamma2 = 5"));

    r = run("design-layered --rho 150 --K 4 --d 1");
    CHECK(contains(r.out, "gamma1 = 157"));
    CHECK(contains(r.out, "gamma2 = 165"));
    CHECK(contains(r.out, "zeta = 19"));

    r = run("design-layered --gamma1 34 --gamma2 47 --emit-scaling");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "chain = 13 8 5 3 2 1"));
    CHECK(contains(r.out, "P2/P1 = 47/34"));
}

TEST_CASE("json output round-trips") {
    auto r = run("design-flat --L 3 --rho 10000 --m-max 100 --format json");
    CHECK(r.code == 0);
    auto parsed = design_from_json(r.out);
    CHECK(std::get<ModuliSet>(parsed) == design_flat(3, Rat(10000), Rat(100)));

    r = run("design-layered --n-th 1800 --m-max 120 --K 2 --format json");
    CHECK(r.code == 0);
    CHECK(std::get<LayeredDesign>(design_from_json(r.out)) ==
          design_layered(Rat(15), 2, Rat(120)));
}

TEST_CASE("design files and staircase emission") {
    const std::string design_path = "/tmp/rcrt_cli_design.json";
    const std::string stair_path = "/tmp/rcrt_cli_stair.csv";
    auto r = run("design-layered --n-th 1800 --m-max 120 --K 2 --out " + design_path +
                 " --emit-staircase " + stair_path);
    CHECK(r.code == 0);
    CHECK(std::get<LayeredDesign>(load_design(design_path)) ==
          design_layered(Rat(15), 2, Rat(120)));

    auto stair = run_raw("cat " + stair_path);
    CHECK(contains(stair.out, "x,tolerance"));
    CHECK(contains(stair.out, "0,6.315789473684"));
    CHECK(contains(stair.out, "480,1.578947368421"));
    // header + (boundary, midpoint) per layer
    CHECK(std::count(stair.out.begin(), stair.out.end(), '\n') == 7);

    auto pred = run("predict --design-file " + design_path +
                    " --prior rayleigh:360 --noise gaussian:1");
    CHECK(pred.code == 0);
    CHECK(contains(pred.out, "eta = 0.989492"));

    auto noiseless = run("predict --design-file " + design_path + " --prior uniform:900");
    CHECK(noiseless.code == 0);
    CHECK(contains(noiseless.out, "eta = 1"));

    std::remove(stair_path.c_str());
    std::remove(design_path.c_str());
}

TEST_CASE("simulation rows are deterministic") {
    const std::string design_path = "/tmp/rcrt_cli_sim.json";
    REQUIRE(run("design-layered --rho 15 --m-max 120 --K 2 --out " + design_path).code == 0);

    std::string cmd = "simulate --design-file " + design_path +
                      " --prior rayleigh:360 --sweep sigma:0:2:1 --trials 500 --seed 9";
    auto a = run(cmd);
    auto b = run(cmd);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(contains(a.out, "param,value,trials,successes,success_rate,rrse,eta,rejected"));
    CHECK(contains(a.out, "sigma,0,500,500,1,"));
    CHECK(std::count(a.out.begin(), a.out.end(), '\n') == 4);

    auto c = run("simulate --design-file " + design_path +
                 " --prior rayleigh:360 --noise uniform:1 --trials 200 --seed 9 --format json");
    CHECK(c.code == 0);
    CHECK(contains(c.out, "\"param\": \"epsilon\""));
    CHECK(contains(c.out, "\"trials\": 200"));

    // RCRT_SEED env supplies the default seed.
    std::string env_cmd = "RCRT_SEED=77 " + std::string(RCRT_CLI_PATH) +
                          " simulate --design-file " + design_path +
                          " --prior rayleigh:360 --noise gaussian:1 --trials 300";
    auto e1 = run_raw(env_cmd);
    auto e2 = run_raw(env_cmd);
    CHECK(e1.code == 0);
    CHECK(e1.out == e2.out);
    auto bad_env = run_raw("RCRT_SEED=abc " + std::string(RCRT_CLI_PATH) +
                           " simulate --design-file " + design_path +
                           " --prior rayleigh:360 --noise gaussian:1 --trials 10");
    CHECK(bad_env.code == 2);

    std::remove(design_path.c_str());
}

TEST_CASE("oracle suites") {
    auto r = run("oracle --suite identities --rho-max 40 --K-max 3");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "cases ok"));

    r = run("oracle --suite flat --rho-max 20");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "L2:"));

    r = run("oracle --suite layered --rho-max 20 --K-max 2");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "worst gamma2 ratio vs exhaustive: 1"));

    CHECK(run("oracle --suite bogus").code == 2);
}

TEST_CASE("exit codes") {
    CHECK(run("--help").code == 0);
    CHECK(run("design-flat --help").code == 0);
    CHECK(run("").code == 2);                                  // subcommand required
    CHECK(run("design-flat --L 3").code == 2);                 // no range given
    CHECK(run("design-flat --L 5 --rho 100").code == 2);       // needs --heuristic
    CHECK(run("design-flat --L 3 --rho 0.5").code == 2);       // rho <= 1
    CHECK(run("design-layered --rho 150").code == 2);          // missing K
    CHECK(run("design-layered --gamma1 6 --gamma2 9").code == 2);  // not coprime
    CHECK(run("design-layered --rho 120 --K 2 --m 4").code == 2);  // --m is pair-only
    CHECK(run("design-layered --gamma1 34 --gamma2 47 --d 2").code == 2);  // --d is design-only
    CHECK(run("predict --design-file /tmp/rcrt_cli_missing.json --prior uniform:1").code == 2);

    // Full-range decoding beyond the search bound maps to the infeasible code.
    const std::string big_path = "/tmp/rcrt_cli_big.json";
    REQUIRE(run("design-flat --L 4 --rho 2000000000 --out " + big_path).code == 0);
    auto r = run("simulate --design-file " + big_path +
                 " --prior uniform:100 --noise none --trials 1 --seed 1");
    CHECK(r.code == 3);
    std::remove(big_path.c_str());
}
