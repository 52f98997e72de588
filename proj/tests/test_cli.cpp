#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

// End-to-end exercises of the command-line binary: exit-code contract,
// report schema, and byte-level determinism of seeded reports.

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args, const std::string& env = "") {
    std::string cmd = env + " " + std::string(WEYLFLOW_CLI_PATH) + " " + args + " 2>/dev/null";
    RunResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    int status = pclose(pipe);
    REQUIRE(status != -1);
    r.exit_code = WEXITSTATUS(status);
    return r;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("verify writes a schema-conforming sorted report and exits 0") {
    auto r = run_cli("verify --suite all --json cli_all.json");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("failed: 0") != std::string::npos);

    auto doc = nlohmann::json::parse(slurp("cli_all.json"));
    REQUIRE(doc.is_array());
    CHECK(doc.size() >= 30);
    std::string prev;
    for (const auto& entry : doc) {
        REQUIRE(entry.contains("check_id"));
        REQUIRE(entry.contains("status"));
        REQUIRE(entry.contains("mode"));
        REQUIRE(entry.contains("seed"));
        REQUIRE(entry.contains("details"));
        CHECK(entry.size() == 5);
        CHECK(entry["status"] == "pass");
        CHECK((entry["mode"] == "symbolic" || entry["mode"] == "sampled"));
        std::string id = entry["check_id"];
        CHECK(prev <= id);
        prev = id;
        for (const auto& d : entry["details"]) {
            REQUIRE(d.contains("identity"));
            REQUIRE(d.contains("residual"));
            CHECK(d.size() == 2);
        }
    }
}

TEST_CASE("seeded reports are byte-identical across invocations") {
    auto a = run_cli("verify --suite relations --samples 5 --seed 9 --json cli_seed_a.json");
    auto b = run_cli("verify --suite relations --samples 5 --seed 9 --json cli_seed_b.json");
    CHECK(a.exit_code == 0);
    CHECK(b.exit_code == 0);
    CHECK(slurp("cli_seed_a.json") == slurp("cli_seed_b.json"));

    // The environment variable supplies the same default seed.
    auto c = run_cli("verify --suite relations --samples 5 --json cli_seed_c.json",
                     "WEYLFLOW_SEED=9");
    CHECK(c.exit_code == 0);
    CHECK(slurp("cli_seed_c.json") == slurp("cli_seed_a.json"));

    auto doc = nlohmann::json::parse(slurp("cli_seed_a.json"));
    int sampled = 0;
    for (const auto& entry : doc)
        if (entry["mode"] == "sampled") {
            ++sampled;
            CHECK(entry["seed"] == 9);
        }
    CHECK(sampled > 0);

    auto d = run_cli("verify --suite relations --samples 5 --seed 10 --json cli_seed_d.json");
    CHECK(d.exit_code == 0);
    CHECK(slurp("cli_seed_d.json") != slurp("cli_seed_a.json"));
}

TEST_CASE("plain mode records constraint-dependent failures and exits 1") {
    auto r = run_cli("verify --suite invariance --plain-mode --json cli_plain.json");
    CHECK(r.exit_code == 1);
    auto doc = nlohmann::json::parse(slurp("cli_plain.json"));
    int fails = 0;
    for (const auto& entry : doc)
        if (entry["status"] == "fail") ++fails;
    CHECK(fails > 0);

    CHECK(run_cli("verify --suite integrals --plain-mode").exit_code == 1);
    CHECK(run_cli("verify --suite hamiltonian --plain-mode").exit_code == 0);
}

TEST_CASE("integrate exit codes cover completion, domain errors and blowup") {
    auto ok = run_cli("integrate --system autonomous --alpha 1/6,1/6,1/6,1/6,1/6 "
                      "--init 1,1,1,1,1,1,1 --t0 0 --t1 1 --out cli_run.csv");
    CHECK(ok.exit_code == 0);
    CHECK(ok.out.find("termination: completed") != std::string::npos);
    CHECK(ok.out.find("drift f0-f1:") != std::string::npos);
    CHECK(slurp("cli_run.csv").rfind("t,f0,f1,f2,f3,f4,g1,g2\n", 0) == 0);

    auto piii = run_cli("integrate --system piii --alpha 1/6,1/6,1/6,1/6,1/6 "
                        "--init 1.1,0.4,0.9,1.7 --t0 1 --t1 2 --out cli_piii.csv");
    CHECK(piii.exit_code == 0);
    CHECK(piii.out.find("drift") == std::string::npos);
    CHECK(slurp("cli_piii.csv").rfind("T,x,y,z,w\n", 0) == 0);

    CHECK(run_cli("integrate --system piii --alpha 1/6,1/6,1/6,1/6,1/6 "
                  "--init 1,1,1,1 --t0 -1 --t1 1 --out cli_bad.csv")
              .exit_code == 2);
    CHECK(run_cli("integrate --system autonomous --alpha 1/6,1/6,1/6,1/6,1/7 "
                  "--init 1,1,1,1,1,1,1 --t0 0 --t1 1 --out cli_bad.csv")
              .exit_code == 2);
    CHECK(run_cli("integrate --system autonomous --alpha 1/6,1/6,1/6,1/6,1/7 "
                  "--init 1,1,1,1,1,1,1 --t0 0 --t1 0.1 --out cli_bad.csv "
                  "--allow-unnormalized")
              .exit_code == 0);
    CHECK(run_cli("integrate --system autonomous --alpha 1,0,0,0,0 "
                  "--init 1,1,1,1,1,1,1 --t0 0 --t1 0.2 --out cli_bad.csv")
              .exit_code == 0);
    CHECK(run_cli("integrate --system piii --alpha 1/6,1/6,1/6,1/6,1/6 "
                  "--init 1,1,1,1,1,1,1 --t0 1 --t1 2 --out cli_bad.csv")
              .exit_code == 2);
    CHECK(run_cli("integrate --system autonomous --alpha oops --init 1,1,1,1,1,1,1 "
                  "--t0 0 --t1 1 --out cli_bad.csv")
              .exit_code == 2);

    // A generic positive start reaches a movable pole inside [0, 1].
    auto blown = run_cli("integrate --system autonomous --alpha 1/6,1/6,1/6,1/6,1/6 "
                         "--init 1.5,0.8,1.2,0.6,1.9,1.1,0.7 --t0 0 --t1 1 --out cli_blow.csv");
    CHECK(blown.exit_code == 3);
    CHECK(blown.out.find("termination: blowup") != std::string::npos);
}

TEST_CASE("orbit prints exact images and names pole divisors") {
    auto img = run_cli("orbit --word s1 --alpha 1/6,1/6,1/6,1/6,1/6 --point 1,1,1,1 --time 1");
    CHECK(img.exit_code == 0);
    CHECK(img.out.find("point: 7/6,1,1,1\n") != std::string::npos);
    CHECK(img.out.find("alpha: 1/6,-1/6,1/3,1/6,1/6\n") != std::string::npos);
    CHECK(img.out.find("time: 1\n") != std::string::npos);

    auto echo =
        run_cli("orbit --word \"s1 s1\" --alpha 1/6,1/6,1/6,1/6,1/6 --point 1,1,1,1 --time 1");
    CHECK(echo.exit_code == 0);
    CHECK(echo.out.find("point: 1,1,1,1\n") != std::string::npos);
    CHECK(echo.out.find("alpha: 1/6,1/6,1/6,1/6,1/6\n") != std::string::npos);

    auto pole =
        run_cli("orbit --word s1 --alpha 1/6,1/6,1/6,1/6,1/6 --point 1,0,1,1 --time 1");
    CHECK(pole.exit_code == 1);
    CHECK(pole.out.find("pole at divisor: y") != std::string::npos);

    // Decimal input switches to the binary64 path.
    auto fl = run_cli("orbit --word s1 --alpha 1/6,1/6,1/6,1/6,1/6 --point 1.0,1,1,1 --time 1");
    CHECK(fl.exit_code == 0);
    CHECK(fl.out.find("point: 1.1666666666666667,1,1,1\n") != std::string::npos);

    // The time symbol participates in autonomous words too.
    auto seven = run_cli(
        "orbit --word s2 --alpha 1/6,1/6,1/6,1/6,1/6 --point 1,1,1,1,1,1,1 --time 0");
    CHECK(seven.exit_code == 0);

    CHECK(run_cli("orbit --word s7 --alpha 1/6,1/6,1/6,1/6,1/6 --point 1,1,1,1 --time 1")
              .exit_code == 2);
    CHECK(run_cli("orbit --word s1 --alpha 1/6,1/6,1/6,1/6,1/6 --point 1,1,1 --time 1")
              .exit_code == 2);
}

TEST_CASE("relations exit codes distinguish pass, failure and parse error") {
    CHECK(run_cli("relations --word \"s0 s2 s0 s2 s0 s2\" --samples 20 --seed 42").exit_code == 0);
    CHECK(run_cli("relations --word \"s0 s2\"").exit_code == 1);
    CHECK(run_cli("relations --word \"pi3 s0 pi3 s3\" --samples 20").exit_code == 0);
    CHECK(run_cli("relations --word \"s0 s2 s0 s2 s0 s2\" --symbolic").exit_code == 0);
    CHECK(run_cli("relations --word \"s9 s1\"").exit_code == 2);
    CHECK(run_cli("relations --word \"pi1 pi1\" --variant autonomous").exit_code == 2);
    CHECK(run_cli("relations --word \"pi1 pi1\" --variant piii").exit_code == 0);
}

TEST_CASE("map-trajectory reports discrepancy and honors the tolerance") {
    auto ok = run_cli("map-trajectory --word s1 --alpha 1/10,1/10,3/10,1/10,1/10 "
                      "--init 1.1,0.4,0.9,1.7 --t0 1 --t1 2 --out cli_img.csv "
                      "--json cli_mt.json");
    CHECK(ok.exit_code == 0);
    CHECK(slurp("cli_img.csv").rfind("T,x,y,z,w\n", 0) == 0);
    auto doc = nlohmann::json::parse(slurp("cli_mt.json"));
    REQUIRE(doc.is_array());
    CHECK(doc[0]["check_id"] == "map_trajectory.piii.s1");
    CHECK(doc[0]["status"] == "pass");

    // An unreachable tolerance flips the exit code, not the measurement.
    auto tight = run_cli("map-trajectory --word s1 --alpha 1/10,1/10,3/10,1/10,1/10 "
                         "--init 1.1,0.4,0.9,1.7 --t0 1 --t1 2 --tol 1e-20");
    CHECK(tight.exit_code == 1);

    // Time reversal: the image of a T in [1,2] run lives on [-2,-1].
    auto rev = run_cli("map-trajectory --word pi1 --alpha 1/10,1/10,3/10,1/10,1/10 "
                       "--init 1.1,0.4,0.9,1.7 --t0 1 --t1 2 --out cli_rev.csv");
    CHECK(rev.exit_code == 0);
    CHECK(slurp("cli_rev.csv").find("\n-1,") != std::string::npos);

    CHECK(run_cli("map-trajectory --word s1 --alpha 1/10,1/10,3/10,1/10,1/10 "
                  "--init 1.1,0.4,0.9 --t0 1 --t1 2")
              .exit_code == 2);
}

TEST_CASE("usage errors and help follow the exit contract") {
    CHECK(run_cli("").exit_code == 2);
    CHECK(run_cli("frobnicate").exit_code == 2);
    CHECK(run_cli("verify --suite nonsense").exit_code == 2);
    CHECK(run_cli("--help").exit_code == 0);
    CHECK(run_cli("verify --suite all", "WEYLFLOW_SEED=oops").exit_code == 2);
}
