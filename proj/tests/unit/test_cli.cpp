// Drives the gordon binary and checks the exit-code contract and outputs.
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "commands.hpp"
#include "gordon/field_io.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(GORDON_CLI_PATH) + " " + args + " 2>&1";
    Run r{-1, {}};
    FILE* pipe = ::popen(cmd.c_str(), "r");
    if (pipe == nullptr) {
        return r;
    }
    char buf[4096];
    while (std::fgets(buf, sizeof buf, pipe) != nullptr) {
        r.out += buf;
    }
    const int status = ::pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / "gordon_cli_test";
    fs::create_directories(dir);
    return dir / name;
}

int count_lines(const std::string& s) {
    int n = 0;
    for (const char c : s) {
        n += c == '\n';
    }
    return n;
}

}  // namespace

TEST(Cli, ListPrintsThirteenLines) {
    const auto r = run("families list");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(count_lines(r.out), 13);
    EXPECT_NE(r.out.find("W_TAN_SPECIAL"), std::string::npos);
}

TEST(Cli, ListJsonIsMachineReadable) {
    const auto r = run("families list --json");
    ASSERT_EQ(r.code, 0);
    const auto j = nlohmann::json::parse(r.out);
    ASSERT_EQ(j.size(), 13u);
    EXPECT_EQ(j[4]["id"], "W_EX2");
    EXPECT_EQ(j[4]["rect"].size(), 4u);
}

TEST(Cli, UnknownSubcommandPrintsUsage) {
    const auto r = run("frobnicate");
    EXPECT_EQ(r.code, gordon::cli::kExitInvalidConfig);
    EXPECT_NE(r.out.find("Usage"), std::string::npos);
}

TEST(Cli, InvalidConfigExitsTwo) {
    EXPECT_EQ(run("verify --family NOT_A_FAMILY").code, 2);
    EXPECT_EQ(run("verify --family W_EX2 --param bogus=1").code, 2);
    EXPECT_EQ(run("verify --family W_EX2 --tol -1").code, 2);
    EXPECT_EQ(run("backlund run --direction t2w --family W_EX2 --out x.csv").code, 2);
    EXPECT_EQ(run("harmonic verify --u /nonexistent.csv").code, 2);
    const auto bad = scratch("bad.json");
    std::ofstream(bad) << "{ not json";
    EXPECT_EQ(run("--config " + bad.string() + " families list").code, 2);
}

TEST(Cli, VerifyPassAndFail) {
    const auto json = scratch("verify.json");
    const auto ok = run("verify --family W_TAN_SPECIAL --no-convergence --json " + json.string());
    EXPECT_EQ(ok.code, 0) << ok.out;
    std::ifstream in(json);
    const auto j = nlohmann::json::parse(in);
    EXPECT_EQ(j["pass"], true);
    EXPECT_EQ(j["checks"][0]["name"], "sinh_gordon_residual");

    const auto bad = run("verify --family W_TAN_SPECIAL --no-convergence --tol 1e-12");
    EXPECT_EQ(bad.code, 1) << bad.out;
}

TEST(Cli, ToleranceFromEnvironment) {
    EXPECT_EQ(run("verify --family W_TAN_SPECIAL --no-convergence").code, 0);
    ::setenv("GORDON_TOL", "1e-12", 1);
    const int strict = run("verify --family W_TAN_SPECIAL --no-convergence").code;
    ::setenv("GORDON_TOL", "zero", 1);
    const int malformed = run("verify --family W_TAN_SPECIAL --no-convergence").code;
    ::unsetenv("GORDON_TOL");
    EXPECT_EQ(strict, 1);
    EXPECT_EQ(malformed, 2);
}

TEST(Cli, ConfigFileWithFlagOverride) {
    const auto cfg = scratch("cfg.json");
    std::ofstream(cfg) << R"({"verify": {"family": "W_TAN_SPECIAL", "no-convergence": true, "tol": 1e-12}})";
    EXPECT_EQ(run("--config " + cfg.string() + " verify").code, 1);
    EXPECT_EQ(run("--config " + cfg.string() + " verify --tol 1e-3").code, 0);
}

TEST(Cli, EvalWritesFieldAndSidecar) {
    const auto out = scratch("theta.csv");
    const auto r = run("families eval --family THETA_EX2 --grid '{\"x0\":-0.1,\"x1\":0.1,\"y0\":-0.1,\"y1\":0.1,\"nx\":21,\"ny\":21}' --out " +
                       out.string());
    ASSERT_EQ(r.code, 0) << r.out;
    const auto f = gordon::read_field_csv(out);
    EXPECT_EQ(f.grid.nx(), 21);
    EXPECT_EQ(f.valid_count(), 441u);
}

TEST(Cli, BacklundRunWritesReport) {
    const auto out = scratch("w.csv");
    const auto r = run("backlund run --direction t2w --family THETA_SQRT2 --out " + out.string());
    ASSERT_EQ(r.code, 0) << r.out;
    std::ifstream in(out.string() + ".report.json");
    const auto j = nlohmann::json::parse(in);
    EXPECT_EQ(j["sign_probe"]["sigma"], "-1");
    EXPECT_EQ(j["checks"][0]["name"], "backlund_r1");
}

TEST(Cli, HarmonicBuildThenVerify) {
    const auto prefix = scratch("sqrt2").string();
    const auto b = run("harmonic build --pair THETA_SQRT2 --S0 0.5 --out " + prefix);
    ASSERT_EQ(b.code, 0) << b.out;
    for (const auto* suffix : {".u.csv", ".I1.csv", ".I2.csv", ".I3.csv", ".I4.csv", ".report.json"}) {
        EXPECT_TRUE(fs::exists(prefix + suffix)) << suffix;
    }
    const auto w = scratch("w_sqrt2.csv");
    ASSERT_EQ(run("families eval --family W_SQRT2 --out " + w.string()).code, 0);
    const auto v = run("harmonic verify --u " + prefix + ".u.csv --w " + w.string());
    EXPECT_EQ(v.code, 0) << v.out;
    EXPECT_EQ(run("harmonic build --pair U_SQRT2 --out " + prefix).code, 2);
}

TEST(Cli, AcceptanceQuickSingleCriterion) {
    const auto json = scratch("acc.json");
    const auto r = run("acceptance --quick --criterion 3 --json " + json.string());
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("criterion 3: PASS"), std::string::npos);
    std::ifstream in(json);
    EXPECT_NO_THROW(nlohmann::json::parse(in));
}
