#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>

#include <gtest/gtest.h>

#include "gordon/families.hpp"
#include "gordon/field_io.hpp"
#include "gordon/report.hpp"
#include "gordon/verify.hpp"

using namespace gordon;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / "gordon_unit";
    fs::create_directories(dir);
    return dir / name;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST(FieldIo, ScalarRoundTripIsBitExact) {
    const auto g = grid_with_spacing(-0.15, 0.15, -0.15, 0.15, 0.01);
    auto f = eval_scalar(FamilyId::W_EX2, g);
    f.invalidate(3, 4);
    const auto path = scratch("w.csv");
    write_field_csv(f, path);
    EXPECT_TRUE(fs::exists(grid_sidecar_path(path)));
    const auto back = read_field_csv(path);
    ASSERT_TRUE(back.grid == g);
    EXPECT_EQ(back.mask, f.mask);
    for (std::size_t k = 0; k < g.size(); ++k) {
        if (f.mask[k]) {
            ASSERT_EQ(back.values[k], f.values[k]);
        }
    }
}

TEST(FieldIo, ComplexRoundTripIsBitExact) {
    const auto g = grid_with_spacing(-0.4, 0.4, -0.4, 0.4, 0.05);
    const auto u = eval_map(FamilyId::U_SQRT2, g);
    const auto path = scratch("u.csv");
    write_complex_csv(u, path);
    const auto back = read_complex_csv(path);
    EXPECT_EQ(back.re, u.re);
    EXPECT_EQ(back.im, u.im);
    EXPECT_EQ(back.mask, u.mask);
}

TEST(FieldIo, GridJsonRoundTrip) {
    const auto g = make_grid(-1.0, 2.0, 0.5, 0.75, 31, 11);
    EXPECT_TRUE(grid_from_json(grid_to_json(g)) == g);
    EXPECT_THROW(grid_from_json(nlohmann::json{{"x0", 0.0}}), std::invalid_argument);
}

TEST(FieldIo, MalformedInputIsReported) {
    const auto path = scratch("bad.csv");
    std::ofstream(path) << "x,y,value,valid\n1,2\n";
    write_text_atomic(grid_sidecar_path(path), grid_to_json(make_grid(0, 1, 0, 1, 5, 5)).dump());
    EXPECT_THROW(read_field_csv(path), std::runtime_error);
    EXPECT_THROW(read_field_csv(scratch("missing.csv")), std::runtime_error);
}

TEST(FieldIo, AtomicWriteLeavesNoTemporary) {
    const auto path = scratch("atomic.txt");
    write_text_atomic(path, "first");
    write_text_atomic(path, "second");
    EXPECT_EQ(slurp(path), "second");
    for (const auto& entry : fs::directory_iterator(path.parent_path())) {
        EXPECT_EQ(entry.path().extension() == ".tmp", false) << entry.path();
    }
}

TEST(Report, PassIsSupNotAboveTolerance) {
    EXPECT_TRUE(make_check("a", "", 1e-3, 10, 1e-3).pass);
    EXPECT_FALSE(make_check("a", "", 1.0000001e-3, 10, 1e-3).pass);
    EXPECT_FALSE(make_check("a", "", std::numeric_limits<double>::quiet_NaN(), 10, 1e-3).pass);
}

TEST(Report, OnlyGatingChecksDecide) {
    VerificationReport r;
    r.add(make_check("ok", "", 0.1, 1, 1.0));
    auto info = make_check("info", "", 5.0, 1, 1.0);
    info.gating = false;
    r.add(info);
    EXPECT_TRUE(r.all_pass());
    r.add(make_check("bad", "", 2.0, 1, 1.0));
    EXPECT_FALSE(r.all_pass());
}

TEST(Report, JsonIsDeterministicAndHandlesNonFinite) {
    VerificationReport r;
    r.subject = "s";
    auto c = make_check("inf", "anchor", std::numeric_limits<double>::infinity(), 0, 1e-3, make_grid(0, 1, 0, 1, 5, 5));
    c.conventions["sigma"] = "-1";
    c.convergence_ratio = 4.01;
    r.add(c);
    const auto j = r.to_json();
    EXPECT_TRUE(j["checks"][0]["sup"].is_string());
    EXPECT_EQ(j["checks"][0]["conventions"]["sigma"], "-1");
    EXPECT_EQ(j.dump(), r.to_json().dump());
    const auto path = scratch("report.json");
    write_report(r, path);
    EXPECT_EQ(nlohmann::json::parse(slurp(path)), j);
}

TEST(Verify, ToleranceFromEnvironment) {
    ::unsetenv("GORDON_TOL");
    EXPECT_EQ(tolerance_from_env(), kDefaultTolerance);
    ::setenv("GORDON_TOL", "2.5e-4", 1);
    EXPECT_EQ(tolerance_from_env(), 2.5e-4);
    ::setenv("GORDON_TOL", "abc", 1);
    EXPECT_THROW(tolerance_from_env(), std::invalid_argument);
    ::setenv("GORDON_TOL", "-1", 1);
    EXPECT_THROW(tolerance_from_env(), std::invalid_argument);
    ::unsetenv("GORDON_TOL");
}

TEST(Verify, RefinedCheckReportsOrderTwo) {
    const Rect rect{0.0, 1.0, 0.0, 1.0};
    const auto norm = [](const Grid2D& g) { return FieldNorm{g.hx() * g.hx(), g.size()}; };
    const auto checks = refined_check("fake", "", rect, 0.05, 1e-2, norm, true);
    ASSERT_EQ(checks.size(), 2u);
    EXPECT_TRUE(checks[0].pass);
    ASSERT_TRUE(checks[0].convergence_ratio.has_value());
    EXPECT_NEAR(*checks[0].convergence_ratio, 4.0, 1e-9);
    EXPECT_EQ(checks[1].name, "fake/order2");
    EXPECT_TRUE(checks[1].pass);
}

TEST(Verify, FamiliesPassTheirDesignatedChecks) {
    for (const auto id : {FamilyId::W_TAN_SPECIAL, FamilyId::THETA_EX2, FamilyId::U_EX2, FamilyId::METRIC_SECTION3}) {
        VerifyOptions opt;
        opt.convergence = false;
        const auto r = verify_family(id, opt);
        EXPECT_TRUE(r.all_pass()) << to_string(id) << "\n" << r.to_json().dump(2);
    }
}
