#include <cmath>

#include <gtest/gtest.h>

#include "gordon/families.hpp"
#include "gordon/profiles.hpp"
#include "gordon/rk4.hpp"

using namespace gordon;

namespace {

AxisSamples axis(double t0, double t1, double h) {
    return {t0, h, static_cast<int>(std::lround((t1 - t0) / h)) + 1};
}

double sech(double t) { return 1.0 / std::cosh(t); }

}  // namespace

TEST(Rk4, FourthOrderOnHarmonicOscillator) {
    auto error = [](int steps) {
        const auto f = [](double, const std::array<double, 2>& y) { return std::array<double, 2>{y[1], -y[0]}; };
        std::array<double, 2> y{1.0, 0.0};
        const double h = 2.0 / steps;
        for (int k = 0; k < steps; ++k) {
            y = rk4_step(f, k * h, y, h);
        }
        return std::abs(y[0] - std::cos(2.0));
    };
    EXPECT_GE(error(20) / error(40), 12.0);
    EXPECT_GE(error(40) / error(80), 12.0);
}

TEST(Profiles, SechOracle) {
    // (p')² = −p⁴ + 4p² with p(0) = 2 is solved by p = 2 sech 2t.
    const QuarticProfile spec{-1, 4, 0, 2, 0, Axis::x};
    const auto prof = integrate_profile(spec, axis(-1.0, 1.0, 1.0 / 400));
    double err = 0.0;
    for (int k = 0; k < prof.axis.n; ++k) {
        ASSERT_TRUE(prof.valid[k]);
        err = std::max(err, std::abs(prof.p[k] - 2 * sech(2 * prof.axis.t(k))));
    }
    EXPECT_LT(err, 1e-8);
    EXPECT_LT(first_integral_drift(spec, prof), 1e-9);
    // P is the antiderivative: ∫₀ᵗ 2 sech 2s ds = 2 arctan(tanh t).
    const int k = prof.axis.n - 1;
    EXPECT_NEAR(prof.P[k], 2 * std::atan(std::tanh(1.0)), 1e-6);
}

TEST(Profiles, RequiresOriginOnAxis) {
    const QuarticProfile spec{-1, 4, 0, 2, 0, Axis::x};
    EXPECT_THROW(integrate_profile(spec, AxisSamples{0.1, 0.1, 10}), std::invalid_argument);
}

TEST(Profiles, RejectsInitialDataOffTheFirstIntegral) {
    const QuarticProfile spec{-1, 4, 0, 2, 0.5, Axis::x};
    EXPECT_THROW(spec.validate(), std::invalid_argument);
}

TEST(Profiles, BlowUpIsMasked) {
    // p' = p² through p(0) = 1 reaches a pole at t = 1.
    const QuarticProfile spec{1, 0, 0, 1, 1, Axis::x};
    const auto prof = integrate_profile(spec, axis(-0.5, 1.5, 0.01));
    const int pole = static_cast<int>(std::lround(1.5 / 0.01));
    EXPECT_TRUE(prof.valid[pole - 5]);
    EXPECT_FALSE(prof.valid[prof.axis.n - 1]);
    EXPECT_TRUE(prof.valid[0]);
}

TEST(Profiles, BreakdownGuardCatchesPoleCrossing) {
    // F = sec 2t: (F')² = 4F⁴ − 4F², pole at t = π/4, inside [0, 1].
    const QuarticProfile spec{4, -4, 0, 1, 0, Axis::x};
    const auto prof = integrate_profile(spec, axis(0.0, 1.0, 1.0 / 400));
    EXPECT_FALSE(prof.valid[prof.axis.n - 1]);
    EXPECT_LT(first_integral_drift(spec, prof), 1e-6);
}

TEST(Profiles, TanConstraint) {
    EXPECT_TRUE((TanFamilyConstants{5, 4, 8}.satisfies_constraint()));
    EXPECT_THROW(tan_family_profiles({4, 16, 20}, 0, 4, 0, 4), ConstraintViolation);
    EXPECT_THROW(tanh_family_profiles({-4, 4, 8}, 0, 2, 0, 2), ConstraintViolation);
}

TEST(Profiles, TanhCorollaryResolvedFormSatisfiesConstraint) {
    for (const double g : {0.3, 0.8, 1.0, 1.7}) {
        for (const double d : {0.2, 0.6, 1.0}) {
            const auto c = tanh_corollary_c(TanhCorollaryForm::resolved, g, d);
            const auto dd = tanh_corollary_d(TanhCorollaryForm::resolved, g, d);
            EXPECT_TRUE((TanhFamilyConstants{c.q2, c.q0, dd.q0}.satisfies_constraint()));
            EXPECT_DOUBLE_EQ(c.q0, 4 * g * g);
            EXPECT_DOUBLE_EQ(dd.q0, 4 * d * d);
        }
    }
    const auto c = tanh_corollary_c(TanhCorollaryForm::printed_text, 0.8, 0.6);
    const auto dd = tanh_corollary_d(TanhCorollaryForm::printed_text, 0.8, 0.6);
    EXPECT_FALSE((TanhFamilyConstants{c.q2, c.q0, dd.q0}.satisfies_constraint()));
}

TEST(Profiles, AssembledTanhThetaSolvesSineGordon) {
    const auto g = grid_with_spacing(-0.4, 0.4, -0.4, 0.4, 1.0 / 200);
    const auto pair = tanh_family_from_corollary(0.8, 0.6);
    const auto sp = integrate_pair(pair, g);
    const auto theta = assemble_tanh_family(sp.x, sp.y, g);
    const auto probe = sign_probe(theta);
    EXPECT_EQ(probe.sign, Sign::minus);
    EXPECT_LT(sup_norm(residual_sine_gordon(theta, Sign::minus)).sup, 1e-3);
}

TEST(Profiles, TanCorollaryAssemblesASinhGordonSolution) {
    const auto g = grid_with_spacing(-0.2, 0.2, -0.2, 0.2, 1.0 / 400);
    const auto sp = integrate_pair(tan_family_from_corollary(0.5, 0.5), g);
    const auto w = assemble_tan_family(sp.x, sp.y, g);
    EXPECT_GT(w.valid_count(), g.size() / 2);
    EXPECT_LT(sup_norm(residual_sinh_gordon(w)).sup, 1e-3);
}

TEST(Profiles, ConsistentTanhPhaseRange) {
    EXPECT_NEAR(consistent_tanh_phase(0, 1.6, 0, -1.2), std::atanh(-0.1), 1e-15);
    EXPECT_THROW(consistent_tanh_phase(0, 4, 0, 4), std::invalid_argument);
}
