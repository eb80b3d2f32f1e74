#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "gordon/backlund.hpp"
#include "gordon/families.hpp"

using namespace gordon;

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

ScalarField difference(const ScalarField& a, const ScalarField& b) {
    return combine(a, b, [](double u, double v) { return u - v; });
}

Grid2D sqrt2_grid(double h) {
    const auto r = recommended_rect(FamilyId::W_SQRT2);
    return grid_with_spacing(r.x0, r.x1, r.y0, r.y1, h);
}

}  // namespace

TEST(Backlund, PrintedPairsSatisfyTheSystem) {
    const auto g = sqrt2_grid(1.0 / 400);
    const auto pair = make_backlund_pair(eval_scalar(FamilyId::W_SQRT2, g), eval_scalar(FamilyId::THETA_SQRT2, g));
    const auto r = backlund_residuals(pair);
    EXPECT_LT(sup_norm(r.r1).sup, 1e-3);
    EXPECT_LT(sup_norm(r.r2).sup, 1e-3);
}

TEST(Backlund, PairGridMismatchThrows) {
    const auto a = eval_scalar(FamilyId::W_SQRT2, sqrt2_grid(0.01));
    const auto b = eval_scalar(FamilyId::THETA_SQRT2, sqrt2_grid(0.02));
    EXPECT_THROW(make_backlund_pair(a, b), std::invalid_argument);
}

TEST(Backlund, ThetaToWReproducesPrintedW) {
    const auto g = sqrt2_grid(1.0 / 100);
    const auto w = theta_to_w(FieldSource::analytic(scalar_formula(FamilyId::THETA_SQRT2)), g, 0.0);
    const auto err = sup_norm(difference(w, eval_scalar(FamilyId::W_SQRT2, g)));
    EXPECT_EQ(err.count, g.size());
    EXPECT_LT(err.sup, 1e-9);
}

TEST(Backlund, MarchIsFourthOrderInTheSubsteps) {
    const auto g = sqrt2_grid(1.0 / 20);
    const auto exact = eval_scalar(FamilyId::W_SQRT2, g);
    const auto src = FieldSource::analytic(scalar_formula(FamilyId::THETA_SQRT2));
    MarchOptions coarse;
    coarse.substeps = 1;
    MarchOptions fine;
    fine.substeps = 2;
    const double e1 = sup_norm(difference(theta_to_w(src, g, 0.0, coarse), exact)).sup;
    const double e2 = sup_norm(difference(theta_to_w(src, g, 0.0, fine), exact)).sup;
    EXPECT_GE(e1 / e2, 12.0);
}

TEST(Backlund, RoundTripThroughSampledFields) {
    const auto g = sqrt2_grid(1.0 / 400);
    const auto w = eval_scalar(FamilyId::W_SQRT2, g);
    const auto theta = w_to_theta(FieldSource::analytic(scalar_formula(FamilyId::W_SQRT2)), g, 0.0);
    const auto back = theta_to_w(theta, 0.0);
    EXPECT_LT(sup_norm(difference(back, w)).sup, 5e-4);
    EXPECT_LT(sup_norm(difference(theta, eval_scalar(FamilyId::THETA_SQRT2, g))).sup, 1e-6);
}

TEST(Backlund, AnchorMustBeAGridNode) {
    const auto g = grid_with_spacing(0.1, 0.5, -0.2, 0.2, 0.05);
    const auto src = FieldSource::analytic(scalar_formula(FamilyId::THETA_SQRT2));
    EXPECT_THROW(theta_to_w(src, g, 0.0), std::invalid_argument);
    MarchOptions opt;
    opt.anchor_x = 0.3;
    EXPECT_NO_THROW(theta_to_w(src, g, 0.0, opt));
}

// Given w, the system for θ is compatible for every seed: each θ00 yields a
// sine-Gordon partner, and the scan can only rank them by discretization error.
TEST(Backlund, EverySeedGivesAPartner) {
    const auto g = sqrt2_grid(1.0 / 100);
    const auto w = eval_scalar(FamilyId::W_SQRT2, g);
    const auto src = FieldSource::analytic(scalar_formula(FamilyId::W_SQRT2));
    const std::vector<double> seeds{-0.5, 0.0, 0.5, 1.0};
    double best = std::numeric_limits<double>::infinity();
    for (const double s : seeds) {
        const auto theta = w_to_theta(src, g, s);
        EXPECT_EQ(theta.valid_count(), g.size());
        const auto r = backlund_residuals(make_backlund_pair(w, theta));
        const double score = std::max(sup_norm(r.r1).sup, sup_norm(r.r2).sup);
        EXPECT_LT(score, 1e-2) << s;
        EXPECT_EQ(sign_probe(theta).sign, Sign::minus) << s;
        best = std::min(best, score);
    }
    const auto scan = scan_theta00(src, w, seeds);
    EXPECT_EQ(std::max(scan.sup_r1, scan.sup_r2), best);
    EXPECT_THROW(scan_theta00(FieldSource::sampled(w), w, {}), std::invalid_argument);
}

TEST(Backlund, OneSolitonSignConvention) {
    // With θ ≡ π/2 the system forces tanh(w/2) ∝ e^{−2x}; the e^{+2x} branch
    // solves sinh-Gordon but leaves r1 = 4 sinh w.
    const auto g = grid_with_spacing(0.3, 1.3, -0.5, 0.5, 1.0 / 200);
    const auto theta = eval_scalar(FamilyId::THETA_CONST_HALFPI, g);
    const auto minus = make_backlund_pair(eval_scalar(FamilyId::W_ONE_SOLITON, g, {{"exponent_sign", -1.0}}), theta);
    EXPECT_LT(sup_norm(backlund_residuals(minus).r1).sup, 1e-3);
    EXPECT_LT(sup_norm(backlund_residuals(minus).r2).sup, 1e-12);

    const auto g2 = grid_with_spacing(-1.3, -0.3, -0.5, 0.5, 1.0 / 200);
    const auto w_plus = eval_scalar(FamilyId::W_ONE_SOLITON, g2, {{"exponent_sign", 1.0}});
    const auto plus = make_backlund_pair(w_plus, eval_scalar(FamilyId::THETA_CONST_HALFPI, g2));
    const auto r1 = backlund_residuals(plus).r1;
    const auto expected = transform(w_plus, [](double v) { return 4 * std::sinh(v); });
    EXPECT_LT(sup_norm(difference(r1, expected)).sup, 1e-3);
}

// Independent quadrature oracle (adaptive Gauss–Kronrod in double precision)
// for the product-family closed form with θ = 2 arctan(2y sec 2x), K = −1/y.
TEST(Backlund, ProductClosedFormFrozenValues) {
    const auto g = grid_with_spacing(-0.3, 0.3, -0.3, 0.3, 1.0 / 400);
    ProductThetaData data{eval_scalar(FamilyId::THETA_EX2, g), std::vector<double>(g.ny()), 0.0};
    for (int j = 0; j < g.ny(); ++j) {
        data.K[j] = std::abs(g.y(j)) < 1e-12 ? std::nan("") : -1.0 / g.y(j);
    }
    const auto printed = closed_form_w_product(data, ProductFormula::printed);
    const auto rederived = closed_form_w_product(data, ProductFormula::rederived);
    struct Sample {
        double x, y, printed, rederived;
    };
    const Sample samples[] = {
        {0.1, 0.1, 0.9960021660895296, 0.19097052622917032},
        {0.2, -0.2, 0.4532864382636894, 1.341437589999801},
        {-0.3, 0.2, 0.04627298635403055, -2.1335319610701196},
        {0.0, 0.2, 1.21065858599584, -0.36912016016103166},
    };
    for (const auto& s : samples) {
        const int i = *g.column_at(s.x);
        const int j = *g.row_at(s.y);
        ASSERT_TRUE(printed.valid(i, j));
        ASSERT_TRUE(rederived.valid(i, j));
        EXPECT_NEAR(printed(i, j), s.printed, 1e-4) << s.x << "," << s.y;
        EXPECT_NEAR(rederived(i, j), s.rederived, 1e-4) << s.x << "," << s.y;
    }
    data.dF0 = 0.5;
    EXPECT_THROW(closed_form_w_product(data), std::invalid_argument);
}

TEST(Backlund, TanhClosedFormMatchesPrintedW) {
    const auto g = sqrt2_grid(1.0 / 400);
    TanhThetaData td{eval_scalar(FamilyId::THETA_SQRT2, g), std::vector<double>(g.nx()), 0.0};
    for (int i = 0; i < g.nx(); ++i) {
        td.c[i] = kSqrt2 * std::tanh(kSqrt2 * g.x(i));
    }
    const auto w = closed_form_w_tanh(td, 0.0);
    EXPECT_LT(sup_norm(difference(w, eval_scalar(FamilyId::W_SQRT2, g))).sup, 1e-4);
    const int i = *g.column_at(0.3);
    const int j = *g.row_at(0.1);
    EXPECT_NEAR(w(i, j), -0.2579376912312459, 1e-6);
}
