#include <cmath>

#include <gtest/gtest.h>

#include "gordon/families.hpp"
#include "gordon/harmonic.hpp"

using namespace gordon;

namespace {

Grid2D rect_grid(FamilyId id, double h, const FamilyParams& p = {}) {
    const auto r = recommended_rect(id, p);
    return grid_with_spacing(r.x0, r.x1, r.y0, r.y1, h);
}

MetricSample poincare_metric(const Grid2D& g, double scale) {
    const auto inv = [scale](double, double y) { return scale / (y * y); };
    return sample_metric(g, inv, [](double, double) { return 0.0; }, inv);
}

double sup_deviation(const ScalarField& K, double target) {
    return sup_norm(transform(K, [target](double k) { return k - target; })).sup;
}

}  // namespace

// PPFD on the √2 pair with S(0,0) = ½, against nested adaptive quadrature of
// I1..I4 done independently in double precision.
TEST(Harmonic, PpfdFrozenValues) {
    const auto g = rect_grid(FamilyId::W_SQRT2, 1.0 / 400);
    const auto pair = make_backlund_pair(eval_scalar(FamilyId::W_SQRT2, g), eval_scalar(FamilyId::THETA_SQRT2, g));
    const auto hm = ppfd_construct(pair, 0.0, 0.5);
    const int i = *g.column_at(0.3);
    const int j = *g.row_at(0.1);
    const auto u = hm.u(i, j);
    EXPECT_NEAR(u.imag(), 0.4959827925459296, 1e-6);
    EXPECT_NEAR(u.real(), 0.3021720799436192, 1e-6);
    EXPECT_NEAR(hm.I1(i, j), 0.008833618833789832, 1e-6);
    EXPECT_NEAR(hm.I3(i, j), 0.3011049988872334, 1e-6);
    // The printed closed form is twice this construction.
    EXPECT_NEAR(map_formula(FamilyId::U_SQRT2)(0.3, 0.1).imag(), 0.9919655850918591, 1e-12);
    EXPECT_NEAR(hm.u(*g.column_at(0.0), *g.row_at(0.0)).imag(), 0.5, 0.0);
}

TEST(Harmonic, PpfdInputValidation) {
    const auto g = rect_grid(FamilyId::W_SQRT2, 1.0 / 50);
    const auto pair = make_backlund_pair(eval_scalar(FamilyId::W_SQRT2, g), eval_scalar(FamilyId::THETA_SQRT2, g));
    EXPECT_THROW(ppfd_construct(pair, 0.0, 0.0), std::invalid_argument);
    const auto off = grid_with_spacing(0.1, 0.5, 0.1, 0.5, 0.02);
    const auto pair2 = make_backlund_pair(eval_scalar(FamilyId::W_SQRT2, off), eval_scalar(FamilyId::THETA_SQRT2, off));
    EXPECT_THROW(ppfd_construct(pair2, 0.0, 1.0), std::invalid_argument);
}

TEST(Harmonic, PpfdMapPassesHopfAndCorrespondence) {
    const auto g = rect_grid(FamilyId::W_SQRT2, 1.0 / 400);
    const auto w = eval_scalar(FamilyId::W_SQRT2, g);
    const auto hm = ppfd_construct(make_backlund_pair(w, eval_scalar(FamilyId::THETA_SQRT2, g)), 0.0, 0.5);
    for (std::size_t k = 0; k < g.size(); ++k) {
        ASSERT_GT(hm.u.im[k], 0.0);
    }
    EXPECT_LT(sup_norm(hopf_residual(hm.u)).sup, 1e-3);
    const auto c = correspondence_check(hm.u, w);
    EXPECT_EQ(c.convention, Convention::minus_2w);
    EXPECT_LT(c.sup_minus, 1e-3);
}

TEST(Harmonic, OneSolitonMapIsExactlyHarmonic) {
    for (const double eps : {1.0, -1.0}) {
        const FamilyParams p{{"eps", eps}};
        const auto g = rect_grid(FamilyId::U_EX1, 1.0 / 400, p);
        const auto u = eval_map(FamilyId::U_EX1, g, p);
        EXPECT_LT(sup_norm(hopf_residual(u)).sup, 1e-3) << eps;
        const auto partner = partner_of(FamilyId::U_EX1, p);
        ASSERT_TRUE(partner.has_value());
        const auto c = correspondence_check(u, eval_scalar(partner->first, g, partner->second));
        EXPECT_NE(c.convention, Convention::none);
        EXPECT_LT(sup_norm(c.residual).sup, 1e-3);
    }
}

TEST(Harmonic, CorrespondenceNeedsEnoughPoints) {
    const auto g = make_grid(0.3, 0.4, 0.0, 0.1, 5, 5);
    const FamilyParams p{{"eps", 1.0}};
    EXPECT_THROW(correspondence_check(eval_map(FamilyId::U_EX1, g, p), eval_scalar(FamilyId::W_ONE_SOLITON, g)),
                 std::invalid_argument);
}

TEST(Harmonic, PrintedMapsAreHarmonicForTheirTargetMetric) {
    for (const auto id : {FamilyId::U_EX_SECTION3, FamilyId::U_EX2}) {
        const auto g = rect_grid(id, 1.0 / 400);
        const auto u = eval_map(id, g);
        const auto metric = eval_metric(*family_info(id).target_metric, g);
        EXPECT_LT(sup_norm(hopf_residual(u, target_metric_weight(u, metric))).sup, 1e-3) << to_string(id);
        // With the plain Poincaré weight the condition fails by orders of magnitude.
        EXPECT_GT(sup_norm(hopf_residual(u)).sup, 1.0) << to_string(id);
    }
}

TEST(Harmonic, PoincareCurvatureIsMinusOne) {
    const auto g = grid_with_spacing(-0.5, 0.5, 1.0, 2.0, 1.0 / 100);
    const auto K = gaussian_curvature(poincare_metric(g, 1.0), {1e-10, 0.0, DifferenceOrder::fourth});
    EXPECT_LT(sup_deviation(K, -1.0), 1e-6);
}

TEST(Harmonic, CurvatureScalesInverselyWithTheMetric) {
    // λ² g has curvature K / λ²: scaling the Poincaré metric by 4 gives −1/4.
    const auto g = grid_with_spacing(-0.5, 0.5, 1.0, 2.0, 1.0 / 100);
    const CurvatureGuard guard{1e-10, 0.0, DifferenceOrder::fourth};
    EXPECT_LT(sup_deviation(gaussian_curvature(poincare_metric(g, 4.0), guard), -0.25), 1e-6);
}

TEST(Harmonic, SecondOrderCurvatureConverges) {
    const auto g = grid_with_spacing(-0.5, 0.5, 1.0, 2.0, 1.0 / 20);
    const double coarse = sup_deviation(gaussian_curvature(poincare_metric(g, 1.0)), -1.0);
    const double fine = sup_deviation(gaussian_curvature(poincare_metric(g.refined(), 1.0)), -1.0);
    EXPECT_GT(coarse / fine, 3.5);
    EXPECT_LT(coarse / fine, 4.5);
}

TEST(Harmonic, CurvatureWithOffDiagonalTerm) {
    // The Poincaré metric in sheared coordinates (x, y) -> (x + y/2, y) keeps K = −1.
    const auto g = grid_with_spacing(-0.5, 0.5, 1.0, 2.0, 1.0 / 100);
    const auto m = sample_metric(
        g, [](double, double y) { return 1.0 / (y * y); }, [](double, double y) { return 0.5 / (y * y); },
        [](double, double y) { return 1.25 / (y * y); });
    const auto K = gaussian_curvature(m, {1e-10, 0.0, DifferenceOrder::fourth});
    EXPECT_LT(sup_deviation(K, -1.0), 1e-6);
}

TEST(Harmonic, EigenGuardMasksDegenerateBands) {
    const auto g = rect_grid(FamilyId::METRIC_EX2, 1.0 / 400);
    const auto m = eval_metric(FamilyId::METRIC_EX2, g);
    const auto loose = gaussian_curvature(m, {1e-10, 0.0, DifferenceOrder::fourth});
    const auto guarded = gaussian_curvature(m, {1e-10, 0.01, DifferenceOrder::fourth});
    EXPECT_LT(guarded.valid_count(), loose.valid_count());
    EXPECT_LT(sup_deviation(guarded, -1.0), 1e-3);
    const auto ratio = eigen_ratio(m);
    for (std::size_t k = 0; k < g.size(); ++k) {
        if (ratio.mask[k]) {
            ASSERT_GE(ratio.values[k], 0.0);
            ASSERT_LE(ratio.values[k], 1.0);
        }
    }
}

TEST(Harmonic, PullbackOfAHalfPlaneIsometry) {
    // u(z) = 2z + 3i is an isometry scaled out by the 1/S² factor: K = −1 everywhere.
    const auto g = grid_with_spacing(-0.5, 0.5, -0.5, 0.5, 1.0 / 100);
    const auto u = sample_complex(g, [](double x, double y) { return std::complex<double>(2 * x, 2 * y + 3); });
    const auto K = gaussian_curvature(pullback_metric(u, DifferenceOrder::fourth), {1e-10, 0.0, DifferenceOrder::fourth});
    EXPECT_LT(sup_deviation(K, -1.0), 1e-6);
    EXPECT_EQ(to_string(Convention::minus_2w), "exp(-2w)");
}
