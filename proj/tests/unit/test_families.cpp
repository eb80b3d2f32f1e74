#include <cmath>
#include <set>

#include <gtest/gtest.h>

#include "gordon/families.hpp"

using namespace gordon;

namespace {

Grid2D grid_on(const Rect& r, double h) { return grid_with_spacing(r.x0, r.x1, r.y0, r.y1, h); }

}  // namespace

TEST(Families, CatalogHasThirteenDistinctIds) {
    const auto& cat = family_catalog();
    ASSERT_EQ(cat.size(), 13u);
    std::set<std::string> names;
    for (const auto& f : cat) {
        names.insert(std::string(to_string(f.id)));
        EXPECT_EQ(parse_family_id(to_string(f.id)), f.id);
        EXPECT_FALSE(f.anchor.empty());
    }
    EXPECT_EQ(names.size(), 13u);
    EXPECT_THROW(parse_family_id("W_NOPE"), std::invalid_argument);
}

TEST(Families, ParametersAreValidated) {
    EXPECT_THROW(resolve_params(FamilyId::W_EX2, {{"bogus", 1.0}}), std::invalid_argument);
    const auto p = resolve_params(FamilyId::U_EX1, {{"eps", -1.0}});
    EXPECT_EQ(p.at("eps"), -1.0);
}

// Values of the printed closed forms, evaluated independently in double precision.
TEST(Families, FrozenPointValues) {
    const auto w2 = scalar_formula(FamilyId::W_EX2);
    EXPECT_NEAR(w2(0.1, 0.1), 0.19097052622917032, 1e-13);
    EXPECT_NEAR(w2(0.2, -0.2), 1.3414375899998003, 1e-13);
    EXPECT_NEAR(w2(-0.3, 0.2), -2.13353196107012, 1e-13);
    EXPECT_NEAR(w2(0.0, 0.2), -0.36912016016103166, 1e-13);

    const auto ws = scalar_formula(FamilyId::W_SQRT2);
    EXPECT_NEAR(ws(0.3, 0.1), -0.257937691231246, 1e-13);
    EXPECT_NEAR(ws(0.5, -0.2), 0.5804266732347133, 1e-13);
    EXPECT_NEAR(ws(0.8, 0.4), -1.3194480080096815, 1e-13);

    const auto th = scalar_formula(FamilyId::THETA_EX2);
    EXPECT_NEAR(th(0.1, 0.1), 2 * std::atan(0.2 / std::cos(0.2)), 1e-15);
}

TEST(Families, SingularPointsAreNaN) {
    // W_ONE_SOLITON with s = +1 needs e^{2x} < 1.
    const auto w = scalar_formula(FamilyId::W_ONE_SOLITON);
    EXPECT_TRUE(std::isnan(w(0.1, 0.0)));
    EXPECT_TRUE(std::isfinite(w(-0.5, 0.0)));
    const auto u = map_formula(FamilyId::U_EX1, {{"eps", 1.0}});
    EXPECT_TRUE(std::isnan(u(-0.5, 0.0).imag()));
}

TEST(Families, SinhResidualsPassOnRecommendedRectangles) {
    for (const auto id : {FamilyId::W_TAN_SPECIAL, FamilyId::W_ONE_SOLITON, FamilyId::W_EX2, FamilyId::W_SQRT2}) {
        const auto g = grid_on(recommended_rect(id), 1.0 / 400);
        const auto r = sup_norm(residual_sinh_gordon(eval_scalar(id, g)));
        EXPECT_LT(r.sup, 1e-3) << to_string(id);
        EXPECT_GT(r.count, g.size() / 2) << to_string(id);
    }
}

TEST(Families, ResidualConvergesAtOrderTwo) {
    for (const auto id : {FamilyId::W_TAN_SPECIAL, FamilyId::W_SQRT2}) {
        const auto g = grid_on(recommended_rect(id), 1.0 / 200);
        const double coarse = sup_norm(residual_sinh_gordon(eval_scalar(id, g))).sup;
        const double fine = sup_norm(residual_sinh_gordon(eval_scalar(id, g.refined()))).sup;
        EXPECT_GT(coarse / fine, 3.5) << to_string(id);
        EXPECT_LT(coarse / fine, 4.5) << to_string(id);
    }
}

TEST(Families, SignProbe) {
    for (const auto id : {FamilyId::THETA_EX2, FamilyId::THETA_SQRT2}) {
        const auto g = grid_on(recommended_rect(id), 1.0 / 400);
        const auto probe = sign_probe(eval_scalar(id, g));
        EXPECT_EQ(probe.sign, Sign::minus) << to_string(id);
        EXPECT_LT(probe.sup_minus, 1e-3);
        EXPECT_GT(probe.sup_plus, 10 * probe.sup_minus);
    }
    // θ ≡ π/2 has sin 2θ = 0: both signs fit, the probe cannot decide.
    const auto g = grid_on(recommended_rect(FamilyId::THETA_CONST_HALFPI), 1.0 / 100);
    const auto theta = eval_scalar(FamilyId::THETA_CONST_HALFPI, g);
    EXPECT_EQ(sign_probe(theta).sign, Sign::undetermined);
    EXPECT_LE(sup_norm(residual_sine_gordon(theta, Sign::plus)).sup, 1e-12);
    EXPECT_LE(sup_norm(residual_sine_gordon(theta, Sign::minus)).sup, 1e-12);
    EXPECT_THROW(residual_sine_gordon(theta, Sign::undetermined), std::invalid_argument);
}

TEST(Families, TanSpecialIsSymmetric) {
    const auto g = grid_with_spacing(-0.3, 0.3, -0.3, 0.3, 1.0 / 200);
    const auto w = eval_scalar(FamilyId::W_TAN_SPECIAL, g);
    const auto r = residual_sinh_gordon(w);
    for (int j = 0; j < g.ny(); ++j) {
        for (int i = 0; i < g.nx(); ++i) {
            ASSERT_EQ(w.valid(i, j), w.valid(j, i));
            ASSERT_EQ(r.valid(i, j), r.valid(j, i));
            if (r.valid(i, j)) {
                ASSERT_NEAR(r(i, j), r(j, i), 1e-9 * (1 + std::abs(r(i, j))));
            }
        }
    }
}

TEST(Families, HalfPlaneMapsHavePositiveImaginaryPart) {
    for (const auto& f : family_catalog()) {
        if (f.kind != FamilyKind::harmonic_map) {
            continue;
        }
        const auto g = grid_on(recommended_rect(f.id), 1.0 / 200);
        const auto u = eval_map(f.id, g);
        EXPECT_EQ(u.valid_count(), g.size()) << to_string(f.id);
        for (std::size_t k = 0; k < g.size(); ++k) {
            ASSERT_GT(u.im[k], 0.0) << to_string(f.id);
        }
    }
}

TEST(Families, EvalFamilyDispatchesOnKind) {
    const auto g = grid_with_spacing(-0.1, 0.1, -0.1, 0.1, 0.01);
    EXPECT_TRUE(std::holds_alternative<ScalarField>(eval_family(FamilyId::W_EX2, {}, g)));
    EXPECT_TRUE(std::holds_alternative<ComplexField>(eval_family(FamilyId::U_SQRT2, {}, g)));
    EXPECT_TRUE(std::holds_alternative<MetricSample>(eval_family(FamilyId::METRIC_EX2, {}, g)));
    EXPECT_THROW(eval_map(FamilyId::W_EX2, g), std::invalid_argument);
}
