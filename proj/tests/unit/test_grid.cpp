#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "gordon/grid.hpp"

using namespace gordon;

TEST(Grid, SpacingAndIndexing) {
    const auto g = grid_with_spacing(-0.5, 0.5, 0.0, 0.25, 0.05);
    EXPECT_EQ(g.nx(), 21);
    EXPECT_EQ(g.ny(), 6);
    EXPECT_DOUBLE_EQ(g.hx(), 0.05);
    EXPECT_NEAR(g.x(10), 0.0, 1e-15);
    EXPECT_EQ(g.index(3, 2), 2u * 21u + 3u);
    ASSERT_TRUE(g.column_at(0.0).has_value());
    EXPECT_EQ(*g.column_at(0.0), 10);
    EXPECT_FALSE(g.column_at(0.01).has_value());
}

TEST(Grid, RejectsDegenerateInput) {
    EXPECT_THROW(Grid2D(0.0, 0.0, 0.0, 1.0, 10, 10), std::invalid_argument);
    EXPECT_THROW(Grid2D(0.0, 1.0, 0.0, 1.0, 4, 10), std::invalid_argument);
    EXPECT_THROW(grid_with_spacing(0.0, 1.0, 0.0, 1.0, 0.3), std::invalid_argument);
}

TEST(Grid, RefinedHalvesSpacing) {
    const auto g = make_grid(0.0, 1.0, 0.0, 2.0, 11, 21);
    const auto r = g.refined();
    EXPECT_EQ(r.nx(), 21);
    EXPECT_EQ(r.ny(), 41);
    EXPECT_DOUBLE_EQ(r.hx(), g.hx() / 2);
}

TEST(Grid, SampleMasksSingularValues) {
    const auto g = make_grid(-1.0, 1.0, -1.0, 1.0, 5, 5);
    const auto f = sample(g, [](double x, double) { return 1.0 / x; });
    EXPECT_EQ(f.valid_count(), 20u);
    EXPECT_FALSE(f.valid(2, 3));
    const auto n = sup_norm(f);
    EXPECT_EQ(n.count, 20u);
    EXPECT_DOUBLE_EQ(n.sup, 2.0);
}

TEST(Grid, LaplacianExactOnQuadratics) {
    const auto g = grid_with_spacing(-1.0, 1.0, -1.0, 1.0, 0.1);
    const auto f = sample(g, [](double x, double y) { return 3 * x * x - x * y + 2 * y * y + x; });
    const auto lap = laplacian(f);
    EXPECT_FALSE(lap.valid(0, 5));
    EXPECT_FALSE(lap.valid(5, g.ny() - 1));
    const auto err = sup_norm(transform(lap, [](double v) { return v - 10.0; }));
    EXPECT_EQ(err.count, static_cast<std::size_t>((g.nx() - 2) * (g.ny() - 2)));
    EXPECT_LT(err.sup, 1e-10);
}

TEST(Grid, LaplacianSecondOrder) {
    auto error = [](double h) {
        const auto g = grid_with_spacing(0.0, 1.0, 0.0, 1.0, h);
        const auto f = sample(g, [](double x, double y) { return std::sin(2 * x) * std::exp(y); });
        const auto lap = laplacian(f);
        const auto exact = sample(g, [](double x, double y) { return -3 * std::sin(2 * x) * std::exp(y); });
        return sup_norm(combine(lap, exact, [](double a, double b) { return a - b; })).sup;
    };
    const double ratio = error(0.05) / error(0.025);
    EXPECT_GT(ratio, 3.5);
    EXPECT_LT(ratio, 4.5);
}

TEST(Grid, LaplacianMasksNextToInvalidNodes) {
    const auto g = make_grid(0.0, 1.0, 0.0, 1.0, 9, 9);
    auto f = sample(g, [](double x, double y) { return x + y; });
    f.invalidate(4, 4);
    const auto lap = laplacian(f);
    EXPECT_FALSE(lap.valid(3, 4));
    EXPECT_FALSE(lap.valid(4, 5));
    EXPECT_TRUE(lap.valid(3, 3));
}

TEST(Grid, PartialsAndWirtinger) {
    const auto g = grid_with_spacing(-0.5, 0.5, -0.5, 0.5, 0.01);
    // u = z² = (x² − y²) + 2ixy is holomorphic: ∂z̄u = 0, ∂z u = 2z.
    const auto u = sample_complex(g, [](double x, double y) { return std::complex<double>(x, y) * std::complex<double>(x, y); });
    const auto d = wirtinger(u);
    double sup_bar = 0.0, sup_z = 0.0;
    for (int j = 1; j < g.ny() - 1; ++j) {
        for (int i = 1; i < g.nx() - 1; ++i) {
            ASSERT_TRUE(d.dzbar.valid(i, j));
            sup_bar = std::max(sup_bar, std::abs(d.dzbar(i, j)));
            sup_z = std::max(sup_z, std::abs(d.dz(i, j) - 2.0 * std::complex<double>(g.x(i), g.y(j))));
        }
    }
    EXPECT_LT(sup_bar, 1e-12);
    EXPECT_LT(sup_z, 1e-12);

    const auto f = sample(g, [](double x, double y) { return x * x * y; });
    const auto fx = partial_x(f);
    EXPECT_NEAR(fx(30, 70), 2 * g.x(30) * g.y(70), 1e-12);
}

TEST(Grid, CumulativeTrapezoidExactOnLinear) {
    std::vector<double> f{0, 1, 2, 3, 4, 5};
    Mask valid(6, 1);
    const auto r = cumulative_trapezoid(f, valid, 0.5, 2);
    EXPECT_DOUBLE_EQ(r.values[2], 0.0);
    // ∫ of t/0.5 from t = 1 to 2.5 (index 2 → 5) = (2.5² − 1²)
    EXPECT_NEAR(r.values[5], 5.25, 1e-14);
    EXPECT_NEAR(r.values[0], -1.0, 1e-14);
}

TEST(Grid, CumulativeTrapezoidStopsAtGaps) {
    std::vector<double> f(7, 1.0);
    Mask valid(7, 1);
    valid[5] = 0;
    const auto r = cumulative_trapezoid(f, valid, 1.0, 1);
    EXPECT_TRUE(r.valid[4]);
    EXPECT_FALSE(r.valid[5]);
    EXPECT_FALSE(r.valid[6]);
    EXPECT_TRUE(r.valid[0]);
}

TEST(Grid, CumulativeIntegralSecondOrder) {
    auto error = [](double h) {
        const auto g = grid_with_spacing(-1.0, 1.0, 0.0, 0.5, h);
        const auto F = cumulative_integral_x(sample(g, [](double x, double y) { return std::cos(x) * (1 + y); }), 0.0);
        const auto exact = sample(g, [](double x, double y) { return std::sin(x) * (1 + y); });
        return sup_norm(combine(F, exact, [](double a, double b) { return a - b; })).sup;
    };
    const double ratio = error(0.05) / error(0.025);
    EXPECT_NEAR(ratio, 4.0, 0.1);
    EXPECT_THROW(cumulative_integral_y(sample(grid_with_spacing(0, 1, 0, 1, 0.1), [](double, double) { return 1.0; }), 0.05),
                 std::invalid_argument);
}
