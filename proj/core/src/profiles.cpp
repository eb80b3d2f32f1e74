#include "gordon/profiles.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "gordon/rk4.hpp"

namespace gordon {

namespace {

bool close_rel(double a, double b, double rtol) {
    return std::abs(a - b) <= rtol * std::max({1.0, std::abs(a), std::abs(b)});
}

QuarticProfile make_profile(double q4, double q2, double q0, double p0, double dp0, Axis axis) {
    QuarticProfile p{q4, q2, q0, p0, dp0, axis};
    p.validate();
    return p;
}

void check_axis(const SampledProfile& s, const AxisSamples& a, const char* what) {
    if (s.axis.n != a.n || std::abs(s.axis.t0 - a.t0) > 1e-12 * std::max(1.0, std::abs(a.t0)) ||
        std::abs(s.axis.h - a.h) > 1e-12 * a.h) {
        throw std::invalid_argument(std::string(what) + ": profile is not sampled on the grid axis");
    }
}

}  // namespace

double QuarticProfile::initial_defect() const { return dp_init * dp_init - coefficients()(p_init); }

void QuarticProfile::validate() const {
    const double p2 = p_init * p_init;
    const double scale = 1.0 + dp_init * dp_init + std::abs(q4) * p2 * p2 + std::abs(q2) * p2 + std::abs(q0);
    if (!std::isfinite(initial_defect()) || std::abs(initial_defect()) > 1e-12 * scale) {
        throw std::invalid_argument("profile initial data is not on its first integral");
    }
}

AxisSamples x_axis(const Grid2D& g) { return {g.x0(), g.hx(), g.nx()}; }

AxisSamples y_axis(const Grid2D& g) { return {g.y0(), g.hy(), g.ny()}; }

SampledProfile integrate_profile(const QuarticProfile& spec, const AxisSamples& axis,
                                 const ProfileIntegrationOptions& options) {
    spec.validate();
    if (axis.n < 2 || !(axis.h > 0)) {
        throw std::invalid_argument("integrate_profile: degenerate axis");
    }
    const double s = -axis.t0 / axis.h;
    const double r = std::round(s);
    if (std::abs(s - r) > 1e-9 || r < 0 || r > axis.n - 1) {
        throw std::invalid_argument("integrate_profile: t = 0 must be an axis sample");
    }
    const int k0 = static_cast<int>(r);
    const int sub = std::max(1, options.substeps);

    SampledProfile out;
    out.axis = axis;
    out.P0 = options.P0;
    out.p.assign(axis.n, 0.0);
    out.dp.assign(axis.n, 0.0);
    out.P.assign(axis.n, 0.0);
    out.valid.assign(axis.n, 0);

    const double q4 = spec.q4;
    const double q2 = spec.q2;
    auto rhs = [q4, q2](double, const std::array<double, 2>& y) {
        const double p = y[0];
        return std::array<double, 2>{y[1], 2.0 * q4 * p * p * p + q2 * p};
    };

    out.p[k0] = spec.p_init;
    out.dp[k0] = spec.dp_init;
    out.valid[k0] = 1;

    for (const int dir : {+1, -1}) {
        std::array<double, 2> y{spec.p_init, spec.dp_init};
        const double step = dir * axis.h / sub;
        double t = 0.0;
        for (int k = k0 + dir; k >= 0 && k < axis.n; k += dir) {
            bool ok = true;
            for (int m = 0; m < sub; ++m) {
                y = rk4_step<2>(rhs, t, y, step);
                t += step;
                if (!std::isfinite(y[0]) || !std::isfinite(y[1]) || std::abs(y[0]) > options.blowup) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                // Stepping across a pole can land on a finite but meaningless
                // state; the first integral exposes it.
                const double p2 = y[0] * y[0];
                const double scale = 1.0 + std::abs(spec.q0) + std::abs(q2) * p2 + std::abs(q4) * p2 * p2;
                ok = std::abs(y[1] * y[1] - spec.coefficients()(y[0])) <= options.breakdown_drift * scale;
            }
            if (!ok) {
                break;
            }
            out.p[k] = y[0];
            out.dp[k] = y[1];
            out.valid[k] = 1;
        }
    }

    out.P[k0] = options.P0;
    const double half = 0.5 * axis.h;
    for (int k = k0 + 1; k < axis.n && out.valid[k]; ++k) {
        out.P[k] = out.P[k - 1] + half * (out.p[k - 1] + out.p[k]);
    }
    for (int k = k0 - 1; k >= 0 && out.valid[k]; --k) {
        out.P[k] = out.P[k + 1] - half * (out.p[k + 1] + out.p[k]);
    }
    return out;
}

double first_integral_drift(const QuarticProfile& spec, const SampledProfile& profile) {
    const auto q = spec.coefficients();
    double worst = 0.0;
    for (int k = 0; k < profile.axis.n; ++k) {
        if (!profile.valid[k]) {
            continue;
        }
        const double p = profile.p[k];
        const double p2 = p * p;
        const double scale = 1.0 + std::abs(spec.q0) + std::abs(spec.q2) * p2 + std::abs(spec.q4) * p2 * p2;
        const double defect = profile.dp[k] * profile.dp[k] - q(p);
        worst = std::max(worst, std::abs(defect) / scale);
    }
    return worst;
}

bool TanFamilyConstants::satisfies_constraint(double rtol) const { return close_rel(4.0 * c1, 16.0 + c3 - c2, rtol); }

bool TanhFamilyConstants::satisfies_constraint(double rtol) const {
    return close_rel(16.0 + 4.0 * c4, c6 - c5, rtol);
}

double consistent_tan_phase(double a0, double da0, double b0, double db0) {
    const double num = da0 + db0;
    const double den = 4.0 - a0 * a0 - b0 * b0;
    if (std::abs(den) < 1e-300) {
        return num == 0.0 ? 0.0 : std::copysign(std::numbers::pi / 2, num);
    }
    return std::atan(num / den);
}

double consistent_tanh_phase(double c0, double dc0, double d0, double dd0) {
    const double num = dc0 + dd0;
    const double den = c0 * c0 + d0 * d0 - 4.0;
    if (num == 0.0) {
        return 0.0;
    }
    const double ratio = num / den;
    if (!(std::abs(ratio) < 1.0)) {
        throw std::invalid_argument("tanh family: (c'(0) + d'(0)) / (c(0)² + d(0)² − 4) must lie in (−1, 1)");
    }
    return std::atanh(ratio);
}

ProfilePair tan_family_profiles(const TanFamilyConstants& k, double a0, double da0, double b0, double db0) {
    if (!k.satisfies_constraint()) {
        throw ConstraintViolation("tan family constants violate 4c1 = 16 + c3 - c2");
    }
    return {make_profile(-1.0, k.c1, k.c2, a0, da0, Axis::x), make_profile(-1.0, 8.0 - k.c1, k.c3, b0, db0, Axis::y),
            consistent_tan_phase(a0, da0, b0, db0)};
}

ProfilePair tanh_family_profiles(const TanhFamilyConstants& k, double c0, double dc0, double d0, double dd0) {
    if (!k.satisfies_constraint()) {
        throw ConstraintViolation("tanh family constants violate 16 + 4c4 = c6 - c5");
    }
    return {make_profile(1.0, k.c4, k.c5, c0, dc0, Axis::x), make_profile(1.0, -(8.0 + k.c4), k.c6, d0, dd0, Axis::y),
            consistent_tanh_phase(c0, dc0, d0, dd0)};
}

ProfilePair product_family_profiles(const ProductFamilyConstants& k, double F0, double dF0, double G0, double dG0) {
    return {make_profile(k.A, k.B, k.C, F0, dF0, Axis::x), make_profile(k.C, -(4.0 + k.B), k.A, G0, dG0, Axis::y),
            0.0};
}

ProfilePair tan_family_from_corollary(double alpha, double beta, int sign_b) {
    const TanFamilyConstants k{4.0 * (1.0 - alpha * alpha + beta * beta), 16.0 * alpha * alpha, 16.0 * beta * beta};
    return tan_family_profiles(k, 0.0, 4.0 * alpha, 0.0, (sign_b < 0 ? -4.0 : 4.0) * beta);
}

QuarticCoefficients tanh_corollary_c(TanhCorollaryForm form, double gamma, double delta) {
    const double g2 = gamma * gamma;
    const double d2 = delta * delta;
    switch (form) {
    case TanhCorollaryForm::resolved:
        return {1.0, d2 - g2 - 4.0, 4.0 * g2};
    case TanhCorollaryForm::printed_text:
        return {1.0, 4.0 * (g2 - d2 - 1.0), 16.0 * g2};
    case TanhCorollaryForm::printed_display:
        return {1.0, 4.0 * (1.0 + d2 - g2), 4.0 * g2};
    }
    return {};
}

QuarticCoefficients tanh_corollary_d(TanhCorollaryForm form, double gamma, double delta) {
    const double g2 = gamma * gamma;
    const double d2 = delta * delta;
    switch (form) {
    case TanhCorollaryForm::resolved:
        return {1.0, g2 - d2 - 4.0, 4.0 * d2};
    case TanhCorollaryForm::printed_text:
        return {1.0, -(8.0 + 4.0 * (g2 - d2 - 1.0)), 16.0 * d2};
    case TanhCorollaryForm::printed_display:
        return {1.0, 4.0 * (1.0 + g2 - d2), 4.0 * d2};
    }
    return {};
}

ProfilePair tanh_family_from_corollary(double gamma, double delta, int sign_d) {
    const auto c = tanh_corollary_c(TanhCorollaryForm::resolved, gamma, delta);
    const TanhFamilyConstants k{c.q2, c.q0, 4.0 * delta * delta};
    return tanh_family_profiles(k, 0.0, 2.0 * gamma, 0.0, (sign_d < 0 ? -2.0 : 2.0) * delta);
}

SampledPair integrate_pair(const ProfilePair& pair, const Grid2D& grid, const ProfileIntegrationOptions& options) {
    auto xo = options;
    xo.P0 = options.P0 + pair.phase;
    auto yo = options;
    yo.P0 = 0.0;
    return {integrate_profile(pair.first, x_axis(grid), xo), integrate_profile(pair.second, y_axis(grid), yo)};
}

ScalarField assemble_tan_family(const SampledProfile& Ax, const SampledProfile& By, const Grid2D& grid) {
    check_axis(Ax, x_axis(grid), "assemble_tan_family");
    check_axis(By, y_axis(grid), "assemble_tan_family");
    ScalarField w(grid);
    for (int j = 0; j < grid.ny(); ++j) {
        for (int i = 0; i < grid.nx(); ++i) {
            const auto k = grid.index(i, j);
            const double phi = Ax.P[i] + By.P[j];
            if (!Ax.valid[i] || !By.valid[j] || std::abs(std::cos(phi)) < kSingularDenominator) {
                w.mask[k] = 0;
                continue;
            }
            w.values[k] = std::asinh(std::tan(phi));
            w.mask[k] = is_regular(w.values[k]) ? 1 : 0;
        }
    }
    return w;
}

ScalarField assemble_tanh_family(const SampledProfile& Cx, const SampledProfile& Dy, const Grid2D& grid) {
    check_axis(Cx, x_axis(grid), "assemble_tanh_family");
    check_axis(Dy, y_axis(grid), "assemble_tanh_family");
    ScalarField theta(grid);
    for (int j = 0; j < grid.ny(); ++j) {
        for (int i = 0; i < grid.nx(); ++i) {
            const auto k = grid.index(i, j);
            if (!Cx.valid[i] || !Dy.valid[j]) {
                theta.mask[k] = 0;
                continue;
            }
            theta.values[k] = std::asin(std::tanh(Cx.P[i] + Dy.P[j]));
        }
    }
    return theta;
}

ScalarField assemble_product_family(const SampledProfile& Fx, const SampledProfile& Gy, const Grid2D& grid) {
    check_axis(Fx, x_axis(grid), "assemble_product_family");
    check_axis(Gy, y_axis(grid), "assemble_product_family");
    ScalarField theta(grid);
    for (int j = 0; j < grid.ny(); ++j) {
        for (int i = 0; i < grid.nx(); ++i) {
            const auto k = grid.index(i, j);
            if (!Fx.valid[i] || !Gy.valid[j]) {
                theta.mask[k] = 0;
                continue;
            }
            theta.values[k] = 2.0 * std::atan(Fx.p[i] * Gy.p[j]);
        }
    }
    return theta;
}

}  // namespace gordon
