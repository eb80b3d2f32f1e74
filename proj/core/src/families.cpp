#include "gordon/families.hpp"

#include "numeric_util.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace gordon {

namespace {

using detail::guarded_div;
using detail::kNaN;
using detail::two_artanh;

constexpr double kSqrt2 = std::numbers::sqrt2;

double param(const FamilyParams& p, const std::string& name) { return p.at(name); }

double unit_sign(double v) { return v < 0 ? -1.0 : 1.0; }

// W_TAN_SPECIAL: sinh w = (sh 2x + sh 2y) / (1 − sh 2x sh 2y)
double w_tan_special(double x, double y) {
    const double a = std::sinh(2 * x);
    const double b = std::sinh(2 * y);
    return std::asinh(guarded_div(a + b, 1.0 - a * b));
}

double w_ex2(double x, double y) {
    const double cy = std::cos(y);
    const double sy = std::sin(y);
    const double s2x = std::sin(2 * x);
    return two_artanh(guarded_div(cy * (s2x - 2 * y) + sy, cy + (2 * y + s2x) * sy));
}

double theta_ex2(double x, double y) { return 2.0 * std::atan(guarded_div(2 * y, std::cos(2 * x))); }

double theta_sqrt2(double x, double y) {
    const double a = std::cosh(kSqrt2 * x);
    const double b = std::cosh(kSqrt2 * y);
    return 2.0 * std::atan((a - b) / (a + b));
}

double w_sqrt2(double x, double y) {
    const double den = kSqrt2 * std::sinh(kSqrt2 * x) - 2.0 * std::cosh(kSqrt2 * x);
    return two_artanh(guarded_div(kSqrt2 * std::sinh(kSqrt2 * y), den));
}

std::complex<double> half_plane(double R, double S) {
    if (!(S >= kSingularDenominator)) {
        return {kNaN, kNaN};
    }
    return {R, S};
}

std::complex<double> u_section3(double x, double y) {
    const double sech2y = 1.0 / std::cosh(2 * y);
    const double th2y = std::tanh(2 * y);
    const double sh2x = std::sinh(2 * x);
    return half_plane(sech2y - sh2x * th2y, sh2x * sech2y + th2y - 2 * y);
}

std::complex<double> u_ex2(double x, double y) {
    const double c2x = std::cos(2 * x);
    const double c2y = std::cos(2 * y);
    const double s2x = std::sin(2 * x);
    const double s2y = std::sin(2 * y);
    const double den = 4 * y * y + c2x * c2x;
    const double R = guarded_div(c2y * c2x * c2x + 4 * y * (s2x + s2y - y * c2y), den);
    const double S = 2 * x + guarded_div(4 * y * c2x * c2y - 2 * c2x * (s2x + s2y), den);
    return half_plane(R, S);
}

std::complex<double> u_sqrt2(double x, double y) {
    const double e2x = std::exp(2 * x);
    const double den = 2.0 + std::cosh(2 * kSqrt2 * x) + std::cosh(2 * kSqrt2 * y);
    const double S = e2x * (2.0 + 3.0 * std::cosh(2 * kSqrt2 * x) - std::cosh(2 * kSqrt2 * y) -
                            2 * kSqrt2 * std::sinh(2 * kSqrt2 * x)) /
                     den;
    const double R =
        4 * e2x * (std::cosh(kSqrt2 * y) * (2 * std::cosh(kSqrt2 * x) - kSqrt2 * std::sinh(kSqrt2 * x))) / den - 2.0;
    return half_plane(R, S);
}

struct MetricPoint {
    double E, Fc, G;
};

MetricPoint metric_section3(double x, double y) {
    const double a = std::sinh(2 * x);
    const double b = std::sinh(2 * y);
    const double den = (1.0 - a * b) * (1.0 - a * b);
    const double cc = std::cosh(2 * x) * std::cosh(2 * y);
    return {guarded_div(4 * cc * cc, den), 0.0, guarded_div(4 * (a + b) * (a + b), den)};
}

MetricPoint metric_ex2(double x, double y) {
    const double c2y = std::cos(2 * y);
    const double s2x = std::sin(2 * x);
    const double s2y = std::sin(2 * y);
    const double c4x = std::cos(4 * x);
    const double base = c2y * (1 - 8 * y * y + c4x) + 8 * y * (s2x + s2y);
    const double den = base * base;
    const double e = 3 + 8 * y * y - c4x + 4 * s2x * (s2y - 2 * y * c2y);
    const double g = 8 * y * c2y - 4 * s2x + s2y * (8 * y * y + c4x - 3);
    return {guarded_div(4 * e * e, den), 0.0, guarded_div(4 * g * g, den)};
}

std::vector<FamilyInfo> build_catalog() {
    using F = FamilyId;
    using K = FamilyKind;
    std::vector<FamilyInfo> c;
    c.push_back({F::W_TAN_SPECIAL, K::sinh_solution, "(specialsol1)",
                 "sinh w = (sh 2x + sh 2y) / (1 - sh 2x sh 2y)", {}, Sign::undetermined, std::nullopt, std::nullopt});
    c.push_back({F::W_ONE_SOLITON, K::sinh_solution, "(wex1)", "w = 2 artanh(exp(2 s x))",
                 {{"exponent_sign", 1.0, "s = +1 printed, s = -1 Backlund-compatible variant"}}, Sign::undetermined,
                 F::THETA_CONST_HALFPI, std::nullopt});
    c.push_back({F::THETA_CONST_HALFPI, K::sine_solution, "Example 4.3", "theta = pi/2", {}, Sign::undetermined,
                 F::W_ONE_SOLITON, std::nullopt});
    c.push_back({F::THETA_EX2, K::sine_solution, "(ThetaEx2)", "tan(theta/2) = 2y sec(2x)", {}, Sign::minus, F::W_EX2,
                 std::nullopt});
    c.push_back({F::W_EX2, K::sinh_solution, "(WEx2)",
                 "tanh(w/2) = (cos y (sin 2x - 2y) + sin y) / (cos y + (2y + sin 2x) sin y)", {}, Sign::undetermined,
                 F::THETA_EX2, std::nullopt});
    c.push_back({F::THETA_SQRT2, K::sine_solution, "sec. 4 final example",
                 "tan(theta/2) = (ch(r2 x) - ch(r2 y)) / (ch(r2 x) + ch(r2 y))", {}, Sign::minus, F::W_SQRT2,
                 std::nullopt});
    c.push_back({F::W_SQRT2, K::sinh_solution, "sec. 4 final example",
                 "tanh(w/2) = r2 sh(r2 y) / (r2 sh(r2 x) - 2 ch(r2 x))", {}, Sign::undetermined, F::THETA_SQRT2,
                 std::nullopt});
    c.push_back({F::U_EX_SECTION3, K::harmonic_map, "(R1)/(S1)",
                 "R = sech 2y - sh 2x tanh 2y, S = sh 2x sech 2y + tanh 2y - 2y", {}, Sign::undetermined,
                 F::W_TAN_SPECIAL, F::METRIC_SECTION3});
    c.push_back({F::U_EX1, K::harmonic_map, "(harex1)", "R = y, S = eps sh(2x) / 2",
                 {{"eps", 1.0, "eps = +1 on x > 0, eps = -1 on x < 0"}}, Sign::undetermined, F::W_ONE_SOLITON,
                 std::nullopt});
    c.push_back({F::U_EX2, K::harmonic_map, "(REx2)/(SEx2)", "R, S as printed", {}, Sign::undetermined, F::W_EX2,
                 F::METRIC_EX2});
    c.push_back({F::U_SQRT2, K::harmonic_map, "sec. 4 final example",
                 "S = e^{2x}(2 + 3ch(2r2x) - ch(2r2y) - 2r2 sh(2r2x)) / (2 + ch(2r2x) + ch(2r2y)), R as printed", {},
                 Sign::undetermined, F::W_SQRT2, std::nullopt});
    c.push_back({F::METRIC_SECTION3, K::target_metric, "(targetmetric)",
                 "4 (ch^2 2x ch^2 2y dx^2 + (sh 2x + sh 2y)^2 dy^2) / (1 - sh 2x sh 2y)^2", {}, Sign::undetermined,
                 F::W_TAN_SPECIAL, std::nullopt});
    c.push_back({F::METRIC_EX2, K::target_metric, "(metric2)", "E dx^2 + G dy^2 as printed", {}, Sign::undetermined,
                 F::W_EX2, std::nullopt});
    return c;
}

constexpr std::string_view kNames[] = {
    "W_TAN_SPECIAL", "W_ONE_SOLITON", "THETA_CONST_HALFPI", "THETA_EX2",       "W_EX2",     "THETA_SQRT2", "W_SQRT2",
    "U_EX_SECTION3", "U_EX1",         "U_EX2",              "U_SQRT2",         "METRIC_SECTION3", "METRIC_EX2",
};

}  // namespace

int sign_value(Sign s) {
    switch (s) {
    case Sign::plus:
        return 1;
    case Sign::minus:
        return -1;
    case Sign::undetermined:
        break;
    }
    return 0;
}

std::string_view to_string(Sign s) {
    switch (s) {
    case Sign::plus:
        return "+1";
    case Sign::minus:
        return "-1";
    case Sign::undetermined:
        break;
    }
    return "undetermined";
}

std::string_view to_string(FamilyKind k) {
    switch (k) {
    case FamilyKind::sinh_solution:
        return "sinh_solution";
    case FamilyKind::sine_solution:
        return "sine_solution";
    case FamilyKind::harmonic_map:
        return "harmonic_map";
    case FamilyKind::target_metric:
        return "target_metric";
    }
    return "?";
}

std::string_view to_string(FamilyId id) { return kNames[static_cast<int>(id)]; }

FamilyId parse_family_id(std::string_view name) {
    for (std::size_t k = 0; k < std::size(kNames); ++k) {
        if (kNames[k] == name) {
            return static_cast<FamilyId>(k);
        }
    }
    throw std::invalid_argument("unknown family id: " + std::string(name));
}

const std::vector<FamilyInfo>& family_catalog() {
    static const std::vector<FamilyInfo> catalog = build_catalog();
    return catalog;
}

const FamilyInfo& family_info(FamilyId id) { return family_catalog().at(static_cast<std::size_t>(id)); }

FamilyParams resolve_params(FamilyId id, const FamilyParams& overrides) {
    const auto& info = family_info(id);
    FamilyParams out;
    for (const auto& p : info.params) {
        out[p.name] = p.default_value;
    }
    for (const auto& [name, value] : overrides) {
        if (!out.contains(name)) {
            throw std::invalid_argument("family " + std::string(to_string(id)) + " has no parameter '" + name + "'");
        }
        if (!std::isfinite(value)) {
            throw std::invalid_argument("parameter '" + name + "' must be finite");
        }
        out[name] = value;
    }
    return out;
}

Rect recommended_rect(FamilyId id, const FamilyParams& params) {
    const auto p = resolve_params(id, params);
    switch (id) {
    case FamilyId::W_TAN_SPECIAL:
    case FamilyId::METRIC_SECTION3:
        return {-0.3, 0.3, -0.3, 0.3};
    case FamilyId::W_ONE_SOLITON:
        return unit_sign(param(p, "exponent_sign")) > 0 ? Rect{-1.3, -0.3, -0.5, 0.5} : Rect{0.3, 1.3, -0.5, 0.5};
    case FamilyId::U_EX1:
        return unit_sign(param(p, "eps")) > 0 ? Rect{0.3, 1.3, -0.5, 0.5} : Rect{-1.3, -0.3, -0.5, 0.5};
    case FamilyId::THETA_CONST_HALFPI:
        return {-0.5, 0.5, -0.5, 0.5};
    case FamilyId::THETA_EX2:
    case FamilyId::W_EX2:
    case FamilyId::METRIC_EX2:
        return {-0.15, 0.15, -0.15, 0.15};
    case FamilyId::THETA_SQRT2:
    case FamilyId::W_SQRT2:
    case FamilyId::U_SQRT2:
        return {-0.4, 0.4, -0.4, 0.4};
    case FamilyId::U_EX_SECTION3:
        return {0.1, 0.3, -0.3, 0.3};
    case FamilyId::U_EX2:
        return {-0.25, -0.05, -0.4, -0.1};
    }
    throw std::invalid_argument("unknown family id");
}

std::optional<std::pair<FamilyId, FamilyParams>> partner_of(FamilyId id, const FamilyParams& params) {
    const auto& info = family_info(id);
    if (!info.partner) {
        return std::nullopt;
    }
    const auto p = resolve_params(id, params);
    FamilyParams q;
    if (id == FamilyId::U_EX1) {
        // S = eps sh(2x)/2 lives on eps·x > 0, where tanh(w/2) = exp(−2 eps x) is regular.
        q["exponent_sign"] = -unit_sign(param(p, "eps"));
    }
    return std::make_pair(*info.partner, resolve_params(*info.partner, q));
}

PointFunction scalar_formula(FamilyId id, const FamilyParams& params) {
    const auto p = resolve_params(id, params);
    switch (id) {
    case FamilyId::W_TAN_SPECIAL:
        return w_tan_special;
    case FamilyId::W_ONE_SOLITON: {
        const double s = unit_sign(param(p, "exponent_sign"));
        return [s](double x, double) { return two_artanh(std::exp(2.0 * s * x)); };
    }
    case FamilyId::THETA_CONST_HALFPI:
        return [](double, double) { return std::numbers::pi / 2; };
    case FamilyId::THETA_EX2:
        return theta_ex2;
    case FamilyId::W_EX2:
        return w_ex2;
    case FamilyId::THETA_SQRT2:
        return theta_sqrt2;
    case FamilyId::W_SQRT2:
        return w_sqrt2;
    default:
        break;
    }
    throw std::invalid_argument(std::string(to_string(id)) + " is not a scalar family");
}

ComplexPointFunction map_formula(FamilyId id, const FamilyParams& params) {
    const auto p = resolve_params(id, params);
    switch (id) {
    case FamilyId::U_EX_SECTION3:
        return u_section3;
    case FamilyId::U_EX1: {
        const double eps = unit_sign(param(p, "eps"));
        return [eps](double x, double y) { return half_plane(y, eps * std::sinh(2 * x) / 2); };
    }
    case FamilyId::U_EX2:
        return u_ex2;
    case FamilyId::U_SQRT2:
        return u_sqrt2;
    default:
        break;
    }
    throw std::invalid_argument(std::string(to_string(id)) + " is not a harmonic-map family");
}

ScalarField eval_scalar(FamilyId id, const Grid2D& grid, const FamilyParams& params) {
    return sample(grid, scalar_formula(id, params));
}

ComplexField eval_map(FamilyId id, const Grid2D& grid, const FamilyParams& params) {
    return sample_complex(grid, map_formula(id, params));
}

MetricSample eval_metric(FamilyId id, const Grid2D& grid, const FamilyParams& params) {
    resolve_params(id, params);
    MetricPoint (*fn)(double, double) = nullptr;
    if (id == FamilyId::METRIC_SECTION3) {
        fn = metric_section3;
    } else if (id == FamilyId::METRIC_EX2) {
        fn = metric_ex2;
    } else {
        throw std::invalid_argument(std::string(to_string(id)) + " is not a target-metric family");
    }
    MetricSample m{ScalarField(grid), ScalarField(grid), ScalarField(grid)};
    for (int j = 0; j < grid.ny(); ++j) {
        for (int i = 0; i < grid.nx(); ++i) {
            const auto v = fn(grid.x(i), grid.y(j));
            const auto k = grid.index(i, j);
            const bool ok = is_regular(v.E) && is_regular(v.Fc) && is_regular(v.G);
            m.E.values[k] = v.E;
            m.Fc.values[k] = v.Fc;
            m.G.values[k] = v.G;
            m.E.mask[k] = m.Fc.mask[k] = m.G.mask[k] = ok ? 1 : 0;
        }
    }
    return m;
}

FamilyValue eval_family(FamilyId id, const FamilyParams& params, const Grid2D& grid) {
    switch (family_info(id).kind) {
    case FamilyKind::sinh_solution:
    case FamilyKind::sine_solution:
        return eval_scalar(id, grid, params);
    case FamilyKind::harmonic_map:
        return eval_map(id, grid, params);
    case FamilyKind::target_metric:
        return eval_metric(id, grid, params);
    }
    throw std::invalid_argument("unknown family id");
}

ScalarField residual_sinh_gordon(const ScalarField& w) {
    const auto lap = laplacian(w);
    return combine(lap, w, [](double l, double v) { return l - 2.0 * std::sinh(2.0 * v); });
}

ScalarField residual_sine_gordon(const ScalarField& theta, Sign sigma) {
    if (sigma == Sign::undetermined) {
        throw std::invalid_argument("residual_sine_gordon needs a definite sign");
    }
    const double s = sign_value(sigma);
    const auto lap = laplacian(theta);
    return combine(lap, theta, [s](double l, double v) { return l - s * 2.0 * std::sin(2.0 * v); });
}

SignProbe sign_probe(const ScalarField& theta) {
    const auto plus = sup_norm(residual_sine_gordon(theta, Sign::plus));
    const auto minus = sup_norm(residual_sine_gordon(theta, Sign::minus));
    SignProbe out;
    out.sup_plus = plus.sup;
    out.sup_minus = minus.sup;
    out.count = std::min(plus.count, minus.count);
    if (out.count < 100) {
        throw std::invalid_argument("sign_probe: fewer than 100 valid interior points");
    }
    const auto lap = laplacian(theta);
    double forcing = 0.0;
    for (std::size_t k = 0; k < theta.values.size(); ++k) {
        if (lap.mask[k]) {
            forcing = std::max(forcing, std::abs(std::sin(2.0 * theta.values[k])));
        }
    }
    // sin 2θ ≈ 0 everywhere: the two residuals coincide.
    if (forcing < 1e-6) {
        return out;
    }
    if (out.sup_minus < 0.1 * out.sup_plus) {
        out.sign = Sign::minus;
    } else if (out.sup_plus < 0.1 * out.sup_minus) {
        out.sign = Sign::plus;
    }
    return out;
}

}  // namespace gordon
