#include "gordon/backlund.hpp"

#include "gordon/rk4.hpp"
#include "numeric_util.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>

namespace gordon {

namespace {

using detail::kNaN;
using detail::two_artanh;

constexpr double kAnalyticStep = 1e-3;

// Fourth-order central difference of g at s.
template <class G>
double central4(const G& g, double s, double d) {
    return (-g(s + 2 * d) + 8 * g(s + d) - 8 * g(s - d) + g(s - 2 * d)) / (12 * d);
}

// Derivative along x of sampled data: central inside, one-sided second order
// on the boundary. Masked where any stencil node is invalid.
ScalarField sampled_dx(const ScalarField& f) {
    const auto& g = f.grid;
    ScalarField out(g);
    const double s = 0.5 / g.hx();
    const int n = g.nx();
    for (int j = 0; j < g.ny(); ++j) {
        for (int i = 0; i < n; ++i) {
            const auto k = g.index(i, j);
            bool ok = true;
            double v = 0.0;
            if (i == 0) {
                ok = f.valid(0, j) && f.valid(1, j) && f.valid(2, j);
                v = (-3 * f(0, j) + 4 * f(1, j) - f(2, j)) * s;
            } else if (i == n - 1) {
                ok = f.valid(n - 1, j) && f.valid(n - 2, j) && f.valid(n - 3, j);
                v = (3 * f(n - 1, j) - 4 * f(n - 2, j) + f(n - 3, j)) * s;
            } else {
                ok = f.valid(i - 1, j) && f.valid(i + 1, j);
                v = (f(i + 1, j) - f(i - 1, j)) * s;
            }
            out.values[k] = ok ? v : 0.0;
            out.mask[k] = ok ? 1 : 0;
        }
    }
    return out;
}

ScalarField sampled_dy(const ScalarField& f) {
    const auto& g = f.grid;
    ScalarField out(g);
    const double s = 0.5 / g.hy();
    const int n = g.ny();
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < g.nx(); ++i) {
            const auto k = g.index(i, j);
            bool ok = true;
            double v = 0.0;
            if (j == 0) {
                ok = f.valid(i, 0) && f.valid(i, 1) && f.valid(i, 2);
                v = (-3 * f(i, 0) + 4 * f(i, 1) - f(i, 2)) * s;
            } else if (j == n - 1) {
                ok = f.valid(i, n - 1) && f.valid(i, n - 2) && f.valid(i, n - 3);
                v = (3 * f(i, n - 1) - 4 * f(i, n - 2) + f(i, n - 3)) * s;
            } else {
                ok = f.valid(i, j - 1) && f.valid(i, j + 1);
                v = (f(i, j + 1) - f(i, j - 1)) * s;
            }
            out.values[k] = ok ? v : 0.0;
            out.mask[k] = ok ? 1 : 0;
        }
    }
    return out;
}

// Cubic Lagrange weights on nodes 0..3 at fractional position s.
std::array<double, 4> lagrange4(double s) {
    return {-(s - 1) * (s - 2) * (s - 3) / 6.0, s * (s - 2) * (s - 3) / 2.0, -s * (s - 1) * (s - 3) / 2.0,
            s * (s - 1) * (s - 2) / 6.0};
}

struct Stencil {
    int base;
    std::array<double, 4> w;
};

std::optional<Stencil> stencil(double v, double v0, double h, int n) {
    const double u = (v - v0) / h;
    if (!(u >= -1e-9) || !(u <= n - 1 + 1e-9)) {
        return std::nullopt;
    }
    const int base = std::clamp(static_cast<int>(std::floor(u)) - 1, 0, n - 4);
    return Stencil{base, lagrange4(u - base)};
}

PointFunction bicubic(std::shared_ptr<const ScalarField> f) {
    return [f](double x, double y) {
        const auto& g = f->grid;
        const auto sx = stencil(x, g.x0(), g.hx(), g.nx());
        const auto sy = stencil(y, g.y0(), g.hy(), g.ny());
        if (!sx || !sy) {
            return kNaN;
        }
        double acc = 0.0;
        for (int b = 0; b < 4; ++b) {
            const int j = sy->base + b;
            double row = 0.0;
            for (int a = 0; a < 4; ++a) {
                const int i = sx->base + a;
                if (!f->valid(i, j)) {
                    return kNaN;
                }
                row += sx->w[a] * (*f)(i, j);
            }
            acc += sy->w[b] * row;
        }
        return acc;
    };
}

// Marches v' = rhs(s, v) from (s0, v0) over `nodes` grid cells of signed width
// h, calling store(k, v) after cell k (1-based). Stops at the first
// non-finite or blown-up value.
template <class Rhs, class Store>
void march_line(const Rhs& rhs, double s0, double v0, double h, int nodes, const MarchOptions& opt, Store store) {
    const int sub = std::max(1, opt.substeps);
    const double dt = h / sub;
    std::array<double, 1> v{v0};
    const auto f = [&rhs](double s, const std::array<double, 1>& y) { return std::array<double, 1>{rhs(s, y[0])}; };
    for (int k = 1; k <= nodes; ++k) {
        const double cell_start = s0 + (k - 1) * h;
        for (int m = 0; m < sub; ++m) {
            v = rk4_step<1>(f, cell_start + m * dt, v, dt);
        }
        if (!std::isfinite(v[0]) || std::abs(v[0]) > opt.blowup) {
            return;
        }
        store(k, v[0]);
    }
}

struct Anchor {
    int i0;
    int j0;
};

Anchor anchor_of(const Grid2D& g, const MarchOptions& opt) {
    const auto i0 = g.column_at(opt.anchor_x);
    const auto j0 = g.row_at(opt.anchor_y);
    if (!i0 || !j0) {
        throw std::invalid_argument("march anchor is not a grid node");
    }
    return {*i0, *j0};
}

ScalarField empty_field(const Grid2D& g) {
    ScalarField out(g);
    std::fill(out.mask.begin(), out.mask.end(), std::uint8_t{0});
    return out;
}

void put(ScalarField& f, int i, int j, double v) {
    f(i, j) = v;
    f.mask[f.grid.index(i, j)] = 1;
}

}  // namespace

BacklundPair make_backlund_pair(ScalarField w, ScalarField theta, Provenance provenance) {
    if (!(w.grid == theta.grid)) {
        throw std::invalid_argument("w and theta live on different grids");
    }
    return {std::move(w), std::move(theta), provenance};
}

BacklundResiduals backlund_residuals(const BacklundPair& pair) {
    const auto wx = partial_x(pair.w);
    const auto wy = partial_y(pair.w);
    const auto tx = partial_x(pair.theta);
    const auto ty = partial_y(pair.theta);
    const auto& g = pair.w.grid;
    BacklundResiduals r{ScalarField(g), ScalarField(g)};
    for (std::size_t k = 0; k < g.size(); ++k) {
        const bool base = pair.w.mask[k] && pair.theta.mask[k];
        const double w = pair.w.values[k];
        const double t = pair.theta.values[k];
        const bool ok1 = base && wx.mask[k] && ty.mask[k];
        const bool ok2 = base && wy.mask[k] && tx.mask[k];
        const double v1 = ok1 ? wx.values[k] - ty.values[k] + 2 * std::sinh(w) * std::sin(t) : 0.0;
        const double v2 = ok2 ? wy.values[k] + tx.values[k] + 2 * std::cosh(w) * std::cos(t) : 0.0;
        r.r1.values[k] = v1;
        r.r2.values[k] = v2;
        r.r1.mask[k] = ok1 && is_regular(v1) ? 1 : 0;
        r.r2.mask[k] = ok2 && is_regular(v2) ? 1 : 0;
    }
    return r;
}

FieldSource FieldSource::analytic(PointFunction f) {
    FieldSource s;
    s.value_ = f;
    s.dx_ = [f](double x, double y) {
        return central4([&](double t) { return f(t, y); }, x, kAnalyticStep);
    };
    s.dy_ = [f](double x, double y) {
        return central4([&](double t) { return f(x, t); }, y, kAnalyticStep);
    };
    return s;
}

FieldSource FieldSource::sampled(const ScalarField& f) {
    FieldSource s;
    s.value_ = bicubic(std::make_shared<const ScalarField>(f));
    s.dx_ = bicubic(std::make_shared<const ScalarField>(sampled_dx(f)));
    s.dy_ = bicubic(std::make_shared<const ScalarField>(sampled_dy(f)));
    return s;
}

ScalarField theta_to_w(const FieldSource& theta, const Grid2D& g, double w00, const MarchOptions& opt) {
    const auto [i0, j0] = anchor_of(g, opt);
    ScalarField w = empty_field(g);
    put(w, i0, j0, w00);

    const double y0 = g.y(j0);
    const auto row_rhs = [&](double x, double v) {
        return theta.dy(x, y0) - 2 * std::sinh(v) * std::sin(theta.value(x, y0));
    };
    const double x0 = g.x(i0);
    march_line(row_rhs, x0, w00, g.hx(), g.nx() - 1 - i0, opt, [&](int k, double v) { put(w, i0 + k, j0, v); });
    march_line(row_rhs, x0, w00, -g.hx(), i0, opt, [&](int k, double v) { put(w, i0 - k, j0, v); });

    for (int i = 0; i < g.nx(); ++i) {
        if (!w.valid(i, j0)) {
            continue;
        }
        const double x = g.x(i);
        const auto col_rhs = [&](double y, double v) {
            return -theta.dx(x, y) - 2 * std::cosh(v) * std::cos(theta.value(x, y));
        };
        const double seed = w(i, j0);
        march_line(col_rhs, y0, seed, g.hy(), g.ny() - 1 - j0, opt, [&](int k, double v) { put(w, i, j0 + k, v); });
        march_line(col_rhs, y0, seed, -g.hy(), j0, opt, [&](int k, double v) { put(w, i, j0 - k, v); });
    }
    return w;
}

ScalarField theta_to_w(const ScalarField& theta, double w00, const MarchOptions& options) {
    return theta_to_w(FieldSource::sampled(theta), theta.grid, w00, options);
}

ScalarField w_to_theta(const FieldSource& w, const Grid2D& g, double theta00, const MarchOptions& opt) {
    const auto [i0, j0] = anchor_of(g, opt);
    ScalarField theta = empty_field(g);
    put(theta, i0, j0, theta00);

    const double x0 = g.x(i0);
    const auto col_rhs = [&](double y, double v) {
        return w.dx(x0, y) + 2 * std::sinh(w.value(x0, y)) * std::sin(v);
    };
    const double y0 = g.y(j0);
    march_line(col_rhs, y0, theta00, g.hy(), g.ny() - 1 - j0, opt, [&](int k, double v) { put(theta, i0, j0 + k, v); });
    march_line(col_rhs, y0, theta00, -g.hy(), j0, opt, [&](int k, double v) { put(theta, i0, j0 - k, v); });

    for (int j = 0; j < g.ny(); ++j) {
        if (!theta.valid(i0, j)) {
            continue;
        }
        const double y = g.y(j);
        const auto row_rhs = [&](double x, double v) {
            return -w.dy(x, y) - 2 * std::cosh(w.value(x, y)) * std::cos(v);
        };
        const double seed = theta(i0, j);
        march_line(row_rhs, x0, seed, g.hx(), g.nx() - 1 - i0, opt, [&](int k, double v) { put(theta, i0 + k, j, v); });
        march_line(row_rhs, x0, seed, -g.hx(), i0, opt, [&](int k, double v) { put(theta, i0 - k, j, v); });
    }
    return theta;
}

ScalarField w_to_theta(const ScalarField& w, double theta00, const MarchOptions& options) {
    return w_to_theta(FieldSource::sampled(w), w.grid, theta00, options);
}

Theta00Scan scan_theta00(const FieldSource& w, const ScalarField& w_samples, const std::vector<double>& candidates,
                         const MarchOptions& options) {
    if (candidates.empty()) {
        throw std::invalid_argument("scan_theta00: no candidates");
    }
    std::optional<Theta00Scan> best;
    double best_score = std::numeric_limits<double>::infinity();
    for (const double c : candidates) {
        auto theta = w_to_theta(w, w_samples.grid, c, options);
        const auto r = backlund_residuals(make_backlund_pair(w_samples, theta));
        const auto n1 = sup_norm(r.r1);
        const auto n2 = sup_norm(r.r2);
        // A march that died immediately has no residual to speak of; rank it last.
        const double score = (n1.count == 0 || n2.count == 0) ? std::numeric_limits<double>::infinity()
                                                               : std::max(n1.sup, n2.sup);
        if (!best || score < best_score) {
            best_score = score;
            best = Theta00Scan{c, n1.sup, n2.sup, std::move(theta)};
        }
    }
    return *best;
}

ScalarField closed_form_w_product(const ProductThetaData& data, ProductFormula formula) {
    const auto& g = data.theta.grid;
    const auto i0 = g.column_at(0.0);
    const auto j0 = g.row_at(0.0);
    if (!i0 || !j0) {
        throw std::invalid_argument("closed_form_w_product: grid must contain x = 0 and y = 0");
    }
    if (std::abs(data.dF0) > 1e-12) {
        throw std::invalid_argument("closed_form_w_product: requires F'(0) = 0");
    }
    if (static_cast<int>(data.K.size()) != g.ny()) {
        throw std::invalid_argument("closed_form_w_product: K must have one value per grid row");
    }
    const auto cos_t = transform(data.theta, [](double t) { return std::cos(t); });
    const auto sin_t = transform(data.theta, [](double t) { return std::sin(t); });
    const auto Y = cumulative_integral_y(cos_t, 0.0);
    const auto X = cumulative_integral_x(sin_t, 0.0);

    ScalarField w(g);
    for (int j = 0; j < g.ny(); ++j) {
        const double K = data.K[j];
        const bool row_ok = Y.valid(*i0, j) && std::isfinite(K);
        const double tY = row_ok ? std::tan(Y(*i0, j)) : 0.0;
        const double r = std::sqrt(K * K + 4.0);
        for (int i = 0; i < g.nx(); ++i) {
            const auto k = g.index(i, j);
            if (!row_ok || !X.valid(i, j)) {
                w.mask[k] = 0;
                continue;
            }
            const double T = std::tanh(0.5 * r * X(i, j));
            double num = 0.0;
            double den = 0.0;
            if (formula == ProductFormula::printed) {
                const double a = 2.0 - K * tY;
                num = a + r * T;
                den = r + a * T;
            } else {
                const double t0 = -tY;
                num = r * t0 - (K + 2.0 * t0) * T;
                den = r + (2.0 - K * t0) * T;
            }
            const double v = two_artanh(detail::guarded_div(num, den));
            w.values[k] = v;
            w.mask[k] = is_regular(v) ? 1 : 0;
        }
    }
    return w;
}

ScalarField closed_form_w_tanh(const TanhThetaData& data, double w00) {
    const auto& g = data.theta.grid;
    const auto i0 = g.column_at(0.0);
    const auto j0 = g.row_at(0.0);
    if (!i0 || !j0) {
        throw std::invalid_argument("closed_form_w_tanh: grid must contain x = 0 and y = 0");
    }
    if (std::abs(data.d0) > 1e-12) {
        throw std::invalid_argument("closed_form_w_tanh: requires d(0) = 0");
    }
    if (static_cast<int>(data.c.size()) != g.nx()) {
        throw std::invalid_argument("closed_form_w_tanh: c must have one value per grid column");
    }
    const auto cos_t = transform(data.theta, [](double t) { return std::cos(t); });
    const auto sin_t = transform(data.theta, [](double t) { return std::sin(t); });
    const auto Y = cumulative_integral_y(cos_t, 0.0);
    const auto X = cumulative_integral_x(sin_t, 0.0);
    const double t00 = std::tanh(0.5 * w00);

    ScalarField w(g);
    for (int i = 0; i < g.nx(); ++i) {
        const double c = data.c[i];
        const double q = std::abs(4.0 - c * c);
        const bool col_ok = std::isfinite(c) && q >= kSingularDenominator &&
                            std::abs(c - 2.0) >= kSingularDenominator && X.valid(i, *j0);
        const double L = col_ok ? std::sqrt(q) / (c - 2.0) : 0.0;
        const double kappa = 0.5 * std::sqrt(q);
        const double T0 = col_ok ? t00 * std::exp(-2.0 * X(i, *j0)) : 0.0;
        for (int j = 0; j < g.ny(); ++j) {
            const auto k = g.index(i, j);
            if (!col_ok || !Y.valid(i, j)) {
                w.mask[k] = 0;
                continue;
            }
            const double tn = std::tan(kappa * Y(i, j));
            const double v = two_artanh(detail::guarded_div(L * (T0 + L * tn), L - T0 * tn));
            w.values[k] = v;
            w.mask[k] = is_regular(v) ? 1 : 0;
        }
    }
    return w;
}

}  // namespace gordon
