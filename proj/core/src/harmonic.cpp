#include "gordon/harmonic.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace gordon {

namespace {

// Broadcasts a quantity known on row j0 to every row of the same column.
ScalarField broadcast_row(const ScalarField& f, int j0) {
    ScalarField out(f.grid);
    for (int j = 0; j < f.grid.ny(); ++j) {
        for (int i = 0; i < f.grid.nx(); ++i) {
            out(i, j) = f(i, j0);
            out.mask[f.grid.index(i, j)] = f.mask[f.grid.index(i, j0)];
        }
    }
    return out;
}

ScalarField and_mask(ScalarField f, const ScalarField& other) {
    for (std::size_t k = 0; k < f.mask.size(); ++k) {
        f.mask[k] = (f.mask[k] && other.mask[k]) ? 1 : 0;
    }
    return f;
}

// Central differences along one axis, of order 2 or 4. Nodes whose stencil
// leaves the grid or touches an invalid sample are masked.
enum class Along { x, y };

template <class Stencil>
ScalarField apply_stencil(const ScalarField& f, Along along, int reach, Stencil stencil) {
    const auto& g = f.grid;
    ScalarField out(g);
    const int n = along == Along::x ? g.nx() : g.ny();
    for (int j = 0; j < g.ny(); ++j) {
        for (int i = 0; i < g.nx(); ++i) {
            const auto k = g.index(i, j);
            const int c = along == Along::x ? i : j;
            out.mask[k] = 0;
            out.values[k] = 0.0;
            if (c < reach || c >= n - reach) {
                continue;
            }
            bool ok = true;
            const auto at = [&](int o) {
                const int ii = along == Along::x ? i + o : i;
                const int jj = along == Along::x ? j : j + o;
                ok = ok && f.valid(ii, jj);
                return f(ii, jj);
            };
            const double v = stencil(at);
            if (ok) {
                out.values[k] = v;
                out.mask[k] = 1;
            }
        }
    }
    return out;
}

ScalarField first_difference(const ScalarField& f, Along along, DifferenceOrder order) {
    const double h = along == Along::x ? f.grid.hx() : f.grid.hy();
    if (order == DifferenceOrder::second) {
        return apply_stencil(f, along, 1, [h](auto at) { return (at(1) - at(-1)) / (2 * h); });
    }
    return apply_stencil(f, along, 2,
                         [h](auto at) { return (-at(2) + 8 * at(1) - 8 * at(-1) + at(-2)) / (12 * h); });
}

ScalarField second_difference(const ScalarField& f, Along along, DifferenceOrder order) {
    const double h = along == Along::x ? f.grid.hx() : f.grid.hy();
    if (order == DifferenceOrder::second) {
        return apply_stencil(f, along, 1, [h](auto at) { return (at(1) - 2 * at(0) + at(-1)) / (h * h); });
    }
    return apply_stencil(f, along, 2, [h](auto at) {
        return (-at(2) + 16 * at(1) - 30 * at(0) + 16 * at(-1) - at(-2)) / (12 * h * h);
    });
}

double det3(double a, double b, double c, double d, double e, double f, double g, double h, double i) {
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g);
}

}  // namespace

HarmonicMapResult ppfd_construct(const BacklundPair& pair, double R0, double S0) {
    if (!(S0 > 0.0)) {
        throw std::invalid_argument("ppfd_construct: S0 must be positive");
    }
    if (!(pair.w.grid == pair.theta.grid)) {
        throw std::invalid_argument("ppfd_construct: w and theta live on different grids");
    }
    const auto& g = pair.w.grid;
    const auto i0 = g.column_at(0.0);
    const auto j0 = g.row_at(0.0);
    if (!i0 || !j0) {
        throw std::invalid_argument("ppfd_construct: grid must contain the lines x = 0 and y = 0");
    }

    const auto ch_sin = combine(pair.w, pair.theta, [](double w, double t) { return std::cosh(w) * std::sin(t); });
    const auto sh_cos = combine(pair.w, pair.theta, [](double w, double t) { return std::sinh(w) * std::cos(t); });
    const auto ch_cos = combine(pair.w, pair.theta, [](double w, double t) { return std::cosh(w) * std::cos(t); });
    const auto sh_sin = combine(pair.w, pair.theta, [](double w, double t) { return std::sinh(w) * std::sin(t); });

    // Only row j0 of these x-integrals is used.
    const auto I1 = broadcast_row(cumulative_integral_x(ch_sin, 0.0), *j0);
    const auto I2 = cumulative_integral_y(sh_cos, 0.0);
    const auto e2I1 = transform(I1, [](double v) { return std::exp(2 * v); });
    const auto I3 = broadcast_row(cumulative_integral_x(combine(e2I1, ch_cos, std::multiplies<>()), 0.0), *j0);
    const auto e2I2 = transform(I2, [](double v) { return std::exp(2 * v); });
    const auto inner = cumulative_integral_y(combine(e2I2, sh_sin, std::multiplies<>()), 0.0);
    const auto I4 = combine(e2I1, inner, std::multiplies<>());

    ComplexField u(g);
    for (std::size_t k = 0; k < g.size(); ++k) {
        const bool ok = I1.mask[k] && I2.mask[k] && I3.mask[k] && I4.mask[k];
        if (!ok) {
            u.mask[k] = 0;
            continue;
        }
        const double S = S0 * std::exp(2 * (I1.values[k] + I2.values[k]));
        const double R = R0 + 2 * S0 * (I3.values[k] - I4.values[k]);
        u.re[k] = R;
        u.im[k] = S;
        u.mask[k] = (is_regular(R) && is_regular(S) && S > 0.0) ? 1 : 0;
    }
    return {std::move(u), pair, R0, S0, and_mask(I1, I2), I2, and_mask(I3, I2), I4};
}

ScalarField poincare_weight(const ComplexField& u) {
    return transform(u.imag_part(), [](double S) { return S > 0.0 ? 1.0 / (S * S) : std::nan(""); });
}

ScalarField hopf_residual(const ComplexField& u) { return hopf_residual(u, poincare_weight(u)); }

ScalarField hopf_residual(const ComplexField& u, const ScalarField& weight) {
    if (!(u.grid == weight.grid)) {
        throw std::invalid_argument("hopf_residual: weight lives on a different grid");
    }
    const auto d = wirtinger(u);
    ScalarField out(u.grid);
    for (std::size_t k = 0; k < u.grid.size(); ++k) {
        if (!d.dz.mask[k] || !weight.mask[k]) {
            out.mask[k] = 0;
            continue;
        }
        // ∂z ū is the conjugate of ∂z̄ u.
        const std::complex<double> uz{d.dz.re[k], d.dz.im[k]};
        const std::complex<double> uzbar{d.dzbar.re[k], d.dzbar.im[k]};
        const double v = std::abs(weight.values[k] * uz * std::conj(uzbar) - 1.0);
        out.values[k] = v;
        out.mask[k] = is_regular(v) ? 1 : 0;
    }
    return out;
}

ScalarField target_metric_weight(const ComplexField& u, const MetricSample& metric) {
    const auto rx = partial_x(u.real_part());
    const auto ry = partial_y(u.real_part());
    const auto sx = partial_x(u.imag_part());
    const auto sy = partial_y(u.imag_part());
    ScalarField out(u.grid);
    for (std::size_t k = 0; k < u.grid.size(); ++k) {
        const bool ok = rx.mask[k] && ry.mask[k] && sx.mask[k] && sy.mask[k] && metric.E.mask[k] && metric.G.mask[k];
        const double du2 = rx.values[k] * rx.values[k] + ry.values[k] * ry.values[k] + sx.values[k] * sx.values[k] +
                           sy.values[k] * sy.values[k];
        if (!ok || !(du2 >= kSingularDenominator)) {
            out.mask[k] = 0;
            continue;
        }
        const double v = (metric.E.values[k] + metric.G.values[k]) / du2;
        out.values[k] = v;
        out.mask[k] = is_regular(v) ? 1 : 0;
    }
    return out;
}

std::string_view to_string(Convention c) {
    switch (c) {
    case Convention::minus_2w:
        return "exp(-2w)";
    case Convention::plus_2w:
        return "exp(+2w)";
    case Convention::none:
        break;
    }
    return "none";
}

CorrespondenceResult correspondence_check(const ComplexField& u, const ScalarField& w) {
    if (!(u.grid == w.grid)) {
        throw std::invalid_argument("correspondence_check: u and w live on different grids");
    }
    const auto d = wirtinger(u);
    ScalarField rm(u.grid);
    ScalarField rp(u.grid);
    for (std::size_t k = 0; k < u.grid.size(); ++k) {
        const std::complex<double> uz{d.dz.re[k], d.dz.im[k]};
        const bool ok = d.dz.mask[k] && w.mask[k] && std::abs(uz) >= kSingularDenominator;
        if (!ok) {
            rm.mask[k] = rp.mask[k] = 0;
            continue;
        }
        const std::complex<double> rho = std::complex<double>{d.dzbar.re[k], d.dzbar.im[k]} / uz;
        const double a = std::abs(rho - std::exp(-2 * w.values[k]));
        const double b = std::abs(rho - std::exp(2 * w.values[k]));
        rm.values[k] = a;
        rp.values[k] = b;
        rm.mask[k] = is_regular(a) ? 1 : 0;
        rp.mask[k] = is_regular(b) ? 1 : 0;
    }
    const auto nm = sup_norm(rm);
    const auto np = sup_norm(rp);
    if (nm.count < 100 || np.count < 100) {
        throw std::invalid_argument("correspondence_check: fewer than 100 points with a usable ratio");
    }
    CorrespondenceResult r{Convention::none, nm.sup, np.sup, nm.count, rm};
    if (nm.sup < 0.1 * np.sup) {
        r.convention = Convention::minus_2w;
    } else if (np.sup < 0.1 * nm.sup) {
        r.convention = Convention::plus_2w;
        r.residual = rp;
        r.count = np.count;
    }
    return r;
}

ScalarField eigen_ratio(const MetricSample& m) {
    ScalarField out(m.E.grid);
    for (std::size_t k = 0; k < out.grid.size(); ++k) {
        if (!m.E.mask[k] || !m.Fc.mask[k] || !m.G.mask[k]) {
            out.mask[k] = 0;
            continue;
        }
        const double e = m.E.values[k], f = m.Fc.values[k], g = m.G.values[k];
        const double mean = 0.5 * (e + g);
        const double spread = std::hypot(0.5 * (e - g), f);
        const double hi = mean + spread;
        const double v = hi > 0.0 ? (mean - spread) / hi : std::nan("");
        out.values[k] = v;
        out.mask[k] = is_regular(v) ? 1 : 0;
    }
    return out;
}

ScalarField gaussian_curvature(const MetricSample& m, const CurvatureGuard& guard) {
    const auto& g = m.E.grid;
    if (!(m.Fc.grid == g) || !(m.G.grid == g)) {
        throw std::invalid_argument("gaussian_curvature: coefficient fields live on different grids");
    }
    // A point takes part only when the metric there is non-degenerate.
    ScalarField E = m.E;
    ScalarField F = m.Fc;
    ScalarField G = m.G;
    const auto ratio = eigen_ratio(m);
    for (std::size_t k = 0; k < g.size(); ++k) {
        const bool ok = m.E.mask[k] && m.Fc.mask[k] && m.G.mask[k] && m.E.values[k] > 0.0 && m.G.values[k] > 0.0 &&
                        m.E.values[k] * m.G.values[k] - m.Fc.values[k] * m.Fc.values[k] >= guard.min_det &&
                        ratio.mask[k] && ratio.values[k] >= guard.min_eigen_ratio;
        E.mask[k] = F.mask[k] = G.mask[k] = ok ? 1 : 0;
    }
    const auto o = guard.order;
    const auto Ex = first_difference(E, Along::x, o), Ey = first_difference(E, Along::y, o);
    const auto Fx = first_difference(F, Along::x, o), Fy = first_difference(F, Along::y, o);
    const auto Gx = first_difference(G, Along::x, o), Gy = first_difference(G, Along::y, o);
    const auto Eyy = second_difference(E, Along::y, o);
    const auto Gxx = second_difference(G, Along::x, o);
    const auto Fxy = first_difference(Fx, Along::y, o);

    ScalarField K(g);
    for (std::size_t k = 0; k < g.size(); ++k) {
        const bool ok = E.mask[k] && Ex.mask[k] && Ey.mask[k] && Fx.mask[k] && Fy.mask[k] && Gx.mask[k] &&
                        Gy.mask[k] && Eyy.mask[k] && Gxx.mask[k] && Fxy.mask[k];
        if (!ok) {
            K.mask[k] = 0;
            K.values[k] = 0.0;
            continue;
        }
        const double e = E.values[k], f = F.values[k], gg = G.values[k];
        const double eu = Ex.values[k], ev = Ey.values[k];
        const double fu = Fx.values[k], fv = Fy.values[k];
        const double gu = Gx.values[k], gv = Gy.values[k];
        const double a11 = -0.5 * Eyy.values[k] + Fxy.values[k] - 0.5 * Gxx.values[k];
        const double d1 = det3(a11, 0.5 * eu, fu - 0.5 * ev, fv - 0.5 * gu, e, f, 0.5 * gv, f, gg);
        const double d2 = det3(0.0, 0.5 * ev, 0.5 * gu, 0.5 * ev, e, f, 0.5 * gu, f, gg);
        const double det = e * gg - f * f;
        const double v = (d1 - d2) / (det * det);
        K.values[k] = v;
        K.mask[k] = is_regular(v) ? 1 : 0;
    }
    return K;
}

MetricSample pullback_metric(const ComplexField& u, DifferenceOrder order) {
    const auto R = u.real_part();
    const auto S = u.imag_part();
    const auto rx = first_difference(R, Along::x, order), ry = first_difference(R, Along::y, order);
    const auto sx = first_difference(S, Along::x, order), sy = first_difference(S, Along::y, order);
    MetricSample m{ScalarField(u.grid), ScalarField(u.grid), ScalarField(u.grid)};
    for (std::size_t k = 0; k < u.grid.size(); ++k) {
        const double s = S.values[k];
        const bool ok = u.mask[k] && rx.mask[k] && ry.mask[k] && sx.mask[k] && sy.mask[k] && s > 0.0;
        if (!ok) {
            m.E.mask[k] = m.Fc.mask[k] = m.G.mask[k] = 0;
            continue;
        }
        const double is2 = 1.0 / (s * s);
        m.E.values[k] = (rx.values[k] * rx.values[k] + sx.values[k] * sx.values[k]) * is2;
        m.Fc.values[k] = (rx.values[k] * ry.values[k] + sx.values[k] * sy.values[k]) * is2;
        m.G.values[k] = (ry.values[k] * ry.values[k] + sy.values[k] * sy.values[k]) * is2;
    }
    return m;
}

MetricSample sample_metric(const Grid2D& grid, const PointFunction& E, const PointFunction& Fc,
                           const PointFunction& G) {
    return {sample(grid, E), sample(grid, Fc), sample(grid, G)};
}

}  // namespace gordon
