#include "gordon/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace gordon {

Grid2D::Grid2D(double x0, double x1, double y0, double y1, int nx, int ny)
    : x0_(x0), x1_(x1), y0_(y0), y1_(y1), nx_(nx), ny_(ny), hx_(0.0), hy_(0.0) {
    if (!std::isfinite(x0) || !std::isfinite(x1) || !std::isfinite(y0) || !std::isfinite(y1)) {
        throw std::invalid_argument("grid bounds must be finite");
    }
    if (!(x1 > x0) || !(y1 > y0)) {
        throw std::invalid_argument("grid bounds must satisfy x1 > x0 and y1 > y0");
    }
    if (nx < 5 || ny < 5) {
        throw std::invalid_argument("grid needs at least 5 samples per axis, got " + std::to_string(nx) +
                                    "x" + std::to_string(ny));
    }
    hx_ = (x1 - x0) / (nx - 1);
    hy_ = (y1 - y0) / (ny - 1);
}

namespace {

std::optional<int> line_at(double v, double v0, double h, int n) {
    const double s = (v - v0) / h;
    const double r = std::round(s);
    if (std::abs(s - r) > 1e-9 || r < 0 || r > n - 1) {
        return std::nullopt;
    }
    return static_cast<int>(r);
}

int count_for(double a, double b, double h) {
    const double cells = (b - a) / h;
    const double r = std::round(cells);
    if (!(h > 0) || std::abs(cells - r) > 1e-9 * std::max(1.0, r)) {
        throw std::invalid_argument("side length is not a multiple of the spacing");
    }
    return static_cast<int>(r) + 1;
}

}  // namespace

std::optional<int> Grid2D::column_at(double x) const { return line_at(x, x0_, hx_, nx_); }

std::optional<int> Grid2D::row_at(double y) const { return line_at(y, y0_, hy_, ny_); }

Grid2D Grid2D::refined() const { return {x0_, x1_, y0_, y1_, 2 * nx_ - 1, 2 * ny_ - 1}; }

Grid2D make_grid(double x0, double x1, double y0, double y1, int nx, int ny) {
    return {x0, x1, y0, y1, nx, ny};
}

Grid2D grid_with_spacing(double x0, double x1, double y0, double y1, double h) {
    return {x0, x1, y0, y1, count_for(x0, x1, h), count_for(y0, y1, h)};
}

ScalarField::ScalarField(const Grid2D& g) : grid(g), values(g.size(), 0.0), mask(g.size(), 1) {}

std::size_t ScalarField::valid_count() const {
    return static_cast<std::size_t>(std::count(mask.begin(), mask.end(), std::uint8_t{1}));
}

ComplexField::ComplexField(const Grid2D& g) : grid(g), re(g.size(), 0.0), im(g.size(), 0.0), mask(g.size(), 1) {}

ComplexField::ComplexField(const ScalarField& real, const ScalarField& imag)
    : grid(real.grid), re(real.values), im(imag.values), mask(real.mask) {
    if (!(real.grid == imag.grid)) {
        throw std::invalid_argument("real and imaginary parts live on different grids");
    }
    for (std::size_t k = 0; k < mask.size(); ++k) {
        mask[k] = (real.mask[k] && imag.mask[k]) ? 1 : 0;
    }
}

std::size_t ComplexField::valid_count() const {
    return static_cast<std::size_t>(std::count(mask.begin(), mask.end(), std::uint8_t{1}));
}

ScalarField ComplexField::real_part() const {
    ScalarField f(grid);
    f.values = re;
    f.mask = mask;
    return f;
}

ScalarField ComplexField::imag_part() const {
    ScalarField f(grid);
    f.values = im;
    f.mask = mask;
    return f;
}

ScalarField sample(const Grid2D& grid, const PointFunction& f) {
    ScalarField out(grid);
    for (int j = 0; j < grid.ny(); ++j) {
        for (int i = 0; i < grid.nx(); ++i) {
            const double v = f(grid.x(i), grid.y(j));
            const auto k = grid.index(i, j);
            out.values[k] = v;
            out.mask[k] = is_regular(v) ? 1 : 0;
        }
    }
    return out;
}

ComplexField sample_complex(const Grid2D& grid, const ComplexPointFunction& f) {
    ComplexField out(grid);
    for (int j = 0; j < grid.ny(); ++j) {
        for (int i = 0; i < grid.nx(); ++i) {
            const auto v = f(grid.x(i), grid.y(j));
            const auto k = grid.index(i, j);
            out.re[k] = v.real();
            out.im[k] = v.imag();
            out.mask[k] = (is_regular(v.real()) && is_regular(v.imag())) ? 1 : 0;
        }
    }
    return out;
}

FieldNorm sup_norm(const ScalarField& f) {
    FieldNorm n;
    for (std::size_t k = 0; k < f.values.size(); ++k) {
        if (f.mask[k]) {
            n.sup = std::max(n.sup, std::abs(f.values[k]));
            ++n.count;
        }
    }
    return n;
}

ScalarField laplacian(const ScalarField& f) {
    const auto& g = f.grid;
    ScalarField out(g);
    const double ihx2 = 1.0 / (g.hx() * g.hx());
    const double ihy2 = 1.0 / (g.hy() * g.hy());
    for (int j = 0; j < g.ny(); ++j) {
        for (int i = 0; i < g.nx(); ++i) {
            const auto k = g.index(i, j);
            if (i == 0 || j == 0 || i == g.nx() - 1 || j == g.ny() - 1 || !f.valid(i, j) || !f.valid(i - 1, j) ||
                !f.valid(i + 1, j) || !f.valid(i, j - 1) || !f.valid(i, j + 1)) {
                out.mask[k] = 0;
                out.values[k] = 0.0;
                continue;
            }
            const double c = f(i, j);
            out.values[k] = (f(i + 1, j) - 2.0 * c + f(i - 1, j)) * ihx2 + (f(i, j + 1) - 2.0 * c + f(i, j - 1)) * ihy2;
        }
    }
    return out;
}

ScalarField partial_x(const ScalarField& f) {
    const auto& g = f.grid;
    ScalarField out(g);
    const double s = 0.5 / g.hx();
    for (int j = 0; j < g.ny(); ++j) {
        for (int i = 0; i < g.nx(); ++i) {
            const auto k = g.index(i, j);
            if (i == 0 || i == g.nx() - 1 || !f.valid(i, j) || !f.valid(i - 1, j) || !f.valid(i + 1, j)) {
                out.mask[k] = 0;
                out.values[k] = 0.0;
                continue;
            }
            out.values[k] = (f(i + 1, j) - f(i - 1, j)) * s;
        }
    }
    return out;
}

ScalarField partial_y(const ScalarField& f) {
    const auto& g = f.grid;
    ScalarField out(g);
    const double s = 0.5 / g.hy();
    for (int j = 0; j < g.ny(); ++j) {
        for (int i = 0; i < g.nx(); ++i) {
            const auto k = g.index(i, j);
            if (j == 0 || j == g.ny() - 1 || !f.valid(i, j) || !f.valid(i, j - 1) || !f.valid(i, j + 1)) {
                out.mask[k] = 0;
                out.values[k] = 0.0;
                continue;
            }
            out.values[k] = (f(i, j + 1) - f(i, j - 1)) * s;
        }
    }
    return out;
}

WirtingerDerivatives wirtinger(const ComplexField& u) {
    const auto re = u.real_part();
    const auto im = u.imag_part();
    const auto rx = partial_x(re);
    const auto ry = partial_y(re);
    const auto sx = partial_x(im);
    const auto sy = partial_y(im);

    WirtingerDerivatives d{ComplexField(u.grid), ComplexField(u.grid)};
    for (std::size_t k = 0; k < u.grid.size(); ++k) {
        const bool ok = rx.mask[k] && ry.mask[k] && sx.mask[k] && sy.mask[k];
        d.dz.mask[k] = d.dzbar.mask[k] = ok ? 1 : 0;
        if (!ok) {
            continue;
        }
        // u_x = rx + i sx, u_y = ry + i sy
        d.dz.re[k] = 0.5 * (rx.values[k] + sy.values[k]);
        d.dz.im[k] = 0.5 * (sx.values[k] - ry.values[k]);
        d.dzbar.re[k] = 0.5 * (rx.values[k] - sy.values[k]);
        d.dzbar.im[k] = 0.5 * (sx.values[k] + ry.values[k]);
    }
    return d;
}

ScalarField cumulative_integral_x(const ScalarField& f, double x_start) {
    const auto& g = f.grid;
    const auto start = g.column_at(x_start);
    if (!start) {
        throw std::invalid_argument("cumulative_integral_x: start line is not a grid column");
    }
    const int i0 = *start;
    const double half = 0.5 * g.hx();
    ScalarField out(g);
    std::fill(out.mask.begin(), out.mask.end(), std::uint8_t{0});
    for (int j = 0; j < g.ny(); ++j) {
        if (!f.valid(i0, j)) {
            continue;
        }
        out(i0, j) = 0.0;
        out.mask[g.index(i0, j)] = 1;
        double acc = 0.0;
        for (int i = i0 + 1; i < g.nx() && f.valid(i, j); ++i) {
            acc += half * (f(i - 1, j) + f(i, j));
            out(i, j) = acc;
            out.mask[g.index(i, j)] = 1;
        }
        acc = 0.0;
        for (int i = i0 - 1; i >= 0 && f.valid(i, j); --i) {
            acc -= half * (f(i + 1, j) + f(i, j));
            out(i, j) = acc;
            out.mask[g.index(i, j)] = 1;
        }
    }
    return out;
}

ScalarField cumulative_integral_y(const ScalarField& f, double y_start) {
    const auto& g = f.grid;
    const auto start = g.row_at(y_start);
    if (!start) {
        throw std::invalid_argument("cumulative_integral_y: start line is not a grid row");
    }
    const int j0 = *start;
    const double half = 0.5 * g.hy();
    ScalarField out(g);
    std::fill(out.mask.begin(), out.mask.end(), std::uint8_t{0});
    for (int i = 0; i < g.nx(); ++i) {
        if (!f.valid(i, j0)) {
            continue;
        }
        out(i, j0) = 0.0;
        out.mask[g.index(i, j0)] = 1;
        double acc = 0.0;
        for (int j = j0 + 1; j < g.ny() && f.valid(i, j); ++j) {
            acc += half * (f(i, j - 1) + f(i, j));
            out(i, j) = acc;
            out.mask[g.index(i, j)] = 1;
        }
        acc = 0.0;
        for (int j = j0 - 1; j >= 0 && f.valid(i, j); --j) {
            acc -= half * (f(i, j + 1) + f(i, j));
            out(i, j) = acc;
            out.mask[g.index(i, j)] = 1;
        }
    }
    return out;
}

LineIntegral cumulative_trapezoid(const std::vector<double>& f, const Mask& valid, double h, int start) {
    const int n = static_cast<int>(f.size());
    if (start < 0 || start >= n || valid.size() != f.size()) {
        throw std::invalid_argument("cumulative_trapezoid: bad start index or mask size");
    }
    LineIntegral out{std::vector<double>(f.size(), 0.0), Mask(f.size(), 0)};
    if (!valid[start]) {
        return out;
    }
    out.valid[start] = 1;
    const double half = 0.5 * h;
    double acc = 0.0;
    for (int k = start + 1; k < n && valid[k]; ++k) {
        acc += half * (f[k - 1] + f[k]);
        out.values[k] = acc;
        out.valid[k] = 1;
    }
    acc = 0.0;
    for (int k = start - 1; k >= 0 && valid[k]; --k) {
        acc -= half * (f[k + 1] + f[k]);
        out.values[k] = acc;
        out.valid[k] = 1;
    }
    return out;
}

}  // namespace gordon
