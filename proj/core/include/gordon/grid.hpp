#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace gordon {

/// A point is singular when a formula denominator falls below this magnitude.
inline constexpr double kSingularDenominator = 1e-8;
/// Intermediate values above this magnitude are treated as singular.
inline constexpr double kSingularMagnitude = 1e12;

/// Uniform rectangular sampling of [x0, x1] x [y0, y1].
///
/// Node (i, j) sits at (x0 + i*hx, y0 + j*hy). Storage order everywhere in
/// the library is row-major in y then x: index = j*nx + i.
class Grid2D {
public:
    /// Throws std::invalid_argument unless x1 > x0, y1 > y0 and nx, ny >= 5.
    Grid2D(double x0, double x1, double y0, double y1, int nx, int ny);

    double x0() const { return x0_; }
    double x1() const { return x1_; }
    double y0() const { return y0_; }
    double y1() const { return y1_; }
    int nx() const { return nx_; }
    int ny() const { return ny_; }
    double hx() const { return hx_; }
    double hy() const { return hy_; }

    double x(int i) const { return x0_ + i * hx_; }
    double y(int j) const { return y0_ + j * hy_; }
    std::size_t size() const { return static_cast<std::size_t>(nx_) * static_cast<std::size_t>(ny_); }
    std::size_t index(int i, int j) const {
        return static_cast<std::size_t>(j) * static_cast<std::size_t>(nx_) + static_cast<std::size_t>(i);
    }

    /// Column index whose abscissa equals `x` (to 1e-9 of a cell), if any.
    std::optional<int> column_at(double x) const;
    /// Row index whose ordinate equals `y` (to 1e-9 of a cell), if any.
    std::optional<int> row_at(double y) const;

    /// Same rectangle with both spacings halved.
    Grid2D refined() const;

    bool operator==(const Grid2D&) const = default;

private:
    double x0_, x1_, y0_, y1_;
    int nx_, ny_;
    double hx_, hy_;
};

Grid2D make_grid(double x0, double x1, double y0, double y1, int nx, int ny);

/// Grid on the rectangle with spacing `h` in both directions. Each side length
/// must be an integer multiple of h (to 1e-9 relative).
Grid2D grid_with_spacing(double x0, double x1, double y0, double y1, double h);

using Mask = std::vector<std::uint8_t>;
using PointFunction = std::function<double(double, double)>;
using ComplexPointFunction = std::function<std::complex<double>(double, double)>;

/// Real values on a grid with a validity mask (1 = valid).
struct ScalarField {
    Grid2D grid;
    std::vector<double> values;
    Mask mask;

    explicit ScalarField(const Grid2D& g);

    double operator()(int i, int j) const { return values[grid.index(i, j)]; }
    double& operator()(int i, int j) { return values[grid.index(i, j)]; }
    bool valid(int i, int j) const { return mask[grid.index(i, j)] != 0; }
    void invalidate(int i, int j) { mask[grid.index(i, j)] = 0; }
    std::size_t valid_count() const;
};

/// Complex values u = R + iS on a grid with a validity mask.
struct ComplexField {
    Grid2D grid;
    std::vector<double> re;
    std::vector<double> im;
    Mask mask;

    explicit ComplexField(const Grid2D& g);
    ComplexField(const ScalarField& real, const ScalarField& imag);

    std::complex<double> operator()(int i, int j) const {
        const auto k = grid.index(i, j);
        return {re[k], im[k]};
    }
    void set(int i, int j, std::complex<double> v) {
        const auto k = grid.index(i, j);
        re[k] = v.real();
        im[k] = v.imag();
    }
    bool valid(int i, int j) const { return mask[grid.index(i, j)] != 0; }
    std::size_t valid_count() const;

    ScalarField real_part() const;
    ScalarField imag_part() const;
};

/// True if `v` is finite and below the singularity magnitude.
inline bool is_regular(double v) {
    return v == v && v < kSingularMagnitude && v > -kSingularMagnitude;
}

/// Evaluate `f` at every node; non-finite or huge results are masked out.
ScalarField sample(const Grid2D& grid, const PointFunction& f);
ComplexField sample_complex(const Grid2D& grid, const ComplexPointFunction& f);

/// Sup norm over valid points, with the number of points it ran over.
struct FieldNorm {
    double sup = 0.0;
    std::size_t count = 0;
};
FieldNorm sup_norm(const ScalarField& f);

/// Pointwise f(a). Non-regular results are masked.
template <class F>
ScalarField transform(const ScalarField& a, F f) {
    ScalarField out(a.grid);
    for (std::size_t k = 0; k < a.values.size(); ++k) {
        if (!a.mask[k]) {
            out.mask[k] = 0;
            continue;
        }
        const double v = f(a.values[k]);
        out.values[k] = v;
        out.mask[k] = is_regular(v) ? 1 : 0;
    }
    return out;
}

/// Pointwise f(a, b) on the intersection of the masks.
template <class F>
ScalarField combine(const ScalarField& a, const ScalarField& b, F f) {
    ScalarField out(a.grid);
    for (std::size_t k = 0; k < a.values.size(); ++k) {
        if (!a.mask[k] || !b.mask[k]) {
            out.mask[k] = 0;
            continue;
        }
        const double v = f(a.values[k], b.values[k]);
        out.values[k] = v;
        out.mask[k] = is_regular(v) ? 1 : 0;
    }
    return out;
}

/// Second-order five-point Laplacian. Boundary nodes and nodes whose stencil
/// touches an invalid input are masked.
ScalarField laplacian(const ScalarField& f);

/// Second-order central differences; masked on the boundary and next to
/// invalid inputs.
ScalarField partial_x(const ScalarField& f);
ScalarField partial_y(const ScalarField& f);

struct WirtingerDerivatives {
    ComplexField dz;     ///< ½(u_x − i u_y)
    ComplexField dzbar;  ///< ½(u_x + i u_y)
};
WirtingerDerivatives wirtinger(const ComplexField& u);

/// Composite trapezoidal cumulative integral along each row, zero on the
/// column x = x_start. Throws if x_start is not a grid column. Values past an
/// invalid sample (walking away from the start column) are masked.
ScalarField cumulative_integral_x(const ScalarField& f, double x_start);
/// Column-wise counterpart of cumulative_integral_x.
ScalarField cumulative_integral_y(const ScalarField& f, double y_start);

/// One-dimensional cumulative trapezoid with spacing h, zero at index `start`.
/// Samples past an invalid one (walking away from `start`) are flagged invalid.
struct LineIntegral {
    std::vector<double> values;
    Mask valid;
};
LineIntegral cumulative_trapezoid(const std::vector<double>& f, const Mask& valid, double h, int start);

}  // namespace gordon
