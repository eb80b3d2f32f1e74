#pragma once

#include <stdexcept>
#include <vector>

#include "gordon/grid.hpp"

namespace gordon {

enum class Axis { x, y };

/// Coefficients of a quartic first integral (p')² = q4 p⁴ + q2 p² + q0.
struct QuarticCoefficients {
    double q4 = 0.0;
    double q2 = 0.0;
    double q0 = 0.0;

    double operator()(double p) const { return (q4 * p * p + q2) * p * p + q0; }
};

/// One-dimensional profile: a quartic first integral plus initial data at t = 0.
struct QuarticProfile {
    double q4 = 0.0;
    double q2 = 0.0;
    double q0 = 0.0;
    double p_init = 0.0;
    double dp_init = 0.0;
    Axis direction = Axis::x;

    QuarticCoefficients coefficients() const { return {q4, q2, q0}; }
    /// (dp_init)² − quartic(p_init).
    double initial_defect() const;
    /// Throws std::invalid_argument when the initial data is off the first
    /// integral by more than 1e-12 relative.
    void validate() const;
};

/// Uniform samples t_k = t0 + k*h, k = 0..n-1.
struct AxisSamples {
    double t0 = 0.0;
    double h = 1.0;
    int n = 0;

    double t(int k) const { return t0 + k * h; }
};

AxisSamples x_axis(const Grid2D& g);
AxisSamples y_axis(const Grid2D& g);

/// A profile p sampled on an axis together with its antiderivative
/// P(t) = P0 + ∫₀ᵗ p (trapezoidal on the axis samples).
struct SampledProfile {
    AxisSamples axis;
    std::vector<double> p;
    std::vector<double> dp;
    std::vector<double> P;
    Mask valid;
    double P0 = 0.0;
};

/// Thrown when integration constants violate the compatibility relation that
/// ties the two profiles of a family together.
class ConstraintViolation : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct ProfileIntegrationOptions {
    int substeps = 8;               ///< RK4 steps per axis cell
    double blowup = 1e6;            ///< |p| beyond this aborts the profile
    double P0 = 0.0;                ///< antiderivative value at t = 0
    double breakdown_drift = 1e-6;  ///< relative first-integral defect that aborts the profile
};

/// Integrates p'' = 2 q4 p³ + q2 p (the derivative of the first integral)
/// outward from t = 0 with RK4 and returns p, p' and P on the axis.
///
/// The axis must contain t = 0 as one of its samples. Samples past a blow-up,
/// or past a node where the first integral is off by more than
/// `breakdown_drift` (relative), are masked.
SampledProfile integrate_profile(const QuarticProfile& spec, const AxisSamples& axis,
                                 const ProfileIntegrationOptions& options = {});

/// max_k |(p')² − quartic(p)| / (1 + |q0| + |q2| p² + |q4| p⁴) over valid samples.
double first_integral_drift(const QuarticProfile& spec, const SampledProfile& profile);

/// A pair of profiles describing one two-dimensional family, plus the phase
/// (A0 + B0 or C0 + D0) the PDE forces on the sum of antiderivatives.
struct ProfilePair {
    QuarticProfile first;   ///< x-profile (a, c or F)
    QuarticProfile second;  ///< y-profile (b, d or G)
    double phase = 0.0;
};

/// Constants of the sinh w = tan(A + B) family:
///   (a')² = −a⁴ + c1 a² + c2,   (b')² = −b⁴ + (8 − c1) b² + c3.
struct TanFamilyConstants {
    double c1 = 0.0;
    double c2 = 0.0;
    double c3 = 0.0;

    /// 4 c1 = 16 + c3 − c2.
    bool satisfies_constraint(double rtol = 1e-12) const;
};

/// Constants of the sin θ = tanh(C + D) family:
///   (c')² = c⁴ + c4 c² + c5,   (d')² = d⁴ − (8 + c4) d² + c6.
struct TanhFamilyConstants {
    double c4 = 0.0;
    double c5 = 0.0;
    double c6 = 0.0;

    /// 16 + 4 c4 = c6 − c5.
    bool satisfies_constraint(double rtol = 1e-12) const;
};

/// Constants of the tan(θ/2) = F G family:
///   F'² = A F⁴ + B F² + C,   G'² = C G⁴ − (4 + B) G² + A.
struct ProductFamilyConstants {
    double A = 0.0;
    double B = 0.0;
    double C = 0.0;
};

/// tan(A0 + B0) forced by the PDE at the origin: (a'(0) + b'(0)) / (4 − a(0)² − b(0)²).
double consistent_tan_phase(double a0, double da0, double b0, double db0);
/// tanh(C0 + D0) forced by the PDE at the origin: (c'(0) + d'(0)) / (c(0)² + d(0)² − 4).
/// Throws std::invalid_argument when that ratio is not inside (−1, 1).
double consistent_tanh_phase(double c0, double dc0, double d0, double dd0);

/// Throws ConstraintViolation if `k` breaks 4c1 = 16 + c3 − c2, and
/// std::invalid_argument if the initial data is off the first integrals.
ProfilePair tan_family_profiles(const TanFamilyConstants& k, double a0, double da0, double b0, double db0);
ProfilePair tanh_family_profiles(const TanhFamilyConstants& k, double c0, double dc0, double d0, double dd0);
ProfilePair product_family_profiles(const ProductFamilyConstants& k, double F0, double dF0, double G0, double dG0);

/// a(0) = b(0) = 0 specialisation: c2 = 16α², c3 = 16β², c1 = 4(1 − α² + β²),
/// a'(0) = 4α, b'(0) = 4β·sign_b.
ProfilePair tan_family_from_corollary(double alpha, double beta, int sign_b = 1);

/// Which reading of the c(0) = d(0) = 0 corollary to use for the tanh family.
enum class TanhCorollaryForm {
    resolved,         ///< c5 = 4γ², c6 = 4δ², c4 = δ² − γ² − 4
    printed_text,     ///< c5 = 16γ², c6 = 16δ², c4 = 4(γ² − δ² − 1)
    printed_display,  ///< (c')² = c⁴ + 4(1 + δ² − γ²) c² + 4γ² and its d twin
};

QuarticCoefficients tanh_corollary_c(TanhCorollaryForm form, double gamma, double delta);
QuarticCoefficients tanh_corollary_d(TanhCorollaryForm form, double gamma, double delta);

/// c(0) = d(0) = 0 specialisation in the resolved form, with
/// c'(0) = 2γ and d'(0) = 2δ·sign_d. Throws when the forced phase has no
/// real solution.
ProfilePair tanh_family_from_corollary(double gamma, double delta, int sign_d = -1);

/// sinh w = tan(A(x) + B(y)); nodes with |cos(A + B)| < 1e-8 are masked.
ScalarField assemble_tan_family(const SampledProfile& Ax, const SampledProfile& By, const Grid2D& grid);
/// sin θ = tanh(C(x) + D(y)), principal arcsin branch θ ∈ (−π/2, π/2).
ScalarField assemble_tanh_family(const SampledProfile& Cx, const SampledProfile& Dy, const Grid2D& grid);
/// θ = 2 arctan(F(x) G(y)); uses the profile values themselves.
ScalarField assemble_product_family(const SampledProfile& Fx, const SampledProfile& Gy, const Grid2D& grid);

/// Integrates both profiles of `pair` on the grid axes; the phase is put on
/// the x-profile antiderivative.
struct SampledPair {
    SampledProfile x;
    SampledProfile y;
};
SampledPair integrate_pair(const ProfilePair& pair, const Grid2D& grid, const ProfileIntegrationOptions& options = {});

}  // namespace gordon
