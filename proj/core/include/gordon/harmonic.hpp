#pragma once

#include <optional>
#include <string_view>

#include "gordon/backlund.hpp"
#include "gordon/families.hpp"
#include "gordon/grid.hpp"

namespace gordon {

/// A map u = R + iS into the upper half-plane built from a Bäcklund pair by
/// quadrature, together with the four line integrals it came from.
struct HarmonicMapResult {
    ComplexField u;
    BacklundPair pair;
    double R0 = 0.0;
    double S0 = 1.0;
    ScalarField I1;  // depends on x only, repeated along each column
    ScalarField I2;
    ScalarField I3;  // depends on x only, repeated along each column
    ScalarField I4;
};

/// Builds u from (w, θ) with S(0,0) = S0 and R(0,0) = R0:
///
///   I1(x)   = ∫₀ˣ cosh w sin θ (t, 0) dt
///   I2(x,y) = ∫₀ʸ sinh w cos θ (x, s) ds
///   I3(x)   = ∫₀ˣ e^{2 I1} cosh w cos θ (t, 0) dt
///   I4(x,y) = e^{2 I1(x)} ∫₀ʸ e^{2 I2(x,s)} sinh w sin θ (x, s) ds
///
///   S = S0 e^{2(I1 + I2)},   R = R0 + 2 S0 (I3 − I4).
///
/// Throws std::invalid_argument if S0 <= 0 or the grid lacks x = 0 or y = 0.
HarmonicMapResult ppfd_construct(const BacklundPair& pair, double R0, double S0);

/// |e^F ∂z u · ∂z ū − 1| on the interior, with the Poincaré weight e^F = 1/S².
ScalarField hopf_residual(const ComplexField& u);
/// Same with an explicit conformal weight field e^F.
ScalarField hopf_residual(const ComplexField& u, const ScalarField& weight);

/// e^F = 1/S², masked where S is not positive.
ScalarField poincare_weight(const ComplexField& u);

/// Conformal factor of a target metric written in source coordinates:
/// e^F = (E + G) / (|u_x|² + |u_y|²). This is the weight for which the
/// printed metric equals e^F |du|² pulled back through u.
ScalarField target_metric_weight(const ComplexField& u, const MetricSample& metric);

enum class Convention { minus_2w, plus_2w, none };
std::string_view to_string(Convention c);

struct CorrespondenceResult {
    Convention convention = Convention::none;
    double sup_minus = 0.0;  ///< sup |ρ − e^{−2w}|
    double sup_plus = 0.0;   ///< sup |ρ − e^{+2w}|
    std::size_t count = 0;
    ScalarField residual;    ///< for the winning convention (the e^{−2w} one when none wins)
};

/// Compares ρ = ∂z̄u / ∂z u against e^{−2w} and e^{+2w}; a convention wins when
/// its sup is below 0.1× the other. Points with |∂z u| < 1e-8 are masked.
/// Throws std::invalid_argument if fewer than 100 points survive.
CorrespondenceResult correspondence_check(const ComplexField& u, const ScalarField& w);

/// Accuracy order of the central differences used for curvature work.
enum class DifferenceOrder { second, fourth };

/// Which metric points count as non-degenerate, and the difference order.
///
/// The eigenvalue-ratio guard is scale free, so it commutes with rescaling the
/// metric. Near a line where one eigenvalue vanishes (a polar-type coordinate
/// singularity, or a fold of a map) the finite-difference error grows like a
/// negative power of that ratio, and the guard cuts out a band around it.
struct CurvatureGuard {
    double min_det = 1e-10;        ///< EG − Fc² below this is degenerate
    double min_eigen_ratio = 0.0;  ///< λ_min / λ_max below this is degenerate
    DifferenceOrder order = DifferenceOrder::second;
};

/// Gaussian curvature of E dx² + 2Fc dx dy + G dy² by the Brioschi formula
/// with central differences. Masked on the boundary ring, where E or G is not
/// positive, and wherever the stencil touches a degenerate point.
ScalarField gaussian_curvature(const MetricSample& m, const CurvatureGuard& guard = {});

/// λ_min / λ_max of the coefficient matrix; NaN where invalid.
ScalarField eigen_ratio(const MetricSample& m);

/// First fundamental form of the Poincaré metric pulled back through u:
/// E = (R_x² + S_x²)/S², Fc = (R_x R_y + S_x S_y)/S², G = (R_y² + S_y²)/S².
MetricSample pullback_metric(const ComplexField& u, DifferenceOrder order = DifferenceOrder::second);

/// Metric with constant coefficients or built from point functions.
MetricSample sample_metric(const Grid2D& grid, const PointFunction& E, const PointFunction& Fc,
                           const PointFunction& G);

}  // namespace gordon
