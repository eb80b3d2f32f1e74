#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gordon/families.hpp"
#include "gordon/grid.hpp"
#include "gordon/harmonic.hpp"
#include "gordon/report.hpp"

namespace gordon {

inline constexpr double kDefaultTolerance = 1e-3;
inline constexpr double kDefaultSpacing = 1.0 / 400.0;

/// Order-2 convergence band for the ratio sup(h) / sup(h/2).
inline constexpr double kRatioLow = 3.5;
inline constexpr double kRatioHigh = 4.5;
/// Below this the coarse sup norm is round-off, and no ratio is formed.
inline constexpr double kRatioFloor = 1e-10;

/// Finite-difference tolerance: GORDON_TOL when set to a positive number,
/// `fallback` otherwise. Throws std::invalid_argument on a malformed value.
double tolerance_from_env(double fallback = kDefaultTolerance);

/// Settings used for the curvature of printed and pulled-back metrics.
CurvatureGuard acceptance_curvature_guard();

struct VerifyOptions {
    double h = kDefaultSpacing;
    double tolerance = kDefaultTolerance;
    bool convergence = true;  ///< also run at h/2 and check the ratio
    std::optional<Rect> rect; ///< defaults to the family's recommended rectangle
    FamilyParams params;
};

/// A norm computed on a grid, re-evaluated on the refined grid for the ratio.
using NormOnGrid = std::function<FieldNorm(const Grid2D&)>;

/// Runs `norm` at spacing h (and h/2 when `convergence`), returning the
/// tolerance check and, when a ratio was formed, a second check named
/// "<name>/order2" with sup = |ratio − 4| and tolerance 0.5.
std::vector<Check> refined_check(const std::string& name, const std::string& anchor, const Rect& rect, double h,
                                 double tolerance, const NormOnGrid& norm, bool convergence);

/// The designated checks of one family:
///   sinh_solution  sinh-Gordon residual, plus Bäcklund residuals with its partner;
///   sine_solution  σ probe and sine-Gordon residual for the probed σ;
///   harmonic_map   Hopf condition, correspondence with the partner w, curvature
///                  of the pulled-back metric;
///   target_metric  Gaussian curvature.
/// Throws std::invalid_argument on bad parameters.
VerificationReport verify_family(FamilyId id, const VerifyOptions& options = {});

/// Checks on a user-supplied map (and optionally its w and a target metric).
VerificationReport verify_map(const ComplexField& u, const ScalarField* w, std::optional<FamilyId> metric,
                              double tolerance);

}  // namespace gordon
