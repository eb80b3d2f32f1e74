#pragma once

#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "gordon/report.hpp"

namespace gordon {

struct AcceptanceOptions {
    bool quick = false;                 ///< h = 1/100 with finite-difference tolerances ×16
    double tolerance = 1e-3;            ///< base finite-difference tolerance
    double time_budget_seconds = 300.0; ///< limit for the full run (criterion 9)
};

/// Resolved numbers used by every criterion.
struct AcceptanceSettings {
    double h;
    double fd_tol;          ///< PDE, Bäcklund, Hopf, correspondence and curvature residuals
    double transport_tol;   ///< marched fields against their printed counterparts (5e-4)
    double quadrature_tol;  ///< line integrals against printed closed forms (1e-6)
    double closed_form_tol; ///< closed-form transforms against printed fields (1e-4)
    double poincare_tol;    ///< curvature of the Poincaré control metric (1e-6)
};
AcceptanceSettings acceptance_settings(const AcceptanceOptions& options);

struct CriterionResult {
    int id = 0;
    std::string title;
    VerificationReport report;
    double seconds = 0.0;
    std::vector<std::pair<std::string, double>> timings;  ///< per-item wall time, not serialized

    bool pass() const { return report.all_pass(); }
};

inline constexpr int kCriterionCount = 9;

/// Runs one criterion (1..9). Criterion 9 runs 1..8 twice and compares the
/// serialized reports. Throws std::out_of_range for other ids.
CriterionResult run_criterion(int id, const AcceptanceOptions& options);

struct AcceptanceReport {
    AcceptanceOptions options;
    std::vector<CriterionResult> criteria;

    bool all_pass() const;
    /// Deterministic: no wall-clock data.
    nlohmann::json to_json() const;
};

AcceptanceReport run_acceptance(const AcceptanceOptions& options, const std::vector<int>& ids);

/// "criterion N: PASS  title  (passed/gating checks)".
std::string summary_line(const CriterionResult& r);

}  // namespace gordon
