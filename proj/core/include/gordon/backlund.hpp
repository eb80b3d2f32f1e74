#pragma once

#include <functional>
#include <vector>

#include "gordon/grid.hpp"

namespace gordon {

enum class Provenance { both_given, w_constructed, theta_constructed };

/// A sinh-Gordon solution w and a sine-Gordon solution θ on one grid, related by
///   w_x − θ_y = −2 sinh w sin θ,   w_y + θ_x = −2 cosh w cos θ.
struct BacklundPair {
    ScalarField w;
    ScalarField theta;
    Provenance provenance = Provenance::both_given;
};

/// Throws std::invalid_argument if the grids differ.
BacklundPair make_backlund_pair(ScalarField w, ScalarField theta, Provenance provenance = Provenance::both_given);

struct BacklundResiduals {
    ScalarField r1;  ///< w_x − θ_y + 2 sinh w sin θ
    ScalarField r2;  ///< w_y + θ_x + 2 cosh w cos θ
};
BacklundResiduals backlund_residuals(const BacklundPair& pair);

/// A field that can be evaluated, with first derivatives, anywhere on the
/// grid lines a march visits.
///
/// analytic(): the formula itself, derivatives by a fourth-order central
/// difference with step 1e-3. sampled(): central differences of the samples
/// (one-sided second order on the boundary) and bicubic Lagrange
/// interpolation between nodes. Both return NaN where the data is invalid.
class FieldSource {
public:
    static FieldSource analytic(PointFunction f);
    static FieldSource sampled(const ScalarField& f);

    double value(double x, double y) const { return value_(x, y); }
    double dx(double x, double y) const { return dx_(x, y); }
    double dy(double x, double y) const { return dy_(x, y); }

private:
    PointFunction value_;
    PointFunction dx_;
    PointFunction dy_;
};

struct MarchOptions {
    int substeps = 8;      ///< RK4 steps per grid cell
    double blowup = 1e6;   ///< |field| beyond this stops the march
    double anchor_x = 0.0; ///< seed point; must be a grid node
    double anchor_y = 0.0;
};

/// Builds w from θ: march w_x = θ_y − 2 sinh w sin θ along the anchor row from
/// w(anchor) = w00, then each column with w_y = −θ_x − 2 cosh w cos θ.
ScalarField theta_to_w(const FieldSource& theta, const Grid2D& grid, double w00, const MarchOptions& options = {});
ScalarField theta_to_w(const ScalarField& theta, double w00, const MarchOptions& options = {});

/// Builds θ from w: march θ_y = w_x + 2 sinh w sin θ along the anchor column
/// from θ(anchor) = θ00, then each row with θ_x = −w_y − 2 cosh w cos θ.
ScalarField w_to_theta(const FieldSource& w, const Grid2D& grid, double theta00, const MarchOptions& options = {});
ScalarField w_to_theta(const ScalarField& w, double theta00, const MarchOptions& options = {});

struct Theta00Scan {
    double theta00 = 0.0;
    double sup_r1 = 0.0;
    double sup_r2 = 0.0;
    ScalarField theta;
};

/// Runs w_to_theta for each candidate θ00 and keeps the one with the smallest
/// max(sup|r1|, sup|r2|). Throws on an empty candidate list.
///
/// Given w the system for θ is compatible for every seed, so all candidates
/// produce genuine partners; the ranking only reflects discretization error
/// and does not single out a printed θ.
Theta00Scan scan_theta00(const FieldSource& w, const ScalarField& w_samples, const std::vector<double>& candidates,
                         const MarchOptions& options = {});

/// θ = 2 arctan(F(x) G(y)) data needed by the closed-form transform.
struct ProductThetaData {
    ScalarField theta;
    std::vector<double> K;  ///< K(y) = H'/H = −G'/G on the y axis (NaN where undefined)
    double dF0 = 0.0;       ///< F'(0); the closed form needs F'(0) = 0
};

enum class ProductFormula {
    printed,    ///< tanh(w/2) = (2 − K tan Y + r T) / (r + (2 − K tan Y) T)
    rederived,  ///< solution of the x-Riccati equation seeded by tanh(w(0,y)/2) = −tan Y
};

/// Closed-form w for the product family with w(0,0) = 0, where
/// Y(y) = ∫₀ʸ cos θ(0,s) ds, X(x,y) = ∫₀ˣ sin θ(t,y) dt, r = √(K² + 4),
/// T = tanh(r X / 2). Masked where |tanh(w/2)| ≥ 1. Throws if F'(0) ≠ 0 or the
/// grid lacks x = 0 / y = 0.
ScalarField closed_form_w_product(const ProductThetaData& data, ProductFormula formula = ProductFormula::printed);

/// sin θ = tanh(C(x) + D(y)) data needed by the closed-form transform.
struct TanhThetaData {
    ScalarField theta;
    std::vector<double> c;  ///< c(x) = C'(x) on the x axis
    double d0 = 0.0;        ///< d(0); the closed form needs d(0) = 0
};

/// tanh(w/2) = L (T0 + L tan(κY)) / (L − T0 tan(κY)), with
/// L = √|4 − c²| / (c − 2), κ = √|4 − c²| / 2, T0 = tanh(w00/2) e^{−2X},
/// X(x) = ∫₀ˣ sin θ(t,0) dt and Y(x,y) = ∫₀ʸ cos θ(x,s) ds.
ScalarField closed_form_w_tanh(const TanhThetaData& data, double w00);

}  // namespace gordon
