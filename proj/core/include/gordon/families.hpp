#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gordon/grid.hpp"

namespace gordon {

/// The closed-form solutions, harmonic maps and target metrics in the catalog.
enum class FamilyId {
    W_TAN_SPECIAL,
    W_ONE_SOLITON,
    THETA_CONST_HALFPI,
    THETA_EX2,
    W_EX2,
    THETA_SQRT2,
    W_SQRT2,
    U_EX_SECTION3,
    U_EX1,
    U_EX2,
    U_SQRT2,
    METRIC_SECTION3,
    METRIC_EX2,
};

enum class FamilyKind { sinh_solution, sine_solution, harmonic_map, target_metric };

/// Sign σ in Δθ = σ·2·sin 2θ.
enum class Sign { plus, minus, undetermined };

int sign_value(Sign s);  ///< +1, −1, or 0 for undetermined
std::string_view to_string(Sign s);
std::string_view to_string(FamilyKind k);
std::string_view to_string(FamilyId id);
/// Throws std::invalid_argument for unknown names.
FamilyId parse_family_id(std::string_view name);

struct Rect {
    double x0, x1, y0, y1;
};

struct FamilyParam {
    std::string name;
    double default_value;
    std::string description;
};

using FamilyParams = std::map<std::string, double>;

struct FamilyInfo {
    FamilyId id;
    FamilyKind kind;
    std::string anchor;   ///< equation label of the printed formula
    std::string formula;  ///< the formula, as evaluated
    std::vector<FamilyParam> params;
    Sign sign;  ///< recorded σ for sine families, undetermined otherwise
    std::optional<FamilyId> partner;        ///< Bäcklund / correspondence partner
    std::optional<FamilyId> target_metric;  ///< printed target metric of a harmonic map
};

/// All 13 entries, in FamilyId order.
const std::vector<FamilyInfo>& family_catalog();
const FamilyInfo& family_info(FamilyId id);

/// Defaults merged with `overrides`; unknown parameter names throw.
FamilyParams resolve_params(FamilyId id, const FamilyParams& overrides = {});

/// Rectangle on which the family is regular (depends on sign parameters).
Rect recommended_rect(FamilyId id, const FamilyParams& params = {});
/// Partner family with matching parameters (e.g. the soliton branch of U_EX1).
std::optional<std::pair<FamilyId, FamilyParams>> partner_of(FamilyId id, const FamilyParams& params = {});

/// Coefficients of E dx² + 2 Fc dx dy + G dy².
struct MetricSample {
    ScalarField E;
    ScalarField Fc;
    ScalarField G;
};

using FamilyValue = std::variant<ScalarField, ComplexField, MetricSample>;

/// Pointwise formula of a scalar family (w or θ); NaN where singular.
PointFunction scalar_formula(FamilyId id, const FamilyParams& params = {});
/// Pointwise formula u = R + iS of a harmonic-map family; NaN where singular.
ComplexPointFunction map_formula(FamilyId id, const FamilyParams& params = {});

FamilyValue eval_family(FamilyId id, const FamilyParams& params, const Grid2D& grid);
ScalarField eval_scalar(FamilyId id, const Grid2D& grid, const FamilyParams& params = {});
ComplexField eval_map(FamilyId id, const Grid2D& grid, const FamilyParams& params = {});
MetricSample eval_metric(FamilyId id, const Grid2D& grid, const FamilyParams& params = {});

/// Δw − 2 sinh 2w on the interior.
ScalarField residual_sinh_gordon(const ScalarField& w);
/// Δθ − σ·2 sin 2θ on the interior. `sigma` must be plus or minus.
ScalarField residual_sine_gordon(const ScalarField& theta, Sign sigma);

struct SignProbe {
    Sign sign = Sign::undetermined;
    double sup_plus = 0.0;   ///< sup |Δθ − 2 sin 2θ|
    double sup_minus = 0.0;  ///< sup |Δθ + 2 sin 2θ|
    std::size_t count = 0;
};

/// Picks the σ whose residual is below 0.1× the other. Returns undetermined
/// when neither wins or when sin 2θ vanishes on the whole field. Throws if
/// fewer than 100 interior points are valid.
SignProbe sign_probe(const ScalarField& theta);

}  // namespace gordon
