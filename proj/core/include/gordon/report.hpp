#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gordon/grid.hpp"

namespace gordon {

/// One verified quantity. `pass` is always `sup <= tolerance`; checks that are
/// reported for information only carry `gating = false` and do not affect the
/// overall verdict.
struct Check {
    std::string name;
    std::string anchor;  ///< equation label of the quantity being checked
    double sup = 0.0;
    std::size_t count = 0;
    double tolerance = 0.0;
    bool pass = false;
    bool gating = true;
    std::map<std::string, std::string> conventions;
    std::optional<Grid2D> grid;
    std::optional<double> convergence_ratio;
    std::string note;
};

/// Builds a check and sets `pass` from the numbers.
Check make_check(std::string name, std::string anchor, double sup, std::size_t count, double tolerance,
                 std::optional<Grid2D> grid = std::nullopt);

/// Ordered list of checks with an overall verdict over the gating ones.
struct VerificationReport {
    std::string subject;
    std::vector<Check> checks;

    void add(Check c) { checks.push_back(std::move(c)); }
    void append(const VerificationReport& other);
    bool all_pass() const;
    nlohmann::json to_json() const;
};

nlohmann::json check_to_json(const Check& c);

/// Serializes with a fixed key order and indentation, writes atomically.
void write_report(const VerificationReport& report, const std::filesystem::path& path);
void write_json(const nlohmann::json& j, const std::filesystem::path& path);

}  // namespace gordon
