#include "gordon/report.hpp"

#include <algorithm>
#include <cmath>

#include "gordon/field_io.hpp"

namespace gordon {

namespace {

// JSON has no NaN or infinity.
nlohmann::json number(double v) {
    if (std::isfinite(v)) {
        return v;
    }
    return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}

}  // namespace

Check make_check(std::string name, std::string anchor, double sup, std::size_t count, double tolerance,
                 std::optional<Grid2D> grid) {
    Check c;
    c.name = std::move(name);
    c.anchor = std::move(anchor);
    c.sup = sup;
    c.count = count;
    c.tolerance = tolerance;
    c.pass = sup <= tolerance;
    c.grid = std::move(grid);
    return c;
}

void VerificationReport::append(const VerificationReport& other) {
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
}

bool VerificationReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return !c.gating || c.pass; });
}

nlohmann::json check_to_json(const Check& c) {
    nlohmann::json j;
    j["name"] = c.name;
    j["anchor"] = c.anchor;
    j["sup"] = number(c.sup);
    j["count"] = c.count;
    j["tolerance"] = number(c.tolerance);
    j["pass"] = c.pass;
    j["gating"] = c.gating;
    j["conventions"] = c.conventions;
    j["grid"] = c.grid ? grid_to_json(*c.grid) : nlohmann::json(nullptr);
    j["convergence_ratio"] = c.convergence_ratio ? number(*c.convergence_ratio) : nlohmann::json(nullptr);
    if (!c.note.empty()) {
        j["note"] = c.note;
    }
    return j;
}

nlohmann::json VerificationReport::to_json() const {
    nlohmann::json j;
    j["subject"] = subject;
    j["pass"] = all_pass();
    j["checks"] = nlohmann::json::array();
    for (const auto& c : checks) {
        j["checks"].push_back(check_to_json(c));
    }
    return j;
}

void write_json(const nlohmann::json& j, const std::filesystem::path& path) {
    write_text_atomic(path, j.dump(2) + "\n");
}

void write_report(const VerificationReport& report, const std::filesystem::path& path) {
    write_json(report.to_json(), path);
}

}  // namespace gordon
