#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gordon/families.hpp"
#include "gordon/grid.hpp"

namespace gordon::cli {

// Exit-code contract shared by every subcommand.
inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitInvalidConfig = 2;

// Thrown for anything the user got wrong: unknown ids, bad grids, unreadable
// inputs. Mapped to kExitInvalidConfig by main.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ListConfig {
    bool json = false;
};

struct EvalConfig {
    std::string family;
    std::vector<std::string> params;  // "name=value"
    std::string grid;                 // JSON text or path; empty means recommended rectangle
    double h = 0.0;                   // 0 means the default spacing
    std::string out;
};

struct VerifyConfig {
    std::string family;
    std::vector<std::string> params;
    std::vector<double> rect;  // x0 x1 y0 y1, empty means recommended
    double h = 0.0;
    std::optional<double> tolerance;
    bool no_convergence = false;
    std::string json;
    std::string csv;  // optional dump of the family field
    bool verbose = false;
};

struct BacklundConfig {
    std::string direction;  // "w2t" or "t2w"
    std::string family;
    std::vector<std::string> params;
    double w00 = 0.0;
    double theta00 = 0.0;
    std::string source = "analytic";
    std::string grid;
    double h = 0.0;
    std::optional<double> tolerance;
    std::string out;
    std::string report;  // defaults to "<out>.report.json"
    bool verbose = false;
};

struct HarmonicBuildConfig {
    std::string pair;  // family id, or "w.csv,theta.csv"
    std::vector<std::string> params;
    double R0 = 0.0;
    double S0 = 1.0;
    std::string grid;
    double h = 0.0;
    std::optional<double> tolerance;
    std::string out;  // prefix
    bool verbose = false;
};

struct HarmonicVerifyConfig {
    std::string u;
    std::string w;
    std::string metric;
    std::optional<double> tolerance;
    std::string json;
    bool verbose = false;
};

struct AcceptanceConfig {
    bool quick = false;
    std::vector<int> criteria;
    std::string json;
    bool verbose = false;
};

int cmd_list(const ListConfig& cfg);
int cmd_eval(const EvalConfig& cfg);
int cmd_verify(const VerifyConfig& cfg);
int cmd_backlund(const BacklundConfig& cfg);
int cmd_harmonic_build(const HarmonicBuildConfig& cfg);
int cmd_harmonic_verify(const HarmonicVerifyConfig& cfg);
int cmd_acceptance(const AcceptanceConfig& cfg);

// Helpers exposed for reuse and testing.
FamilyId family_or_throw(const std::string& name);
FamilyParams parse_params(const std::vector<std::string>& items);
// `spec` is inline JSON (starting with '{') or a path to a JSON file.
Grid2D grid_from_spec(const std::string& spec);

}  // namespace gordon::cli
