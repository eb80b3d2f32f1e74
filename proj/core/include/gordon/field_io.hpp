#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "gordon/families.hpp"
#include "gordon/grid.hpp"
#include "gordon/profiles.hpp"

namespace gordon {

/// {x0, x1, y0, y1, nx, ny}
nlohmann::json grid_to_json(const Grid2D& g);
/// Throws std::invalid_argument on missing keys or an invalid grid.
Grid2D grid_from_json(const nlohmann::json& j);

/// Path of the grid sidecar written next to a field CSV: "<csv>.grid.json".
std::filesystem::path grid_sidecar_path(const std::filesystem::path& csv);

/// Writes `text` to a temporary file in the same directory, then renames it
/// over `path`, so readers never see a half-written file.
void write_text_atomic(const std::filesystem::path& path, const std::string& text);

/// CSV "x,y,value,valid", row-major in y then x, 17 significant digits, plus
/// the grid sidecar.
void write_field_csv(const ScalarField& f, const std::filesystem::path& path);
/// CSV "x,y,re,im,valid" plus the grid sidecar.
void write_complex_csv(const ComplexField& u, const std::filesystem::path& path);
/// CSV "x,y,E,Fc,G,valid" plus the grid sidecar.
void write_metric_csv(const MetricSample& m, const std::filesystem::path& path);
/// CSV "t,p,P,valid".
void write_profile_csv(const SampledProfile& p, const std::filesystem::path& path);

/// Reads a field written by write_field_csv, using its sidecar for the grid.
/// Throws std::runtime_error on I/O or format errors.
ScalarField read_field_csv(const std::filesystem::path& path);
ComplexField read_complex_csv(const std::filesystem::path& path);

}  // namespace gordon
