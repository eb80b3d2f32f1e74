#include "gordon/field_io.hpp"

#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace gordon {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string read_all(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_sidecar(const Grid2D& g, const std::filesystem::path& csv) {
    write_text_atomic(grid_sidecar_path(csv), grid_to_json(g).dump(2) + "\n");
}

Grid2D read_sidecar(const std::filesystem::path& csv) {
    try {
        return grid_from_json(nlohmann::json::parse(read_all(grid_sidecar_path(csv))));
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("bad grid sidecar for " + csv.string() + ": " + e.what());
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error("bad grid sidecar for " + csv.string() + ": " + e.what());
    }
}

// Parses the data rows of a field CSV with `columns` numeric columns, the
// last being the 0/1 validity flag.
std::vector<std::vector<double>> read_rows(const std::filesystem::path& path, const std::string& header,
                                           std::size_t columns, std::size_t expected) {
    std::istringstream in(read_all(path));
    std::string line;
    if (!std::getline(in, line) || line != header) {
        throw std::runtime_error(path.string() + ": expected header '" + header + "'");
    }
    std::vector<std::vector<double>> rows;
    rows.reserve(expected);
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        std::vector<double> row;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            try {
                std::size_t used = 0;
                row.push_back(std::stod(cell, &used));
                if (used != cell.size()) {
                    throw std::invalid_argument(cell);
                }
            } catch (const std::logic_error&) {
                // stod rejects "nan"/"inf" on some platforms; those rows are invalid anyway.
                if (cell == "nan" || cell == "-nan" || cell == "inf" || cell == "-inf") {
                    row.push_back(std::numeric_limits<double>::quiet_NaN());
                } else {
                    throw std::runtime_error(path.string() + ": bad number '" + cell + "'");
                }
            }
        }
        if (row.size() != columns) {
            throw std::runtime_error(path.string() + ": wrong column count in '" + line + "'");
        }
        rows.push_back(std::move(row));
    }
    if (rows.size() != expected) {
        throw std::runtime_error(path.string() + ": expected " + std::to_string(expected) + " rows, got " +
                                 std::to_string(rows.size()));
    }
    return rows;
}

}  // namespace

nlohmann::json grid_to_json(const Grid2D& g) {
    return {{"x0", g.x0()}, {"x1", g.x1()}, {"y0", g.y0()}, {"y1", g.y1()}, {"nx", g.nx()}, {"ny", g.ny()}};
}

Grid2D grid_from_json(const nlohmann::json& j) {
    for (const char* key : {"x0", "x1", "y0", "y1", "nx", "ny"}) {
        if (!j.contains(key)) {
            throw std::invalid_argument(std::string("grid spec is missing '") + key + "'");
        }
    }
    return {j.at("x0").get<double>(), j.at("x1").get<double>(), j.at("y0").get<double>(), j.at("y1").get<double>(),
            j.at("nx").get<int>(),    j.at("ny").get<int>()};
}

std::filesystem::path grid_sidecar_path(const std::filesystem::path& csv) {
    return std::filesystem::path(csv.string() + ".grid.json");
}

void write_text_atomic(const std::filesystem::path& path, const std::string& text) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::runtime_error("cannot write " + tmp.string());
        }
        out << text;
        out.flush();
        if (!out) {
            throw std::runtime_error("write failed for " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

void write_field_csv(const ScalarField& f, const std::filesystem::path& path) {
    const auto& g = f.grid;
    std::string s = "x,y,value,valid\n";
    s.reserve(g.size() * 48);
    for (int j = 0; j < g.ny(); ++j) {
        for (int i = 0; i < g.nx(); ++i) {
            s += num(g.x(i)) + ',' + num(g.y(j)) + ',' + num(f(i, j)) + ',' + (f.valid(i, j) ? "1" : "0") + '\n';
        }
    }
    write_text_atomic(path, s);
    write_sidecar(g, path);
}

void write_complex_csv(const ComplexField& u, const std::filesystem::path& path) {
    const auto& g = u.grid;
    std::string s = "x,y,re,im,valid\n";
    for (int j = 0; j < g.ny(); ++j) {
        for (int i = 0; i < g.nx(); ++i) {
            const auto v = u(i, j);
            s += num(g.x(i)) + ',' + num(g.y(j)) + ',' + num(v.real()) + ',' + num(v.imag()) + ',' +
                 (u.valid(i, j) ? "1" : "0") + '\n';
        }
    }
    write_text_atomic(path, s);
    write_sidecar(g, path);
}

void write_metric_csv(const MetricSample& m, const std::filesystem::path& path) {
    const auto& g = m.E.grid;
    std::string s = "x,y,E,Fc,G,valid\n";
    for (int j = 0; j < g.ny(); ++j) {
        for (int i = 0; i < g.nx(); ++i) {
            const bool ok = m.E.valid(i, j) && m.Fc.valid(i, j) && m.G.valid(i, j);
            s += num(g.x(i)) + ',' + num(g.y(j)) + ',' + num(m.E(i, j)) + ',' + num(m.Fc(i, j)) + ',' +
                 num(m.G(i, j)) + ',' + (ok ? "1" : "0") + '\n';
        }
    }
    write_text_atomic(path, s);
    write_sidecar(g, path);
}

void write_profile_csv(const SampledProfile& p, const std::filesystem::path& path) {
    std::string s = "t,p,P,valid\n";
    for (int k = 0; k < p.axis.n; ++k) {
        s += num(p.axis.t(k)) + ',' + num(p.p[k]) + ',' + num(p.P[k]) + ',' + (p.valid[k] ? "1" : "0") + '\n';
    }
    write_text_atomic(path, s);
}

ScalarField read_field_csv(const std::filesystem::path& path) {
    const auto g = read_sidecar(path);
    const auto rows = read_rows(path, "x,y,value,valid", 4, g.size());
    ScalarField f(g);
    for (std::size_t k = 0; k < rows.size(); ++k) {
        f.values[k] = rows[k][2];
        f.mask[k] = (rows[k][3] != 0.0 && is_regular(rows[k][2])) ? 1 : 0;
    }
    return f;
}

ComplexField read_complex_csv(const std::filesystem::path& path) {
    const auto g = read_sidecar(path);
    const auto rows = read_rows(path, "x,y,re,im,valid", 5, g.size());
    ComplexField u(g);
    for (std::size_t k = 0; k < rows.size(); ++k) {
        u.re[k] = rows[k][2];
        u.im[k] = rows[k][3];
        u.mask[k] = (rows[k][4] != 0.0 && is_regular(rows[k][2]) && is_regular(rows[k][3])) ? 1 : 0;
    }
    return u;
}

}  // namespace gordon
