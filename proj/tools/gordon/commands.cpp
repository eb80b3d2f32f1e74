#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <type_traits>
#include <variant>

#include <nlohmann/json.hpp>

#include "gordon/acceptance.hpp"
#include "gordon/backlund.hpp"
#include "gordon/field_io.hpp"
#include "gordon/harmonic.hpp"
#include "gordon/report.hpp"
#include "gordon/verify.hpp"

namespace gordon::cli {

namespace {

using nlohmann::json;

double tolerance_or_env(const std::optional<double>& tol) {
    if (tol) {
        if (!(*tol > 0.0) || !std::isfinite(*tol)) {
            throw ConfigError("tolerance must be a positive number");
        }
        return *tol;
    }
    return tolerance_from_env();
}

double spacing_or_default(double h) {
    if (h == 0.0) {
        return kDefaultSpacing;
    }
    if (!(h > 0.0) || !std::isfinite(h)) {
        throw ConfigError("--spacing must be a positive number");
    }
    return h;
}

Grid2D grid_for(const std::string& spec, FamilyId id, const FamilyParams& params, double h) {
    if (!spec.empty()) {
        return grid_from_spec(spec);
    }
    const auto r = recommended_rect(id, params);
    return grid_with_spacing(r.x0, r.x1, r.y0, r.y1, spacing_or_default(h));
}

std::string rect_text(const Rect& r) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "[%g,%g]x[%g,%g]", r.x0, r.x1, r.y0, r.y1);
    return buf;
}

void print_report(const VerificationReport& report, bool verbose) {
    std::size_t gating = 0;
    std::size_t passed = 0;
    for (const auto& c : report.checks) {
        if (c.gating) {
            ++gating;
            passed += c.pass ? 1 : 0;
        }
        if (!verbose && c.gating && c.pass) {
            continue;
        }
        const char* status = !c.gating ? "info" : (c.pass ? "ok" : "FAIL");
        std::printf("  %-4s %-45s sup=%-12.4g tol=%-9.3g n=%zu", status, c.name.c_str(), c.sup, c.tolerance,
                    c.count);
        if (c.convergence_ratio) {
            std::printf("  ratio=%.4f", *c.convergence_ratio);
        }
        for (const auto& [k, v] : c.conventions) {
            std::printf("  %s=%s", k.c_str(), v.c_str());
        }
        std::printf("\n");
    }
    std::printf("%s: %s (%zu/%zu checks)\n", report.subject.c_str(), report.all_pass() ? "PASS" : "FAIL", passed,
                gating);
}

int verdict(const VerificationReport& report) { return report.all_pass() ? kExitPass : kExitCheckFailed; }

Check field_check(const std::string& name, const std::string& anchor, const ScalarField& residual, double tol) {
    const auto n = sup_norm(residual);
    return make_check(name, anchor, n.sup, n.count, tol, residual.grid);
}

// Residual of a sine-Gordon field under the probed σ; both signs when the
// probe cannot decide, reported for information.
void add_sine_checks(VerificationReport& report, const ScalarField& theta, const std::string& anchor, double tol,
                     json& probe_json) {
    const auto probe = sign_probe(theta);
    probe_json = {{"sigma", std::string(to_string(probe.sign))},
                  {"sup_plus", probe.sup_plus},
                  {"sup_minus", probe.sup_minus},
                  {"count", probe.count}};
    if (probe.sign != Sign::undetermined) {
        auto c = field_check("sine_gordon_residual", anchor, residual_sine_gordon(theta, probe.sign), tol);
        c.conventions["sigma"] = std::string(to_string(probe.sign));
        report.add(std::move(c));
        return;
    }
    for (const auto s : {Sign::plus, Sign::minus}) {
        auto c = field_check("sine_gordon_residual", anchor, residual_sine_gordon(theta, s), tol);
        c.conventions["sigma"] = std::string(to_string(s));
        c.gating = false;
        c.note = "sign probe undetermined";
        report.add(std::move(c));
    }
}

void add_backlund_checks(VerificationReport& report, const BacklundPair& pair, const std::string& anchor,
                         double tol) {
    const auto r = backlund_residuals(pair);
    report.add(field_check("backlund_r1", anchor, r.r1, tol));
    report.add(field_check("backlund_r2", anchor, r.r2, tol));
}

std::filesystem::path with_suffix(const std::string& prefix, const std::string& suffix) {
    return std::filesystem::path(prefix + suffix);
}

}  // namespace

FamilyId family_or_throw(const std::string& name) {
    try {
        return parse_family_id(name);
    } catch (const std::invalid_argument&) {
        throw ConfigError("unknown family id '" + name + "' (see `gordon families list`)");
    }
}

FamilyParams parse_params(const std::vector<std::string>& items) {
    FamilyParams out;
    for (const auto& item : items) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw ConfigError("--param expects name=value, got '" + item + "'");
        }
        const auto value = item.substr(eq + 1);
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(value, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != value.size() || !std::isfinite(v)) {
            throw ConfigError("--param value is not a number: '" + item + "'");
        }
        out[item.substr(0, eq)] = v;
    }
    return out;
}

Grid2D grid_from_spec(const std::string& spec) {
    json j;
    try {
        if (!spec.empty() && spec.front() == '{') {
            j = json::parse(spec);
        } else {
            std::ifstream in(spec);
            if (!in) {
                throw ConfigError("cannot open grid file '" + spec + "'");
            }
            j = json::parse(in);
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("grid is not valid JSON: ") + e.what());
    }
    try {
        return grid_from_json(j);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("invalid grid: ") + e.what());
    }
}

int cmd_list(const ListConfig& cfg) {
    if (cfg.json) {
        json arr = json::array();
        for (const auto& f : family_catalog()) {
            json params = json::array();
            for (const auto& p : f.params) {
                params.push_back({{"name", p.name}, {"default", p.default_value}, {"description", p.description}});
            }
            const auto r = recommended_rect(f.id);
            arr.push_back({{"id", std::string(to_string(f.id))},
                           {"kind", std::string(to_string(f.kind))},
                           {"anchor", f.anchor},
                           {"formula", f.formula},
                           {"params", params},
                           {"rect", {r.x0, r.x1, r.y0, r.y1}},
                           {"sign", std::string(to_string(f.sign))},
                           {"partner", f.partner ? json(std::string(to_string(*f.partner))) : json(nullptr)},
                           {"target_metric", f.target_metric ? json(std::string(to_string(*f.target_metric)))
                                                             : json(nullptr)}});
        }
        std::printf("%s\n", arr.dump(2).c_str());
        return kExitPass;
    }
    for (const auto& f : family_catalog()) {
        std::string params;
        for (const auto& p : f.params) {
            params += (params.empty() ? "" : ",") + p.name;
        }
        std::printf("%-18s %-14s %-22s params=%-14s rect=%-26s sign=%s\n", std::string(to_string(f.id)).c_str(),
                    std::string(to_string(f.kind)).c_str(), f.anchor.c_str(), params.empty() ? "-" : params.c_str(),
                    rect_text(recommended_rect(f.id)).c_str(), std::string(to_string(f.sign)).c_str());
    }
    return kExitPass;
}

int cmd_eval(const EvalConfig& cfg) {
    const auto id = family_or_throw(cfg.family);
    const auto params = parse_params(cfg.params);
    const auto grid = grid_for(cfg.grid, id, params, cfg.h);
    const auto value = eval_family(id, params, grid);
    std::size_t valid = 0;
    std::visit(
        [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, ScalarField>) {
                write_field_csv(v, cfg.out);
                valid = v.valid_count();
            } else if constexpr (std::is_same_v<T, ComplexField>) {
                write_complex_csv(v, cfg.out);
                valid = v.valid_count();
            } else {
                write_metric_csv(v, cfg.out);
                for (std::size_t k = 0; k < grid.size(); ++k) {
                    valid += (v.E.mask[k] && v.Fc.mask[k] && v.G.mask[k]) ? 1 : 0;
                }
            }
        },
        value);
    std::printf("%s: %zu of %zu points valid, written to %s\n", cfg.family.c_str(), valid, grid.size(),
                cfg.out.c_str());
    return kExitPass;
}

int cmd_verify(const VerifyConfig& cfg) {
    const auto id = family_or_throw(cfg.family);
    VerifyOptions opt;
    opt.params = parse_params(cfg.params);
    opt.h = spacing_or_default(cfg.h);
    opt.tolerance = tolerance_or_env(cfg.tolerance);
    opt.convergence = !cfg.no_convergence;
    if (!cfg.rect.empty()) {
        if (cfg.rect.size() != 4) {
            throw ConfigError("--rect expects x0 x1 y0 y1");
        }
        opt.rect = Rect{cfg.rect[0], cfg.rect[1], cfg.rect[2], cfg.rect[3]};
    }
    const auto report = verify_family(id, opt);
    print_report(report, cfg.verbose);
    if (!cfg.json.empty()) {
        write_report(report, cfg.json);
    }
    if (!cfg.csv.empty()) {
        const auto r = opt.rect ? *opt.rect : recommended_rect(id, opt.params);
        EvalConfig e;
        e.family = cfg.family;
        e.params = cfg.params;
        e.grid = grid_to_json(grid_with_spacing(r.x0, r.x1, r.y0, r.y1, opt.h)).dump();
        e.out = cfg.csv;
        cmd_eval(e);
    }
    return verdict(report);
}

int cmd_backlund(const BacklundConfig& cfg) {
    const bool t2w = cfg.direction == "t2w";
    if (!t2w && cfg.direction != "w2t") {
        throw ConfigError("--direction must be w2t or t2w");
    }
    if (cfg.source != "analytic" && cfg.source != "sampled") {
        throw ConfigError("--source must be analytic or sampled");
    }
    const auto id = family_or_throw(cfg.family);
    const auto& info = family_info(id);
    const auto wanted = t2w ? FamilyKind::sine_solution : FamilyKind::sinh_solution;
    if (info.kind != wanted) {
        throw ConfigError(cfg.family + " is a " + std::string(to_string(info.kind)) + ", direction " + cfg.direction +
                          " needs a " + std::string(to_string(wanted)));
    }
    const auto params = parse_params(cfg.params);
    const auto grid = grid_for(cfg.grid, id, params, cfg.h);
    const double tol = tolerance_or_env(cfg.tolerance);

    const auto given = eval_scalar(id, grid, params);
    const auto source = cfg.source == "analytic" ? FieldSource::analytic(scalar_formula(id, params))
                                                 : FieldSource::sampled(given);
    ScalarField built = t2w ? theta_to_w(source, grid, cfg.w00) : w_to_theta(source, grid, cfg.theta00);
    const auto pair = t2w ? make_backlund_pair(built, given, Provenance::w_constructed)
                          : make_backlund_pair(given, built, Provenance::theta_constructed);

    VerificationReport report;
    report.subject = std::string("backlund ") + cfg.direction + " from " + cfg.family;
    add_backlund_checks(report, pair, info.anchor, tol);
    report.add(field_check("sinh_gordon_residual", info.anchor, residual_sinh_gordon(pair.w), tol));
    json probe;
    add_sine_checks(report, pair.theta, info.anchor, tol, probe);
    if (const auto partner = partner_of(id, params)) {
        const auto printed = eval_scalar(partner->first, grid, partner->second);
        auto c = field_check("against_" + std::string(to_string(partner->first)), family_info(partner->first).anchor,
                             combine(built, printed, [](double a, double b) { return a - b; }), tol);
        c.gating = false;
        c.note = "informational: depends on the seed value matching the printed field";
        report.add(std::move(c));
    }

    write_field_csv(built, cfg.out);
    auto j = report.to_json();
    j["direction"] = cfg.direction;
    j["source"] = cfg.source;
    j["seed"] = t2w ? cfg.w00 : cfg.theta00;
    j["sign_probe"] = probe;
    write_json(j, cfg.report.empty() ? cfg.out + ".report.json" : cfg.report);
    print_report(report, cfg.verbose);
    return verdict(report);
}

int cmd_harmonic_build(const HarmonicBuildConfig& cfg) {
    if (cfg.out.empty()) {
        throw ConfigError("--out prefix is required");
    }
    const double tol = tolerance_or_env(cfg.tolerance);
    std::string anchor = "supplied pair";
    const auto pair = [&]() -> BacklundPair {
        if (const auto comma = cfg.pair.find(','); comma != std::string::npos) {
            try {
                return make_backlund_pair(read_field_csv(cfg.pair.substr(0, comma)),
                                          read_field_csv(cfg.pair.substr(comma + 1)));
            } catch (const std::exception& e) {
                throw ConfigError(std::string("cannot load pair: ") + e.what());
            }
        }
        const auto id = family_or_throw(cfg.pair);
        const auto params = parse_params(cfg.params);
        const auto& info = family_info(id);
        const auto partner = partner_of(id, params);
        const bool scalar = info.kind == FamilyKind::sinh_solution || info.kind == FamilyKind::sine_solution;
        if (!scalar || !partner) {
            throw ConfigError(cfg.pair + " has no Backlund partner; pass a sinh- or sine-Gordon family with one");
        }
        const auto grid = grid_for(cfg.grid, id, params, cfg.h);
        auto a = eval_scalar(id, grid, params);
        auto b = eval_scalar(partner->first, grid, partner->second);
        anchor = info.anchor;
        return info.kind == FamilyKind::sinh_solution ? make_backlund_pair(std::move(a), std::move(b))
                                                      : make_backlund_pair(std::move(b), std::move(a));
    }();

    const auto result = ppfd_construct(pair, cfg.R0, cfg.S0);
    auto report = verify_map(result.u, &pair.w, std::nullopt, tol);
    report.subject = "harmonic build from " + cfg.pair;
    add_backlund_checks(report, pair, anchor, tol);

    write_complex_csv(result.u, with_suffix(cfg.out, ".u.csv"));
    write_field_csv(result.I1, with_suffix(cfg.out, ".I1.csv"));
    write_field_csv(result.I2, with_suffix(cfg.out, ".I2.csv"));
    write_field_csv(result.I3, with_suffix(cfg.out, ".I3.csv"));
    write_field_csv(result.I4, with_suffix(cfg.out, ".I4.csv"));
    auto j = report.to_json();
    j["R0"] = cfg.R0;
    j["S0"] = cfg.S0;
    write_json(j, with_suffix(cfg.out, ".report.json"));
    print_report(report, cfg.verbose);
    return verdict(report);
}

int cmd_harmonic_verify(const HarmonicVerifyConfig& cfg) {
    const double tol = tolerance_or_env(cfg.tolerance);
    const auto load = [](auto reader, const std::string& path) {
        try {
            return reader(path);
        } catch (const std::exception& e) {
            throw ConfigError("cannot load " + path + ": " + e.what());
        }
    };
    const auto u = load([](const std::string& p) { return read_complex_csv(p); }, cfg.u);
    std::optional<ScalarField> w;
    if (!cfg.w.empty()) {
        w = load([](const std::string& p) { return read_field_csv(p); }, cfg.w);
    }
    std::optional<FamilyId> metric;
    if (!cfg.metric.empty()) {
        metric = family_or_throw(cfg.metric);
    }
    auto report = verify_map(u, w ? &*w : nullptr, metric, tol);
    report.subject = "harmonic verify " + cfg.u;
    print_report(report, cfg.verbose);
    if (!cfg.json.empty()) {
        write_report(report, cfg.json);
    }
    return verdict(report);
}

int cmd_acceptance(const AcceptanceConfig& cfg) {
    AcceptanceOptions options;
    options.quick = cfg.quick;
    options.tolerance = tolerance_from_env();
    auto ids = cfg.criteria;
    if (ids.empty()) {
        for (int k = 1; k <= kCriterionCount; ++k) {
            ids.push_back(k);
        }
    }
    const auto report = run_acceptance(options, ids);
    for (const auto& c : report.criteria) {
        std::printf("%s  [%.2f s]\n", summary_line(c).c_str(), c.seconds);
        if (cfg.verbose || !c.pass()) {
            VerificationReport r = c.report;
            r.subject = "criterion " + std::to_string(c.id);
            print_report(r, cfg.verbose);
        }
    }
    if (!cfg.json.empty()) {
        write_json(report.to_json(), cfg.json);
    }
    return report.all_pass() ? kExitPass : kExitCheckFailed;
}

}  // namespace gordon::cli
