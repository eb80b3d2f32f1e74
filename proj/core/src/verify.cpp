#include "gordon/verify.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "gordon/backlund.hpp"

namespace gordon {

namespace {

Grid2D grid_on(const Rect& r, double h) { return grid_with_spacing(r.x0, r.x1, r.y0, r.y1, h); }

FieldNorm shifted_sup(const ScalarField& f, double shift) {
    return sup_norm(transform(f, [shift](double v) { return v + shift; }));
}

std::string sign_label(double s) { return s < 0 ? "-1" : "+1"; }

// Bäcklund residuals of a (w, θ) pair of catalog formulas on one grid.
void add_backlund_checks(VerificationReport& report, FamilyId w_id, const FamilyParams& w_params, FamilyId t_id,
                         const Rect& rect, const VerifyOptions& opt, bool gating, const std::string& note) {
    const auto anchor = family_info(w_id).anchor + " / " + family_info(t_id).anchor;
    for (int which = 1; which <= 2; ++which) {
        const auto norm = [=](const Grid2D& g) {
            const auto r = backlund_residuals(make_backlund_pair(eval_scalar(w_id, g, w_params), eval_scalar(t_id, g)));
            return sup_norm(which == 1 ? r.r1 : r.r2);
        };
        auto checks = refined_check("backlund_r" + std::to_string(which), anchor, rect, opt.h, opt.tolerance, norm,
                                    opt.convergence && gating);
        for (auto& c : checks) {
            c.gating = gating;
            c.note = note;
            report.add(std::move(c));
        }
    }
}

Check curvature_check(const std::string& name, const std::string& anchor, const MetricSample& m, double tol) {
    const auto K = gaussian_curvature(m, acceptance_curvature_guard());
    const auto n = shifted_sup(K, 1.0);
    auto c = make_check(name, anchor, n.sup, n.count, tol, m.E.grid);
    if (n.count == 0) {
        c.pass = false;
        c.note = "no non-degenerate points";
    }
    c.conventions["difference_order"] = "4";
    return c;
}

// Largest deviation from "pullback = λ · target" over the valid points.
Check conformality_check(const MetricSample& pullback, const MetricSample& target, const std::string& anchor,
                         double tol) {
    FieldNorm n;
    for (std::size_t k = 0; k < pullback.E.values.size(); ++k) {
        if (!pullback.E.mask[k] || !pullback.G.mask[k] || !pullback.Fc.mask[k] || !target.E.mask[k] ||
            !target.G.mask[k]) {
            continue;
        }
        const double e = pullback.E.values[k], f = pullback.Fc.values[k], g = pullback.G.values[k];
        const double te = target.E.values[k], tg = target.G.values[k];
        const double scale = e * tg + g * te;
        if (!(scale > kSingularDenominator)) {
            continue;
        }
        const double dev = std::max(std::abs(e * tg - g * te) / scale, std::abs(f) / (e + g));
        n.sup = std::max(n.sup, dev);
        ++n.count;
    }
    auto c = make_check("pullback_conformal_to_target", anchor, n.sup, n.count, tol, pullback.E.grid);
    c.note = "pulled-back Poincare metric is diagonal with the target's E:G ratio";
    return c;
}

void add_map_checks(VerificationReport& report, const ComplexField& u, const ScalarField* w,
                    std::optional<FamilyId> metric, const std::string& anchor, double tol) {
    const auto& g = u.grid;
    const auto hopf_p = sup_norm(hopf_residual(u));
    auto poincare = make_check("hopf_poincare_weight", anchor, hopf_p.sup, hopf_p.count, tol, g);
    if (metric) {
        const auto target = eval_metric(*metric, g);
        const auto hopf_t = sup_norm(hopf_residual(u, target_metric_weight(u, target)));
        auto c = make_check("hopf_target_metric_weight", anchor + " with " + family_info(*metric).anchor, hopf_t.sup,
                            hopf_t.count, tol, g);
        report.add(std::move(c));
        poincare.gating = false;
        poincare.note = "informational: this map is harmonic for its printed target metric, not for 1/S^2";
        report.add(std::move(poincare));
        report.add(conformality_check(pullback_metric(u, DifferenceOrder::fourth), target, family_info(*metric).anchor, tol));
    } else {
        report.add(std::move(poincare));
    }
    if (w) {
        const auto cr = correspondence_check(u, *w);
        auto c = make_check("correspondence", anchor, sup_norm(cr.residual).sup, cr.count, tol, g);
        c.conventions["ratio"] = std::string(to_string(cr.convention));
        if (cr.convention == Convention::none) {
            c.pass = false;
            c.note = "neither exp(-2w) nor exp(+2w) wins";
        }
        report.add(std::move(c));
    }
    report.add(curvature_check("pullback_curvature_plus_one", anchor, pullback_metric(u, DifferenceOrder::fourth),
                               tol));
}

}  // namespace

double tolerance_from_env(double fallback) {
    const char* env = std::getenv("GORDON_TOL");
    if (env == nullptr || *env == '\0') {
        return fallback;
    }
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0.0) || !std::isfinite(v)) {
        throw std::invalid_argument(std::string("GORDON_TOL must be a positive number, got '") + env + "'");
    }
    return v;
}

CurvatureGuard acceptance_curvature_guard() { return {1e-10, 0.01, DifferenceOrder::fourth}; }

std::vector<Check> refined_check(const std::string& name, const std::string& anchor, const Rect& rect, double h,
                                 double tolerance, const NormOnGrid& norm, bool convergence) {
    const auto g = grid_on(rect, h);
    const auto coarse = norm(g);
    std::vector<Check> out;
    out.push_back(make_check(name, anchor, coarse.sup, coarse.count, tolerance, g));
    if (coarse.count == 0) {
        out.back().pass = false;
        out.back().note = "no valid points";
    }
    if (!convergence) {
        return out;
    }
    if (coarse.sup <= kRatioFloor) {
        out.back().note = "residual at round-off level; no convergence ratio formed";
        return out;
    }
    const auto fine = norm(g.refined());
    const double ratio = fine.sup > 0.0 ? coarse.sup / fine.sup : std::numeric_limits<double>::infinity();
    out.back().convergence_ratio = ratio;
    auto order = make_check(name + "/order2", anchor, std::abs(ratio - 4.0), fine.count, 0.5, g.refined());
    order.convergence_ratio = ratio;
    order.note = "sup(h) / sup(h/2) must lie in [3.5, 4.5]";
    out.push_back(std::move(order));
    return out;
}

VerificationReport verify_family(FamilyId id, const VerifyOptions& opt) {
    const auto& info = family_info(id);
    const auto p = resolve_params(id, opt.params);
    const Rect rect = opt.rect.value_or(recommended_rect(id, p));
    VerificationReport report;
    report.subject = std::string(to_string(id));
    const auto add_all = [&report](std::vector<Check> cs) {
        for (auto& c : cs) {
            report.add(std::move(c));
        }
    };

    switch (info.kind) {
    case FamilyKind::sinh_solution: {
        const auto norm = [id, p](const Grid2D& g) { return sup_norm(residual_sinh_gordon(eval_scalar(id, g, p))); };
        add_all(refined_check("sinh_gordon_residual", info.anchor, rect, opt.h, opt.tolerance, norm, opt.convergence));
        if (id == FamilyId::W_ONE_SOLITON) {
            const double s = p.at("exponent_sign");
            const bool compatible = s < 0;
            add_backlund_checks(report, id, p, FamilyId::THETA_CONST_HALFPI, rect, opt, compatible,
                                compatible ? "exp(-2x) variant pairs with theta = pi/2"
                                           : "informational: printed exp(+2x) gives r1 = 4 sinh w against theta = pi/2");
            report.checks.back().conventions["exponent_sign"] = sign_label(s);
        } else if (info.partner) {
            add_backlund_checks(report, id, p, *info.partner, rect, opt, true, "");
        }
        break;
    }
    case FamilyKind::sine_solution: {
        const auto g = grid_on(rect, opt.h);
        const auto probe = sign_probe(eval_scalar(id, g, p));
        const auto sigma = probe.sign;
        if (sigma == Sign::undetermined) {
            // Both equations have to hold, since sin 2θ vanishes identically.
            for (const auto s : {Sign::plus, Sign::minus}) {
                const auto norm = [id, p, s](const Grid2D& gg) {
                    return sup_norm(residual_sine_gordon(eval_scalar(id, gg, p), s));
                };
                auto cs = refined_check(std::string("sine_gordon_residual_sigma") + std::string(to_string(s)),
                                        info.anchor, rect, opt.h, opt.tolerance, norm, opt.convergence);
                cs.front().conventions["sigma"] = "undetermined";
                add_all(std::move(cs));
            }
        } else {
            const auto norm = [id, p, sigma](const Grid2D& gg) {
                return sup_norm(residual_sine_gordon(eval_scalar(id, gg, p), sigma));
            };
            auto cs = refined_check("sine_gordon_residual", info.anchor, rect, opt.h, opt.tolerance, norm,
                                    opt.convergence);
            cs.front().conventions["sigma"] = std::string(to_string(sigma));
            cs.front().note = "probe sup: sigma=+1 " + std::to_string(probe.sup_plus) + ", sigma=-1 " +
                              std::to_string(probe.sup_minus);
            add_all(std::move(cs));
        }
        if (info.partner && id != FamilyId::THETA_CONST_HALFPI) {
            add_backlund_checks(report, *info.partner, {}, id, rect, opt, true, "");
        }
        break;
    }
    case FamilyKind::harmonic_map: {
        const auto g = grid_on(rect, opt.h);
        const auto u = eval_map(id, g, p);
        std::optional<ScalarField> w;
        if (const auto partner = partner_of(id, p)) {
            w = eval_scalar(partner->first, g, partner->second);
        }
        add_map_checks(report, u, w ? &*w : nullptr, info.target_metric, info.anchor, opt.tolerance);
        if (opt.convergence) {
            // Ratio for whichever Hopf check gates this map.
            const auto metric = info.target_metric;
            const auto norm = [id, p, metric](const Grid2D& gg) {
                const auto uu = eval_map(id, gg, p);
                return metric ? sup_norm(hopf_residual(uu, target_metric_weight(uu, eval_metric(*metric, gg))))
                              : sup_norm(hopf_residual(uu));
            };
            auto cs = refined_check(metric ? "hopf_target_metric_weight" : "hopf_poincare_weight", info.anchor, rect,
                                    opt.h, opt.tolerance, norm, true);
            if (cs.size() > 1) {
                report.add(std::move(cs[1]));
            }
        }
        break;
    }
    case FamilyKind::target_metric: {
        const auto g = grid_on(rect, opt.h);
        report.add(curvature_check("gaussian_curvature_plus_one", info.anchor, eval_metric(id, g, p), opt.tolerance));
        break;
    }
    }
    return report;
}

VerificationReport verify_map(const ComplexField& u, const ScalarField* w, std::optional<FamilyId> metric,
                              double tolerance) {
    if (w && !(w->grid == u.grid)) {
        throw std::invalid_argument("verify_map: w lives on a different grid than u");
    }
    if (metric && family_info(*metric).kind != FamilyKind::target_metric) {
        throw std::invalid_argument("verify_map: " + std::string(to_string(*metric)) + " is not a target metric");
    }
    VerificationReport report;
    report.subject = "map";
    add_map_checks(report, u, w, metric, "supplied map", tolerance);
    return report;
}

}  // namespace gordon
