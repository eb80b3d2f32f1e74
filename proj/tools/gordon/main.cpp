// gordon: evaluate, transform and verify the sinh-/sine-Gordon families from
// the command line. Exit codes: 0 all checks pass, 1 a check failed,
// 2 invalid configuration or input.
#include <cstdio>
#include <exception>
#include <functional>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "json_config.hpp"

namespace {

using namespace gordon::cli;

void add_tolerance(CLI::App* cmd, std::optional<double>& tol) {
    cmd->add_option("--tol", tol, "finite-difference tolerance (default: GORDON_TOL or 1e-3)");
}

void add_params(CLI::App* cmd, std::vector<std::string>& params) {
    cmd->add_option("--param", params, "family parameter as name=value (repeatable)");
}

void add_grid(CLI::App* cmd, std::string& grid, double& h) {
    cmd->add_option("--grid", grid,
                    "grid as inline JSON or a JSON file with x0,x1,y0,y1,nx,ny (default: recommended rectangle)");
    cmd->add_option("--spacing", h, "spacing on the recommended rectangle (default 1/400)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"gordon: sinh-Gordon / sine-Gordon families, Backlund transforms and harmonic maps"};
    app.require_subcommand(1);
    app.config_formatter(std::make_shared<JsonConfig>());
    app.set_config("--config", "", "JSON file with option values; command-line flags take precedence");
    app.allow_config_extras(false);

    std::function<int()> action;

    auto* families = app.add_subcommand("families", "family catalog");
    families->require_subcommand(1);

    ListConfig list;
    auto* list_cmd = families->add_subcommand("list", "print the catalog, one line per family");
    list_cmd->add_flag("--json", list.json, "machine-readable catalog");
    list_cmd->callback([&] { action = [&] { return cmd_list(list); }; });

    EvalConfig eval;
    auto* eval_cmd = families->add_subcommand("eval", "sample one family on a grid and write a CSV");
    eval_cmd->add_option("--family", eval.family, "family id")->required();
    add_params(eval_cmd, eval.params);
    add_grid(eval_cmd, eval.grid, eval.h);
    eval_cmd->add_option("--out", eval.out, "output CSV (a .grid.json sidecar is written next to it)")->required();
    eval_cmd->callback([&] { action = [&] { return cmd_eval(eval); }; });

    VerifyConfig verify;
    auto* verify_cmd = app.add_subcommand("verify", "run the designated checks of one family");
    verify_cmd->add_option("--family", verify.family, "family id")->required();
    add_params(verify_cmd, verify.params);
    verify_cmd->add_option("--rect", verify.rect, "x0 x1 y0 y1 (default: recommended rectangle)")->expected(4);
    verify_cmd->add_option("--spacing", verify.h, "grid spacing (default 1/400)");
    add_tolerance(verify_cmd, verify.tolerance);
    verify_cmd->add_flag("--no-convergence", verify.no_convergence, "skip the h/2 run and the order-2 ratio");
    verify_cmd->add_option("--json", verify.json, "write the report here");
    verify_cmd->add_option("--csv", verify.csv, "also write the sampled family field here");
    verify_cmd->add_flag("-v,--verbose", verify.verbose, "print every check");
    verify_cmd->callback([&] { action = [&] { return cmd_verify(verify); }; });

    BacklundConfig bl;
    auto* backlund = app.add_subcommand("backlund", "Backlund transform by quadrature");
    backlund->require_subcommand(1);
    auto* bl_run = backlund->add_subcommand("run", "march the partner field and check the pair");
    bl_run->add_option("--direction", bl.direction, "w2t: w -> theta, t2w: theta -> w")
        ->required()
        ->check(CLI::IsMember({"w2t", "t2w"}));
    bl_run->add_option("--family", bl.family, "source family (sinh family for w2t, sine family for t2w)")
        ->required();
    add_params(bl_run, bl.params);
    bl_run->add_option("--w00", bl.w00, "w at the seed point (t2w)");
    bl_run->add_option("--theta00", bl.theta00, "theta at the seed point (w2t)");
    bl_run->add_option("--source", bl.source, "derivatives from the formula or from grid samples")
        ->check(CLI::IsMember({"analytic", "sampled"}));
    add_grid(bl_run, bl.grid, bl.h);
    add_tolerance(bl_run, bl.tolerance);
    bl_run->add_option("--out", bl.out, "CSV of the marched field")->required();
    bl_run->add_option("--report", bl.report, "report JSON (default <out>.report.json)");
    bl_run->add_flag("-v,--verbose", bl.verbose, "print every check");
    bl_run->callback([&] { action = [&] { return cmd_backlund(bl); }; });

    auto* harmonic = app.add_subcommand("harmonic", "harmonic maps into the upper half-plane");
    harmonic->require_subcommand(1);

    HarmonicBuildConfig hb;
    auto* hb_cmd = harmonic->add_subcommand("build", "build u = R + iS from a Backlund pair by quadrature");
    hb_cmd->add_option("--pair", hb.pair, "family id with a Backlund partner, or w.csv,theta.csv")->required();
    add_params(hb_cmd, hb.params);
    hb_cmd->add_option("--R0", hb.R0, "R at the origin");
    hb_cmd->add_option("--S0", hb.S0, "S at the origin (> 0)");
    add_grid(hb_cmd, hb.grid, hb.h);
    add_tolerance(hb_cmd, hb.tolerance);
    hb_cmd->add_option("--out", hb.out, "prefix for <prefix>.u.csv, .I1-.I4.csv and .report.json")->required();
    hb_cmd->add_flag("-v,--verbose", hb.verbose, "print every check");
    hb_cmd->callback([&] { action = [&] { return cmd_harmonic_build(hb); }; });

    HarmonicVerifyConfig hv;
    auto* hv_cmd = harmonic->add_subcommand("verify", "Hopf, correspondence and curvature checks of a map");
    hv_cmd->add_option("--u", hv.u, "map CSV (x,y,re,im,valid)")->required();
    hv_cmd->add_option("--w", hv.w, "sinh-Gordon field CSV for the correspondence check");
    hv_cmd->add_option("--metric", hv.metric, "target metric family id for the Hopf weight");
    add_tolerance(hv_cmd, hv.tolerance);
    hv_cmd->add_option("--json", hv.json, "write the report here");
    hv_cmd->add_flag("-v,--verbose", hv.verbose, "print every check");
    hv_cmd->callback([&] { action = [&] { return cmd_harmonic_verify(hv); }; });

    AcceptanceConfig acc;
    auto* acc_cmd = app.add_subcommand("acceptance", "run the acceptance criteria");
    acc_cmd->add_flag("--quick", acc.quick, "coarse grid h = 1/100, finite-difference tolerances x16");
    acc_cmd->add_option("--criterion", acc.criteria, "criterion ids (default 1-9)")->check(CLI::Range(1, 9));
    acc_cmd->add_option("--json", acc.json, "write the report here");
    acc_cmd->add_flag("-v,--verbose", acc.verbose, "print every check");
    acc_cmd->callback([&] { action = [&] { return cmd_acceptance(acc); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::RequiredError) ||
            e.get_exit_code() == static_cast<int>(CLI::ExitCodes::ExtrasError)) {
            std::fprintf(stderr, "\n%s", app.help().c_str());
        }
        return kExitInvalidConfig;
    }

    try {
        return action ? action() : kExitInvalidConfig;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInvalidConfig;
    }
}
