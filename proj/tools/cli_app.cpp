#include "cli_app.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "subplan/reporting.hpp"

namespace subplan::cli {

namespace {

struct GlobalArgs {
    std::string scenario_path;
    bool csv = false;
    std::optional<std::uint64_t> seed;
    std::optional<int> runs;
    std::optional<int> periods;
    std::optional<std::string> out_path;
};

Scenario apply_overrides(Scenario scenario, const GlobalArgs& args) {
    if (args.seed) {
        scenario.seed = *args.seed;
    }
    if (args.runs) {
        scenario.runs = *args.runs;
    }
    if (args.periods) {
        scenario.periods = *args.periods;
    }
    if (scenario.runs < 1 || scenario.periods < 1) {
        throw ScenarioError("runs and periods must be >= 1");
    }
    return scenario;
}

Scenario resolve_scenario(const GlobalArgs& args) {
    if (args.scenario_path.empty()) {
        throw ScenarioError("missing --scenario <path>");
    }
    return apply_overrides(load_scenario_file(args.scenario_path), args);
}

// The reproduction grids carry their own parameters; a scenario file is
// optional and only contributes runs/periods/seed.
Scenario resolve_scenario_or_default(const GlobalArgs& args) {
    if (!args.scenario_path.empty()) {
        return resolve_scenario(args);
    }
    Scenario scenario;
    scenario.market = {500, 0.5, 1.0, 0.85, 0.97};
    scenario.lambda = 0.5;
    return apply_overrides(scenario, args);
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Demand-uncertainty, advance-commitment and subscription-discount "
                 "planning for e-grocery SKUs"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand

    GlobalArgs global;
    app.add_option("--scenario", global.scenario_path, "Scenario file (key = value)");
    app.add_flag("--csv", global.csv, "Machine-readable CSV output");
    app.add_option("--seed", global.seed, "Override the scenario master seed");
    app.add_option("--runs", global.runs, "Override the scenario run count");
    app.add_option("--periods", global.periods, "Override the evaluation period count");
    app.add_option("--out", global.out_path, "Write output to a file instead of stdout");

    auto* analyze = app.add_subcommand("analyze", "Baseline profit decomposition");

    double adi_beta = 0.0;
    auto* adi = app.add_subcommand("adi", "Value of a committed demand share");
    adi->add_option("--beta", adi_beta, "Committed share in [0, 1]")->required();

    double sub_tau = -1.0;
    double sub_beta = 0.0;
    auto* subscribe = app.add_subcommand("subscribe", "Subscription profit at fixed terms");
    subscribe->add_option("--tau", sub_tau, "Discount per unit (defaults to scenario tau)");
    subscribe->add_option("--beta", sub_beta, "Subscribing share in [0, 1]")->required();

    OptimizeRequest optimize_request;
    bool no_refine = false;
    std::string grid_out;
    auto* optimize = app.add_subcommand("optimize", "Profit-maximizing discount");
    optimize->add_flag("--simulated", optimize_request.simulated,
                       "Search on the simulated mean profit");
    optimize->add_flag("--no-refine", no_refine, "Report the raw 0.1% grid argmax");
    optimize->add_option("--grid-out", grid_out, "Write the scanned discount curve as CSV");

    std::string trace_path;
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo study of one scenario");
    simulate->add_option("--trace", trace_path, "Write a per-run CSV trace");

    SweepRequest sweep_request;
    std::string sweep_param;
    std::string sweep_mode = "baseline";
    double sweep_lo = 0.0;
    double sweep_hi = 0.0;
    double sweep_step = 0.0;
    std::optional<double> sweep_beta;
    std::optional<double> sweep_tau;
    auto* sweep = app.add_subcommand("sweep", "Grid over one parameter");
    int sweep_count = 0;
    sweep->add_option("--param", sweep_param, "n, pi, c, beta, tau or lambda")->required();
    sweep->add_option("--from", sweep_lo, "Grid start")->required();
    sweep->add_option("--to", sweep_hi, "Grid end")->required();
    auto* step_opt = sweep->add_option("--step", sweep_step, "Grid step");
    sweep->add_option("--count", sweep_count, "Number of grid points (alternative to --step)")
        ->excludes(step_opt);
    sweep->add_option("--mode", sweep_mode, "baseline, adi, subscription or optimize");
    sweep->add_option("--beta", sweep_beta, "Fixed share for adi/subscription modes");
    sweep->add_option("--tau", sweep_tau, "Fixed discount for subscription mode");
    sweep->add_flag("--simulated", sweep_request.simulated,
                    "optimize mode: simulated objective");

    std::string reproduce_target;
    auto* reproduce = app.add_subcommand("reproduce", "Reference tables and figure series");
    reproduce->add_option("target", reproduce_target, "table1..table3, fig2..fig9")
        ->required();

    EstimateRequest estimate_request;
    std::string estimate_category;
    std::string estimate_frequencies;
    auto* estimate = app.add_subcommand("estimate", "Buying probabilities from an order log");
    estimate->add_option("--log", estimate_request.log_path, "Order-log CSV")->required();
    estimate->add_option("--category", estimate_category, "Category to estimate");
    estimate->add_option("--segment", estimate_request.segment,
                         "Customer ids forming the segment (default: all)")
        ->delimiter(',');
    estimate->add_option("--frequencies", estimate_frequencies,
                         "Emit the per-category frequency table of one customer");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            // --help and friends print through CLI11's machinery.
            std::ostringstream help;
            const int code = app.exit(e, help, help);
            out << help.str();
            return code;
        }
        err << "error: " << e.what() << '\n';
        return 1;
    }

    const OutputOptions options{global.csv};
    std::ofstream file_out;
    std::ostream* sink = &out;
    try {
        if (global.out_path) {
            file_out.open(*global.out_path);
            if (!file_out) {
                throw ScenarioError("cannot open '" + *global.out_path + "'");
            }
            sink = &file_out;
        }

        if (analyze->parsed()) {
            cmd_analyze(resolve_scenario(global), options, *sink);
        } else if (adi->parsed()) {
            cmd_adi(resolve_scenario(global), adi_beta, options, *sink);
        } else if (subscribe->parsed()) {
            const Scenario scenario = resolve_scenario(global);
            double tau = sub_tau;
            if (tau < 0.0) {
                if (!scenario.tau) {
                    throw ScenarioError("subscribe: need --tau or a scenario 'tau'");
                }
                tau = *scenario.tau;
            }
            cmd_subscribe(scenario, tau, sub_beta, options, *sink);
        } else if (optimize->parsed()) {
            optimize_request.refine = !no_refine;
            if (!grid_out.empty()) {
                optimize_request.grid_out = grid_out;
            }
            cmd_optimize(resolve_scenario(global), optimize_request, options, *sink);
        } else if (simulate->parsed()) {
            cmd_simulate(resolve_scenario(global),
                         trace_path.empty() ? std::nullopt
                                            : std::optional<std::string>(trace_path),
                         options, *sink);
        } else if (sweep->parsed()) {
            sweep_request.spec.parameter = parse_sweep_parameter(sweep_param);
            sweep_request.spec.lo = sweep_lo;
            sweep_request.spec.hi = sweep_hi;
            if (sweep_count > 0) {
                if (sweep_count < 2) {
                    throw ScenarioError("sweep: --count must be >= 2");
                }
                sweep_request.spec.step = (sweep_hi - sweep_lo) / (sweep_count - 1);
            } else if (sweep->count("--step") == 0) {
                throw ScenarioError("sweep: need --step or --count");
            } else {
                sweep_request.spec.step = sweep_step;
            }
            sweep_request.mode = parse_sweep_mode(sweep_mode);
            sweep_request.beta = sweep_beta;
            sweep_request.tau = sweep_tau;
            cmd_sweep(resolve_scenario(global), sweep_request, options, *sink);
        } else if (reproduce->parsed()) {
            cmd_reproduce(resolve_scenario_or_default(global), reproduce_target, options,
                          *sink);
        } else if (estimate->parsed()) {
            if (!estimate_category.empty()) {
                estimate_request.category = estimate_category;
            }
            if (!estimate_frequencies.empty()) {
                estimate_request.frequency_customer = estimate_frequencies;
            }
            cmd_estimate(estimate_request, options, *sink, err);
        }
    } catch (const ScenarioError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}

} // namespace subplan::cli
