#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "subplan/acceptance.hpp"
#include "subplan/order_log.hpp"
#include "subplan/scenario.hpp"
#include "subplan/simulate.hpp"

namespace subplan {

struct OutputOptions {
    bool csv = false;
};

enum class SweepMode { baseline, adi, subscription, optimize };

SweepMode parse_sweep_mode(const std::string& name);

struct SweepRequest {
    SweepSpec spec;
    SweepMode mode = SweepMode::baseline;
    std::optional<double> beta; ///< fixed share for adi/subscription modes
    std::optional<double> tau;  ///< fixed discount for subscription mode
    bool simulated = false;     ///< optimize mode: use the simulator objective
};

struct OptimizeRequest {
    bool simulated = false;
    bool refine = true;                    ///< analytic search only
    std::optional<std::string> grid_out;   ///< dump the scanned tau -> profit curve
};

struct EstimateRequest {
    std::string log_path;
    std::optional<std::string> category;           ///< pi estimation target
    std::vector<std::string> segment;              ///< empty = all customers in the log
    std::optional<std::string> frequency_customer; ///< per-customer frequency table
};

void cmd_analyze(const Scenario& scenario, const OutputOptions& options, std::ostream& out);
void cmd_adi(const Scenario& scenario, double beta, const OutputOptions& options,
             std::ostream& out);
void cmd_subscribe(const Scenario& scenario, double tau, double beta,
                   const OutputOptions& options, std::ostream& out);
void cmd_optimize(const Scenario& scenario, const OptimizeRequest& request,
                  const OutputOptions& options, std::ostream& out);
void cmd_simulate(const Scenario& scenario, const std::optional<std::string>& trace_path,
                  const OutputOptions& options, std::ostream& out);
void cmd_sweep(const Scenario& scenario, const SweepRequest& request,
               const OutputOptions& options, std::ostream& out);
void cmd_estimate(const EstimateRequest& request, const OutputOptions& options,
                  std::ostream& out, std::ostream& err);

/// One cell of the simulated discount grid: optimal discount, realized mean
/// subscribing share and relative profit increase over the no-subscription
/// initial period.
struct Table3Cell {
    double pi = 0.0;
    double lambda = 0.0;
    double tau_star = 0.0;
    double beta_sim = 0.0;
    double delta_z = 0.0; ///< relative increase, e.g. 0.161
    double std_error = 0.0;
};

Table3Cell reproduce_table3_cell(const SimulationConfig& config, double pi, double lambda);

/// Reproduction targets: table1, table2, table3, fig2 ... fig9. Emits CSV
/// with a provenance footer. The grids and their parameters are fixed; the
/// scenario only supplies runs, periods and seed for the simulated targets.
void cmd_reproduce(const Scenario& scenario, const std::string& target,
                   const OutputOptions& options, std::ostream& out);

} // namespace subplan
