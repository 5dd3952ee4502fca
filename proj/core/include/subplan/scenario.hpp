#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "subplan/demand.hpp"

namespace subplan {

struct ScenarioError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A scenario file is plain `key = value` text with '#' comments. Keys:
/// n, pi, p, c, alpha, lambda, tau, runs, periods, seed. n, pi and c are
/// required; p defaults to 1, alpha to 0.97, runs to 10000, periods to 48.
/// Unknown and duplicate keys are rejected.
struct Scenario {
    MarketParams market;
    std::optional<double> lambda;
    std::optional<double> tau;
    int runs = 10000;
    int periods = 48;
    std::uint64_t seed = 10;
};

Scenario parse_scenario(std::istream& in);
Scenario load_scenario_file(const std::string& path);

/// FNV-1a hash of the canonical key=value serialization; stamped into
/// reproduction footers so outputs are traceable to their inputs.
std::uint64_t scenario_fingerprint(const Scenario& scenario);

enum class SweepParameter { n, pi, c, beta, tau, lambda };

const char* to_string(SweepParameter parameter);
SweepParameter parse_sweep_parameter(const std::string& name);

/// Inclusive numeric grid lo, lo+step, ... capped at hi.
struct SweepSpec {
    SweepParameter parameter = SweepParameter::n;
    double lo = 0.0;
    double hi = 0.0;
    double step = 0.0;

    void validate() const;
    std::vector<double> values() const;
};

} // namespace subplan
