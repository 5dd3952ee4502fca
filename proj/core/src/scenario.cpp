#include "subplan/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace subplan {

namespace {

const std::vector<std::string> kKnownKeys = {"n",   "pi",     "p",    "c",    "alpha",
                                             "lambda", "tau", "runs", "periods", "seed"};

std::string trim(const std::string& text) {
    const auto begin = text.find_first_not_of(" \t");
    if (begin == std::string::npos) {
        return "";
    }
    const auto end = text.find_last_not_of(" \t");
    return text.substr(begin, end - begin + 1);
}

double to_double(const std::string& key, const std::string& value) {
    std::size_t used = 0;
    double parsed = 0.0;
    try {
        parsed = std::stod(value, &used);
    } catch (const std::exception&) {
        throw ScenarioError("scenario: key '" + key + "' has non-numeric value '" + value + "'");
    }
    if (used != value.size() || !std::isfinite(parsed)) {
        throw ScenarioError("scenario: key '" + key + "' has non-numeric value '" + value + "'");
    }
    return parsed;
}

long long to_integer(const std::string& key, const std::string& value) {
    std::size_t used = 0;
    long long parsed = 0;
    try {
        parsed = std::stoll(value, &used);
    } catch (const std::exception&) {
        throw ScenarioError("scenario: key '" + key + "' has non-integer value '" + value + "'");
    }
    if (used != value.size()) {
        throw ScenarioError("scenario: key '" + key + "' has non-integer value '" + value + "'");
    }
    return parsed;
}

} // namespace

Scenario parse_scenario(std::istream& in) {
    std::map<std::string, std::string> pairs;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ScenarioError("scenario line " + std::to_string(line_no) +
                                ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (std::find(kKnownKeys.begin(), kKnownKeys.end(), key) == kKnownKeys.end()) {
            throw ScenarioError("scenario line " + std::to_string(line_no) +
                                ": unknown key '" + key + "'");
        }
        if (value.empty()) {
            throw ScenarioError("scenario line " + std::to_string(line_no) +
                                ": empty value for '" + key + "'");
        }
        if (!pairs.emplace(key, value).second) {
            throw ScenarioError("scenario line " + std::to_string(line_no) +
                                ": duplicate key '" + key + "'");
        }
    }

    for (const char* required : {"n", "pi", "c"}) {
        if (!pairs.count(required)) {
            throw ScenarioError(std::string("scenario: missing required key '") + required +
                                "'");
        }
    }

    Scenario scenario;
    scenario.market.n = static_cast<int>(to_integer("n", pairs.at("n")));
    scenario.market.pi = to_double("pi", pairs.at("pi"));
    scenario.market.c = to_double("c", pairs.at("c"));
    scenario.market.p = pairs.count("p") ? to_double("p", pairs.at("p")) : 1.0;
    scenario.market.alpha = pairs.count("alpha") ? to_double("alpha", pairs.at("alpha")) : 0.97;
    if (pairs.count("lambda")) {
        scenario.lambda = to_double("lambda", pairs.at("lambda"));
    }
    if (pairs.count("tau")) {
        scenario.tau = to_double("tau", pairs.at("tau"));
    }
    if (pairs.count("runs")) {
        scenario.runs = static_cast<int>(to_integer("runs", pairs.at("runs")));
    }
    if (pairs.count("periods")) {
        scenario.periods = static_cast<int>(to_integer("periods", pairs.at("periods")));
    }
    if (pairs.count("seed")) {
        scenario.seed = static_cast<std::uint64_t>(to_integer("seed", pairs.at("seed")));
    }

    try {
        scenario.market.validate();
    } catch (const std::domain_error& e) {
        throw ScenarioError(std::string("scenario: ") + e.what());
    }
    if (scenario.runs < 1 || scenario.periods < 1) {
        throw ScenarioError("scenario: runs and periods must be >= 1");
    }
    if (scenario.lambda && !(*scenario.lambda > 0.0 && *scenario.lambda < 1.0)) {
        throw ScenarioError("scenario: lambda must lie in (0, 1)");
    }
    if (scenario.tau && !(*scenario.tau >= 0.0 && *scenario.tau < scenario.market.p)) {
        throw ScenarioError("scenario: tau must lie in [0, p)");
    }
    return scenario;
}

Scenario load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ScenarioError("scenario: cannot open '" + path + "'");
    }
    return parse_scenario(in);
}

std::uint64_t scenario_fingerprint(const Scenario& scenario) {
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "n=%d;pi=%.17g;p=%.17g;c=%.17g;alpha=%.17g;lambda=%.17g;tau=%.17g;"
                  "runs=%d;periods=%d;seed=%llu",
                  scenario.market.n, scenario.market.pi, scenario.market.p, scenario.market.c,
                  scenario.market.alpha, scenario.lambda.value_or(-1.0),
                  scenario.tau.value_or(-1.0), scenario.runs, scenario.periods,
                  static_cast<unsigned long long>(scenario.seed));
    std::uint64_t hash = 1469598103934665603ULL;
    for (const char* ch = buf; *ch; ++ch) {
        hash ^= static_cast<unsigned char>(*ch);
        hash *= 1099511628211ULL;
    }
    return hash;
}

const char* to_string(SweepParameter parameter) {
    switch (parameter) {
        case SweepParameter::n: return "n";
        case SweepParameter::pi: return "pi";
        case SweepParameter::c: return "c";
        case SweepParameter::beta: return "beta";
        case SweepParameter::tau: return "tau";
        case SweepParameter::lambda: return "lambda";
    }
    return "?";
}

SweepParameter parse_sweep_parameter(const std::string& name) {
    if (name == "n") return SweepParameter::n;
    if (name == "pi") return SweepParameter::pi;
    if (name == "c") return SweepParameter::c;
    if (name == "beta") return SweepParameter::beta;
    if (name == "tau") return SweepParameter::tau;
    if (name == "lambda") return SweepParameter::lambda;
    throw ScenarioError("sweep: unknown parameter '" + name +
                        "' (expected n, pi, c, beta, tau or lambda)");
}

void SweepSpec::validate() const {
    if (!(lo < hi)) {
        throw ScenarioError("sweep: need lo < hi");
    }
    if (!(step > 0.0)) {
        throw ScenarioError("sweep: need step > 0");
    }
}

std::vector<double> SweepSpec::values() const {
    validate();
    std::vector<double> out;
    const double count = std::floor((hi - lo) / step + 1e-9);
    for (int i = 0; i <= static_cast<int>(count); ++i) {
        out.push_back(lo + i * step);
    }
    if (out.back() < hi - 1e-12 * std::max(1.0, std::abs(hi))) {
        out.push_back(hi);
    }
    return out;
}

} // namespace subplan
