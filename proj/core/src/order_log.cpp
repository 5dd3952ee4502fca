#include "subplan/order_log.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "subplan/normal.hpp"

namespace subplan {

namespace {

constexpr const char* kHeader = "customer_id,period_index,category,quantity";

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    return line;
}

bool parse_long(const std::string& field, long& out) {
    const char* first = field.data();
    const char* last = first + field.size();
    const auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string current;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(current);
            current.clear();
        } else {
            current.push_back(ch);
        }
    }
    fields.push_back(current);
    return fields;
}

} // namespace

OrderLog load_order_log(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || strip_cr(line) != kHeader) {
        throw ParseError(std::string("order log: expected header '") + kHeader + "'");
    }
    OrderLog log;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) {
            continue;
        }
        const std::vector<std::string> fields = split_csv(line);
        if (fields.size() != 4) {
            log.row_errors.push_back({line_no, "expected 4 fields"});
            continue;
        }
        OrderRecord record;
        record.customer_id = fields[0];
        record.category = fields[2];
        if (record.customer_id.empty() || record.category.empty()) {
            log.row_errors.push_back({line_no, "empty customer_id or category"});
            continue;
        }
        if (!parse_long(fields[1], record.period_index) || record.period_index < 0) {
            log.row_errors.push_back({line_no, "period_index must be a non-negative integer"});
            continue;
        }
        if (!parse_long(fields[3], record.quantity) || record.quantity < 1) {
            log.row_errors.push_back({line_no, "quantity must be an integer >= 1"});
            continue;
        }
        log.records.push_back(std::move(record));
    }
    return log;
}

OrderLog load_order_log_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("order log: cannot open '" + path + "'");
    }
    return load_order_log(in);
}

std::map<std::string, double> purchase_frequency(const OrderLog& log,
                                                 const std::string& customer_id) {
    std::set<long> active_periods;
    std::map<std::string, std::set<long>> category_periods;
    for (const OrderRecord& r : log.records) {
        if (r.customer_id != customer_id) {
            continue;
        }
        active_periods.insert(r.period_index);
        category_periods[r.category].insert(r.period_index);
    }
    if (active_periods.empty()) {
        throw std::invalid_argument("purchase_frequency: unknown customer '" + customer_id +
                                    "'");
    }
    std::map<std::string, double> out;
    const double denom = static_cast<double>(active_periods.size());
    for (const auto& [category, periods] : category_periods) {
        out[category] = static_cast<double>(periods.size()) / denom;
    }
    return out;
}

std::pair<double, double> wilson_interval(long hits, long trials) {
    if (trials < 1 || hits < 0 || hits > trials) {
        throw std::invalid_argument("wilson_interval: need 0 <= hits <= trials, trials >= 1");
    }
    const double z = std_normal_quantile(0.975);
    const double z2 = z * z;
    const double n = static_cast<double>(trials);
    const double phat = static_cast<double>(hits) / n;
    const double denom = 1.0 + z2 / n;
    const double center = phat + z2 / (2.0 * n);
    const double margin = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n));
    return {(center - margin) / denom, (center + margin) / denom};
}

PiEstimate estimate_pi(const OrderLog& log, const std::string& category,
                       const std::set<std::string>& segment) {
    if (segment.empty()) {
        throw std::invalid_argument("estimate_pi: segment must be nonempty");
    }
    std::set<long> periods;
    std::set<std::pair<std::string, long>> hits;
    for (const OrderRecord& r : log.records) {
        periods.insert(r.period_index);
        if (r.category == category && segment.count(r.customer_id)) {
            hits.insert({r.customer_id, r.period_index});
        }
    }
    if (periods.empty()) {
        throw std::invalid_argument("estimate_pi: log contains no observed periods");
    }
    PiEstimate est;
    est.n_periods_observed = static_cast<long>(periods.size());
    est.n_cells = est.n_periods_observed * static_cast<long>(segment.size());
    est.n_hits = static_cast<long>(hits.size());
    est.pi_hat = static_cast<double>(est.n_hits) / static_cast<double>(est.n_cells);
    std::tie(est.wilson_lo, est.wilson_hi) = wilson_interval(est.n_hits, est.n_cells);
    return est;
}

void write_frequency_csv(const std::map<std::string, double>& frequencies, std::ostream& out) {
    out << "category,frequency\n";
    char buf[64];
    for (const auto& [category, freq] : frequencies) {
        std::snprintf(buf, sizeof(buf), ",%.17g\n", freq);
        out << category << buf;
    }
}

} // namespace subplan
