#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace subplan {

/// Input file could not be parsed at all (bad header, unreadable path).
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OrderRecord {
    std::string customer_id;
    long period_index = 0;
    std::string category;
    long quantity = 0;
};

struct RowError {
    std::size_t line = 0;
    std::string message;
};

/// Parsed order log. Malformed rows are skipped and reported with their
/// line numbers; duplicates of the same (customer, period, category) cell
/// are permitted and collapse to one hit for estimation.
struct OrderLog {
    std::vector<OrderRecord> records;
    std::vector<RowError> row_errors;
};

/// CSV with mandatory header customer_id,period_index,category,quantity.
/// Throws ParseError if the header is missing or wrong.
OrderLog load_order_log(std::istream& in);
OrderLog load_order_log_file(const std::string& path);

/// Per category, the share of the customer's active periods (periods with
/// any order by that customer) that contain the category. Throws
/// std::invalid_argument for a customer with no orders.
std::map<std::string, double> purchase_frequency(const OrderLog& log,
                                                 const std::string& customer_id);

/// Pooled buying-probability estimate with a Wilson 95% interval.
///
/// A (customer, period) cell exists for every segment member and every
/// distinct period index present anywhere in the log; the cell is a hit if
/// the customer bought the category in that period.
struct PiEstimate {
    double pi_hat = 0.0;
    long n_periods_observed = 0; ///< distinct periods in the log
    long n_cells = 0;            ///< segment size * periods observed
    long n_hits = 0;
    double wilson_lo = 0.0;
    double wilson_hi = 0.0;
};

PiEstimate estimate_pi(const OrderLog& log, const std::string& category,
                       const std::set<std::string>& segment);

/// Wilson score interval for `hits` successes in `trials` Bernoulli trials
/// at 95% coverage.
std::pair<double, double> wilson_interval(long hits, long trials);

/// Frequency table as CSV: category,frequency (header row included).
void write_frequency_csv(const std::map<std::string, double>& frequencies, std::ostream& out);

} // namespace subplan
