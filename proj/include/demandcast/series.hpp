#pragma once

#include <chrono>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace demandcast {

/// Input data is at fault (malformed rows, broken invariants). Maps to a
/// different exit code than configuration mistakes.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A weekly demand history: strictly increasing dates, seven days apart,
/// at least three non-negative counts.
struct CountSeries {
    std::string id;
    std::vector<std::chrono::sys_days> dates;
    std::vector<std::int64_t> counts;
};

/// Enforce the CountSeries invariants; throws ParseError naming the series.
void validate_series(const CountSeries& series);

/// Parse `series_id,date,count` CSV. Rows may arrive out of date order and
/// are sorted; duplicate dates, gaps in the weekly cadence, negative counts
/// and series shorter than three points are errors addressed by line or
/// series. The result is sorted by series id.
std::vector<CountSeries> parse_series_csv(const std::string& content);

/// Inverse of parse_series_csv (header plus one row per observation).
std::string serialize_series_csv(const std::vector<CountSeries>& series);

/// Read and parse a CSV file; file-system problems surface as ParseError.
std::vector<CountSeries> load_series_file(const std::string& path);

std::string format_date(std::chrono::sys_days day);

} // namespace demandcast
