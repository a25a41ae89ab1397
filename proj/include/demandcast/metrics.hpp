#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace demandcast {

/// Divisor in the direction-accuracy percentage. The defining sum has n-1
/// terms but the published formula divides by n; the normalized variant is
/// kept for cross-comparison.
enum class PocidDivisor { N, NMinus1 };

struct MetricReport {
    double pocid = 0.0;
    double mse = 0.0;
    std::optional<double> mape; // absent when every actual is zero
    std::uint64_t mape_skipped = 0;
    std::optional<double> theil_u; // absent when actuals are constant
    std::size_t n_effective = 0;   // number of scored forecasts
};

/// Percentage of correct direction. actual holds x1..xn, predicted holds
/// the forecasts for x2..xn; a step counts when sign(x_hat_t - x_{t-1})
/// equals sign(x_t - x_{t-1}), with flat-vs-flat (both signs 0) a match.
double pocid(const std::vector<double>& actual, const std::vector<double>& predicted,
             PocidDivisor divisor = PocidDivisor::N);

double mse(const std::vector<double>& actual, const std::vector<double>& predicted);

/// Mean absolute percentage error over steps with nonzero actuals; returns
/// the percentage (absent if no usable step) and how many steps were skipped.
std::pair<std::optional<double>, std::uint64_t> mape(const std::vector<double>& actual,
                                                     const std::vector<double>& predicted);

/// Squared-error ratio against the last-value forecast, aligned like pocid
/// (actual = x1..xn, predicted = forecasts for x2..xn). Absent when the
/// actuals are constant over the window.
std::optional<double> theil_u(const std::vector<double>& actual,
                              const std::vector<double>& predicted);

/// All four metrics over one window. actual holds the previous observation
/// followed by the scored actuals (|predicted| + 1 values), so direction and
/// the naive reference are defined at the first scored step.
MetricReport compute_metrics(const std::vector<double>& actual,
                             const std::vector<double>& predicted,
                             PocidDivisor divisor = PocidDivisor::N);

} // namespace demandcast
