#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "demandcast/forecaster.hpp"

namespace demandcast {

/// The series carries no usable autocorrelation signal (constant window or
/// numerically singular recursion). Callers that must stay robust catch this
/// and fall back to the mean model.
class DegenerateSeriesError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Linear autoregression with intercept over a fixed set of past lags.
/// An empty lag set is the training-mean model.
struct ARModel {
    double intercept = 0.0;
    std::vector<std::pair<std::size_t, double>> coefficients; // ascending by lag
    bool ridged = false; // least squares fell back to a ridge solve
};

/// Sample autocorrelations at lags 0..max_lag (biased divisor, so the
/// sequence is positive semidefinite). Element 0 is always 1.
std::vector<double> autocorrelations(const std::vector<double>& series, std::size_t max_lag);

/// Partial autocorrelations at lags 1..max_lag via the Durbin-Levinson
/// recursion on the sample autocorrelations. Throws DegenerateSeriesError on
/// a constant series or a vanishing innovation variance.
std::vector<double> pacf(const std::vector<double>& series, std::size_t max_lag);

/// Lags whose partial autocorrelation exceeds the two-sided normal band
/// z(1 - level/2) / sqrt(n) in absolute value (strictly). Lags are 1-based:
/// pacf_values[0] speaks for lag 1.
std::vector<std::size_t> select_lags(const std::vector<double>& pacf_values, std::size_t n,
                                     double level = 0.05);

/// Ordinary least squares over the lagged regressors, intercept included.
/// A singular system is re-solved with ridge penalty 1e-8 and flagged.
ARModel fit_ar(const std::vector<double>& train, const std::vector<std::size_t>& lags);

/// The whole selection pipeline on a training window: autocorrelation scan
/// up to min(20, len/4), band selection at the given level, least squares.
/// Degenerate windows yield the mean model instead of failing.
ARModel fit_ar_auto(const std::vector<std::int64_t>& counts, std::size_t t_train,
                    double level = 0.05);

/// Last observed value as the forecast, over the test window.
std::vector<ForecastRecord> naive_run(const std::vector<std::int64_t>& counts,
                                      double train_fraction);

/// One-step-ahead AR forecasts over the test window using observed lagged
/// values; the model stays fixed and forecasts are clamped at zero.
std::vector<ForecastRecord> ar_run(const std::vector<std::int64_t>& counts,
                                   double train_fraction, const ARModel& model);

} // namespace demandcast
