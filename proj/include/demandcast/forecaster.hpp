#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "demandcast/conjugate.hpp"

namespace demandcast {

struct ForecasterConfig {
    double kappa = 1.0; // pseudo-observations behind the residual-mean prior
    double m = 0.0;     // prior residual mean; 0 keeps the first boost inert
    double delta = 1.0; // residual-precision prior shape
    double eta = 1.0;   // residual-precision prior rate
    bool warmup = true; // replay updates over the training window before scoring
};

/// One predict step, optionally completed by the observation that followed it.
struct ForecastRecord {
    std::size_t time_index = 0; // 1-based position in the series
    double lambda_hat = 0.0;    // base model mean
    double mu_hat = 0.0;        // residual model mean (log scale)
    double x_hat = 0.0;         // boosted forecast, never below lambda_hat
    std::optional<std::int64_t> observed;
    std::optional<double> residual;
    bool warmup = false;
};

struct ForecasterState {
    GammaPoissonState gp;
    NormalGammaState ng;
    std::uint64_t steps_observed = 0;
};

/// Fresh state seeded from the first observation.
ForecasterState forecaster_new(std::int64_t x1, const ForecasterConfig& config = {});

/// Pure read: forecast for the next step. time_index assumes an unbroken
/// stream starting at the seed observation; batch runners may re-stamp it.
ForecastRecord forecaster_predict(const ForecasterState& state);

/// Absorb one observation. The residual is measured against the base mean
/// before the count updates it, so the correction tracks the base model's
/// error rather than its own output.
ForecasterState forecaster_observe(const ForecasterState& state, std::int64_t x);

/// Training-window size: floor(n * train_fraction) clamped to [1, n-1].
std::size_t train_size(std::size_t n, double train_fraction);

/// Predict-then-observe over a whole series. With warmup the training window
/// x2..x_train is replayed first (records tagged, excluded from metrics);
/// without it the state jumps from the seed straight to the test window.
std::vector<ForecastRecord> run_series(const std::vector<std::int64_t>& counts,
                                       double train_fraction,
                                       const ForecasterConfig& config = {});

} // namespace demandcast
