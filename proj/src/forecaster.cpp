#include "demandcast/forecaster.hpp"

#include <stdexcept>

namespace demandcast {

ForecasterState forecaster_new(std::int64_t x1, const ForecasterConfig& config)
{
    return ForecasterState{
        init_gamma_prior(x1),
        NormalGammaState(config.m, config.kappa, config.delta, config.eta),
        0,
    };
}

ForecastRecord forecaster_predict(const ForecasterState& state)
{
    ForecastRecord rec;
    rec.time_index = static_cast<std::size_t>(state.steps_observed) + 2;
    rec.lambda_hat = gp_mean(state.gp);
    rec.mu_hat = ng_mean(state.ng);
    rec.x_hat = boost_forecast(rec.lambda_hat, rec.mu_hat);
    return rec;
}

ForecasterState forecaster_observe(const ForecasterState& state, std::int64_t x)
{
    double lambda_hat = gp_mean(state.gp);
    double e = log1p_residual(static_cast<double>(x), lambda_hat);
    return ForecasterState{
        gp_update(state.gp, x),
        ng_update(state.ng, e),
        state.steps_observed + 1,
    };
}

std::size_t train_size(std::size_t n, double train_fraction)
{
    if (!(train_fraction > 0.0) || !(train_fraction < 1.0))
        throw std::invalid_argument("train fraction must lie in (0, 1)");
    if (n < 2)
        throw std::invalid_argument("series too short to split");
    auto t = static_cast<std::size_t>(static_cast<double>(n) * train_fraction);
    if (t < 1)
        t = 1;
    if (t > n - 1)
        t = n - 1;
    return t;
}

std::vector<ForecastRecord> run_series(const std::vector<std::int64_t>& counts,
                                       double train_fraction,
                                       const ForecasterConfig& config)
{
    if (counts.size() < 3)
        throw std::invalid_argument("series needs at least 3 observations");
    std::size_t t_train = train_size(counts.size(), train_fraction);

    ForecasterState state = forecaster_new(counts[0], config);
    std::vector<ForecastRecord> records;
    records.reserve(counts.size() - 1);

    auto step = [&](std::size_t i, bool warmup) {
        ForecastRecord rec = forecaster_predict(state);
        rec.time_index = i + 1;
        rec.warmup = warmup;
        rec.observed = counts[i];
        rec.residual = log1p_residual(static_cast<double>(counts[i]), rec.lambda_hat);
        state = forecaster_observe(state, counts[i]);
        records.push_back(rec);
    };

    if (config.warmup) {
        for (std::size_t i = 1; i < t_train; ++i)
            step(i, true);
    }
    for (std::size_t i = t_train; i < counts.size(); ++i)
        step(i, false);
    return records;
}

} // namespace demandcast
