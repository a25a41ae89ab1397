#include "demandcast/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "demandcast/stats.hpp"

namespace demandcast {

namespace {

std::vector<double> to_doubles(const std::vector<std::int64_t>& counts, std::size_t n)
{
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = static_cast<double>(counts[i]);
    return out;
}

// Gaussian elimination with partial pivoting on the normal equations.
// Returns false when a pivot collapses (singular system).
bool solve_linear(std::vector<std::vector<double>> a, std::vector<double> b,
                  std::vector<double>& out)
{
    std::size_t n = b.size();
    double scale = 1.0;
    for (std::size_t i = 0; i < n; ++i)
        scale = std::max(scale, std::fabs(a[i][i]));
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::fabs(a[r][col]) > std::fabs(a[pivot][col]))
                pivot = r;
        if (std::fabs(a[pivot][col]) <= 1e-12 * scale)
            return false;
        std::swap(a[col], a[pivot]);
        std::swap(b[col], b[pivot]);
        for (std::size_t r = col + 1; r < n; ++r) {
            double f = a[r][col] / a[col][col];
            for (std::size_t c = col; c < n; ++c)
                a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    out.assign(n, 0.0);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t c = i + 1; c < n; ++c)
            s -= a[i][c] * out[c];
        out[i] = s / a[i][i];
    }
    return true;
}

std::vector<ForecastRecord> run_point_forecasts(const std::vector<std::int64_t>& counts,
                                                std::size_t t_train,
                                                const std::vector<double>& forecasts)
{
    std::vector<ForecastRecord> records;
    records.reserve(forecasts.size());
    for (std::size_t i = t_train; i < counts.size(); ++i) {
        ForecastRecord rec;
        rec.time_index = i + 1;
        rec.lambda_hat = forecasts[i - t_train];
        rec.mu_hat = 0.0;
        rec.x_hat = forecasts[i - t_train];
        rec.observed = counts[i];
        rec.residual = log1p_residual(static_cast<double>(counts[i]), rec.x_hat);
        records.push_back(rec);
    }
    return records;
}

} // namespace

std::vector<double> autocorrelations(const std::vector<double>& series, std::size_t max_lag)
{
    std::size_t n = series.size();
    if (n == 0 || max_lag >= n)
        throw std::invalid_argument("autocorrelation lag must be below the series length");
    double mean = std::accumulate(series.begin(), series.end(), 0.0) / static_cast<double>(n);
    double var = 0.0;
    for (double x : series)
        var += (x - mean) * (x - mean);
    if (var <= 0.0)
        throw DegenerateSeriesError("constant series has no autocorrelation structure");
    std::vector<double> r(max_lag + 1, 0.0);
    r[0] = 1.0;
    for (std::size_t k = 1; k <= max_lag; ++k) {
        double s = 0.0;
        for (std::size_t t = k; t < n; ++t)
            s += (series[t] - mean) * (series[t - k] - mean);
        r[k] = s / var;
    }
    return r;
}

std::vector<double> pacf(const std::vector<double>& series, std::size_t max_lag)
{
    if (max_lag < 1 || max_lag * 2 >= series.size())
        throw std::invalid_argument("pacf needs 1 <= max_lag < length/2");
    std::vector<double> r = autocorrelations(series, max_lag);

    std::vector<double> out(max_lag);
    std::vector<double> phi(max_lag + 1, 0.0);
    phi[1] = r[1];
    out[0] = r[1];
    for (std::size_t k = 2; k <= max_lag; ++k) {
        double num = r[k];
        double den = 1.0;
        for (std::size_t j = 1; j < k; ++j) {
            num -= phi[j] * r[k - j];
            den -= phi[j] * r[j];
        }
        if (!(den > 1e-12))
            throw DegenerateSeriesError("autocorrelation recursion became singular at lag "
                                        + std::to_string(k));
        double a = num / den;
        std::vector<double> next(phi);
        for (std::size_t j = 1; j < k; ++j)
            next[j] = phi[j] - a * phi[k - j];
        next[k] = a;
        phi = std::move(next);
        out[k - 1] = a;
    }
    return out;
}

std::vector<std::size_t> select_lags(const std::vector<double>& pacf_values, std::size_t n,
                                     double level)
{
    if (!(level > 0.0) || !(level < 1.0))
        throw std::invalid_argument("significance level must lie in (0, 1)");
    if (n == 0)
        throw std::invalid_argument("sample size must be positive");
    double threshold = normal_quantile(1.0 - level / 2.0) / std::sqrt(static_cast<double>(n));
    std::vector<std::size_t> lags;
    for (std::size_t i = 0; i < pacf_values.size(); ++i)
        if (std::fabs(pacf_values[i]) > threshold)
            lags.push_back(i + 1);
    return lags;
}

ARModel fit_ar(const std::vector<double>& train, const std::vector<std::size_t>& lags_in)
{
    std::vector<std::size_t> lags(lags_in);
    std::sort(lags.begin(), lags.end());
    lags.erase(std::unique(lags.begin(), lags.end()), lags.end());
    if (!lags.empty() && lags.front() == 0)
        throw std::invalid_argument("lags must be positive");

    ARModel model;
    if (lags.empty()) {
        if (train.empty())
            throw std::invalid_argument("cannot fit on an empty window");
        model.intercept =
            std::accumulate(train.begin(), train.end(), 0.0) / static_cast<double>(train.size());
        return model;
    }

    std::size_t max_lag = lags.back();
    if (train.size() <= max_lag || train.size() - max_lag < lags.size() + 1)
        throw std::invalid_argument("not enough rows to fit the requested lags");

    std::size_t p = lags.size() + 1; // intercept column first
    std::vector<std::vector<double>> a(p, std::vector<double>(p, 0.0));
    std::vector<double> b(p, 0.0);
    std::vector<double> row(p, 1.0);
    for (std::size_t t = max_lag; t < train.size(); ++t) {
        for (std::size_t j = 0; j < lags.size(); ++j)
            row[j + 1] = train[t - lags[j]];
        for (std::size_t i = 0; i < p; ++i) {
            for (std::size_t j = i; j < p; ++j)
                a[i][j] += row[i] * row[j];
            b[i] += row[i] * train[t];
        }
    }
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < i; ++j)
            a[i][j] = a[j][i];

    std::vector<double> beta;
    if (!solve_linear(a, b, beta)) {
        for (std::size_t i = 0; i < p; ++i)
            a[i][i] += 1e-8;
        if (!solve_linear(a, b, beta))
            throw std::invalid_argument("normal equations unsolvable even with ridge");
        model.ridged = true;
    }
    model.intercept = beta[0];
    for (std::size_t j = 0; j < lags.size(); ++j)
        model.coefficients.emplace_back(lags[j], beta[j + 1]);
    return model;
}

ARModel fit_ar_auto(const std::vector<std::int64_t>& counts, std::size_t t_train, double level)
{
    if (t_train < 1 || t_train > counts.size())
        throw std::invalid_argument("training window out of range");
    std::vector<double> train = to_doubles(counts, t_train);
    std::size_t max_lag = std::min<std::size_t>(20, t_train / 4);
    if (max_lag < 1)
        return fit_ar(train, {});
    try {
        std::vector<std::size_t> lags = select_lags(pacf(train, max_lag), t_train, level);
        return fit_ar(train, lags);
    } catch (const DegenerateSeriesError&) {
        return fit_ar(train, {});
    }
}

std::vector<ForecastRecord> naive_run(const std::vector<std::int64_t>& counts,
                                      double train_fraction)
{
    std::size_t t_train = train_size(counts.size(), train_fraction);
    std::vector<double> forecasts;
    forecasts.reserve(counts.size() - t_train);
    for (std::size_t i = t_train; i < counts.size(); ++i)
        forecasts.push_back(static_cast<double>(counts[i - 1]));
    return run_point_forecasts(counts, t_train, forecasts);
}

std::vector<ForecastRecord> ar_run(const std::vector<std::int64_t>& counts, double train_fraction,
                                   const ARModel& model)
{
    std::size_t t_train = train_size(counts.size(), train_fraction);
    std::vector<double> forecasts;
    forecasts.reserve(counts.size() - t_train);
    for (std::size_t i = t_train; i < counts.size(); ++i) {
        double y = model.intercept;
        for (const auto& [lag, coef] : model.coefficients) {
            if (lag > i)
                throw std::invalid_argument("lag exceeds available history");
            y += coef * static_cast<double>(counts[i - lag]);
        }
        forecasts.push_back(std::max(0.0, y));
    }
    return run_point_forecasts(counts, t_train, forecasts);
}

} // namespace demandcast
