#include "demandcast/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace demandcast {

namespace {

int sign(double v)
{
    if (v > 0.0)
        return 1;
    if (v < 0.0)
        return -1;
    return 0;
}

void require_offset_lengths(const std::vector<double>& actual,
                            const std::vector<double>& predicted)
{
    if (actual.size() != predicted.size() + 1 || predicted.empty())
        throw std::invalid_argument("need actual length = predicted length + 1, both nonempty");
}

} // namespace

double pocid(const std::vector<double>& actual, const std::vector<double>& predicted,
             PocidDivisor divisor)
{
    require_offset_lengths(actual, predicted);
    std::size_t correct = 0;
    for (std::size_t t = 1; t < actual.size(); ++t) {
        int actual_dir = sign(actual[t] - actual[t - 1]);
        int predicted_dir = sign(predicted[t - 1] - actual[t - 1]);
        if (actual_dir == predicted_dir)
            ++correct;
    }
    double div = divisor == PocidDivisor::N ? static_cast<double>(actual.size())
                                            : static_cast<double>(actual.size() - 1);
    return 100.0 * static_cast<double>(correct) / div;
}

double mse(const std::vector<double>& actual, const std::vector<double>& predicted)
{
    if (actual.size() != predicted.size() || actual.empty())
        throw std::invalid_argument("mse needs equal nonempty lengths");
    double sum = 0.0;
    for (std::size_t i = 0; i < actual.size(); ++i) {
        double d = actual[i] - predicted[i];
        sum += d * d;
    }
    return sum / static_cast<double>(actual.size());
}

std::pair<std::optional<double>, std::uint64_t> mape(const std::vector<double>& actual,
                                                     const std::vector<double>& predicted)
{
    if (actual.size() != predicted.size())
        throw std::invalid_argument("mape needs equal lengths");
    double sum = 0.0;
    std::uint64_t used = 0;
    std::uint64_t skipped = 0;
    for (std::size_t i = 0; i < actual.size(); ++i) {
        if (actual[i] == 0.0) {
            ++skipped;
            continue;
        }
        sum += std::fabs(actual[i] - predicted[i]) / std::fabs(actual[i]);
        ++used;
    }
    if (used == 0)
        return {std::nullopt, skipped};
    return {100.0 * sum / static_cast<double>(used), skipped};
}

std::optional<double> theil_u(const std::vector<double>& actual,
                              const std::vector<double>& predicted)
{
    require_offset_lengths(actual, predicted);
    double num = 0.0;
    double den = 0.0;
    for (std::size_t t = 1; t < actual.size(); ++t) {
        double forecast_err = actual[t] - predicted[t - 1];
        double naive_err = actual[t] - actual[t - 1];
        num += forecast_err * forecast_err;
        den += naive_err * naive_err;
    }
    if (den == 0.0)
        return std::nullopt;
    return num / den;
}

MetricReport compute_metrics(const std::vector<double>& actual,
                             const std::vector<double>& predicted, PocidDivisor divisor)
{
    require_offset_lengths(actual, predicted);
    MetricReport report;
    report.n_effective = predicted.size();
    report.pocid = pocid(actual, predicted, divisor);
    std::vector<double> scored(actual.begin() + 1, actual.end());
    report.mse = mse(scored, predicted);
    auto [mape_value, skipped] = mape(scored, predicted);
    report.mape = mape_value;
    report.mape_skipped = skipped;
    report.theil_u = theil_u(actual, predicted);
    return report;
}

} // namespace demandcast
