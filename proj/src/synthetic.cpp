#include "demandcast/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace demandcast {

namespace {

std::int64_t poisson_inversion(double rate, SplitMix64& rng)
{
    double limit = std::exp(-rate);
    double p = 1.0;
    std::int64_t k = -1;
    do {
        ++k;
        p *= rng.next_double();
    } while (p > limit);
    return k;
}

// Hoermann's transformed rejection with squeeze. The magic constants are the
// published ones; they bound the acceptance region for rate >= 10.
std::int64_t poisson_ptrs(double rate, SplitMix64& rng)
{
    double log_rate = std::log(rate);
    double b = 0.931 + 2.53 * std::sqrt(rate);
    double a = -0.059 + 0.02483 * b;
    double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    double v_r = 0.9277 - 3.6224 / (b - 2.0);

    for (;;) {
        double u = rng.next_double() - 0.5;
        double v = rng.next_double();
        double us = 0.5 - std::fabs(u);
        double k = std::floor((2.0 * a / us + b) * u + rate + 0.43);
        if (us >= 0.07 && v <= v_r)
            return static_cast<std::int64_t>(k);
        if (k < 0.0 || (us < 0.013 && v > us))
            continue;
        if (std::log(v * inv_alpha / (a / (us * us) + b))
            <= k * log_rate - rate - std::lgamma(k + 1.0))
            return static_cast<std::int64_t>(k);
    }
}

} // namespace

std::int64_t poisson_sample(double rate, SplitMix64& rng)
{
    if (!(rate > 0.0) || !std::isfinite(rate))
        throw std::invalid_argument("poisson rate must be positive and finite");
    if (rate < 10.0)
        return poisson_inversion(rate, rng);
    return poisson_ptrs(rate, rng);
}

std::vector<double> synthetic_rates(const SyntheticSpec& spec)
{
    if (spec.length == 0)
        throw std::invalid_argument("synthetic length must be positive");
    if (!(spec.base_rate > 0.0) || !std::isfinite(spec.base_rate))
        throw std::invalid_argument("base rate must be positive and finite");
    if (!(spec.drift > 0.0) || !std::isfinite(spec.drift))
        throw std::invalid_argument("drift must be positive and finite");

    auto cps = spec.changepoints;
    std::sort(cps.begin(), cps.end(),
              [](const Changepoint& a, const Changepoint& b) { return a.index < b.index; });
    for (std::size_t i = 0; i < cps.size(); ++i) {
        if (cps[i].index >= spec.length)
            throw std::invalid_argument("changepoint index out of range");
        if (!(cps[i].new_rate > 0.0) || !std::isfinite(cps[i].new_rate))
            throw std::invalid_argument("changepoint rate must be positive and finite");
        if (i > 0 && cps[i].index == cps[i - 1].index)
            throw std::invalid_argument("duplicate changepoint index");
    }

    std::vector<double> rates(spec.length);
    double rate = spec.base_rate;
    std::size_t next_cp = 0;
    for (std::size_t t = 0; t < spec.length; ++t) {
        if (next_cp < cps.size() && cps[next_cp].index == t) {
            rate = cps[next_cp].new_rate;
            ++next_cp;
        } else if (t > 0) {
            rate *= spec.drift;
        }
        if (!(rate > 0.0) || !(rate < 1e12))
            throw std::invalid_argument("rate left (0, 1e12) at step " + std::to_string(t));
        rates[t] = rate;
    }
    return rates;
}

CountSeries generate_synthetic(const SyntheticSpec& spec, const std::string& id)
{
    std::vector<double> rates = synthetic_rates(spec);
    SplitMix64 rng(spec.seed);

    CountSeries series;
    series.id = id;
    series.dates.reserve(spec.length);
    series.counts.reserve(spec.length);

    std::chrono::sys_days day =
        std::chrono::sys_days(std::chrono::year{2023} / std::chrono::January / 8);
    for (std::size_t t = 0; t < spec.length; ++t) {
        series.counts.push_back(poisson_sample(rates[t], rng));
        series.dates.push_back(day);
        day += std::chrono::days{7};
    }
    return series;
}

} // namespace demandcast
