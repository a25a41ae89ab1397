#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "demandcast/synthetic.hpp"

namespace testutil {

/// Standard normal draw (Box-Muller, one value per call so consumption stays
/// easy to reason about in seeded tests).
inline double normal01(demandcast::SplitMix64& rng)
{
    double u1 = 1.0 - rng.next_double(); // (0, 1]
    double u2 = rng.next_double();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.141592653589793 * u2);
}

/// Stationary AR(1) path with unit innovation variance.
inline std::vector<double> ar1_path(double phi, std::size_t n, std::uint64_t seed)
{
    demandcast::SplitMix64 rng(seed);
    std::vector<double> x(n);
    x[0] = normal01(rng) / std::sqrt(1.0 - phi * phi);
    for (std::size_t t = 1; t < n; ++t)
        x[t] = phi * x[t - 1] + normal01(rng);
    return x;
}

/// Random counts in [0, high] with occasional zeros, for metric fuzzing.
inline std::vector<std::int64_t> random_counts(std::size_t n, std::int64_t high,
                                               demandcast::SplitMix64& rng)
{
    std::vector<std::int64_t> out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = static_cast<std::int64_t>(rng.next() % static_cast<std::uint64_t>(high + 1));
    return out;
}

inline std::vector<double> to_doubles(const std::vector<std::int64_t>& v)
{
    return std::vector<double>(v.begin(), v.end());
}

} // namespace testutil
