#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "demandcast/series.hpp"

namespace demandcast {

/// SplitMix64. Chosen because its output is fully specified by the seed and
/// identical on every platform, which keeps golden files stable.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next()
    {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

/// Poisson draw: product-of-uniforms inversion below rate 10, transformed
/// rejection with squeeze (PTRS) above. Both paths consume the generator in
/// a fixed, documented order.
std::int64_t poisson_sample(double rate, SplitMix64& rng);

struct Changepoint {
    std::size_t index = 0; // 0-based step at which the new rate takes effect
    double new_rate = 0.0;
};

struct SyntheticSpec {
    std::size_t length = 100;
    double base_rate = 20.0;
    double drift = 1.0; // multiplicative per-step rate factor
    std::vector<Changepoint> changepoints;
    std::uint64_t seed = 0;
};

/// Per-step rates: base_rate at step 0, multiplied by drift each step; a
/// changepoint restarts the progression at its new_rate. Throws on rates
/// that leave (0, 1e12).
std::vector<double> synthetic_rates(const SyntheticSpec& spec);

/// Seeded Poisson counts over weekly dates starting 2023-01-08.
CountSeries generate_synthetic(const SyntheticSpec& spec, const std::string& id = "S1");

} // namespace demandcast
