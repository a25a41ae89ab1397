#pragma once

namespace demandcast {

/// Standard normal CDF.
double normal_cdf(double x);

/// Standard normal quantile (inverse CDF), Wichura's AS 241 rational
/// approximation (absolute error below 1e-15 on (0, 1)).
/// Throws std::invalid_argument outside (0, 1).
double normal_quantile(double p);

} // namespace demandcast
