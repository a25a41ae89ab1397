#pragma once

#include <cstdint>

namespace demandcast {

/**
 * Gamma posterior over the demand rate of a Poisson count process.
 *
 * The state is kept as the initial prior plus exact integer sufficient
 * statistics (sum of counts, number of updates), so repeated updates never
 * accumulate rounding error. When the prior comes from init_gamma_prior the
 * prior is additionally known as an exact decimal rational (x1 / 10^d), which
 * makes mean() a single correctly rounded division; a constant series then
 * keeps the posterior mean bit-exactly at the constant.
 */
class GammaPoissonState {
public:
    /// General Gamma(alpha, beta) prior. Both parameters must be positive.
    GammaPoissonState(double alpha, double beta);

    double alpha() const;
    double beta() const;

    /// Posterior mean alpha / beta.
    double mean() const;

    /// Posterior after one more observed count.
    GammaPoissonState updated(std::int64_t x) const;

    std::uint64_t observations() const { return num_updates_; }

private:
    GammaPoissonState() = default;
    friend GammaPoissonState init_gamma_prior(std::int64_t x1);

    double alpha0_ = 0.0;
    double beta0_ = 0.0;
    // Exact decimal prior: alpha0 = virtual_count / scale, beta0 = 1 / scale.
    // scale == 0 means the prior is a general double pair.
    std::uint64_t scale_ = 0;
    std::uint64_t virtual_count_ = 0;
    std::uint64_t sum_counts_ = 0;
    std::uint64_t num_updates_ = 0;
};

/// First-observation prior: beta = 10^(-floor(log10 x1)), alpha = x1 * beta,
/// so the prior mean starts at x1. A zero first observation falls back to
/// beta = 0.0001, alpha = 0.01 (prior mean 100). The decimal exponent is
/// derived from the digit count, never from floating-point log10.
GammaPoissonState init_gamma_prior(std::int64_t x1);

/// Conjugate update: alpha + x, beta + 1. Rejects negative counts.
GammaPoissonState gp_update(const GammaPoissonState& state, std::int64_t x);

/// Posterior mean forecast for the next count.
double gp_mean(const GammaPoissonState& state);

/// Additive residual on the log1p scale: ln(x + 1) - ln(lambda_hat + 1).
/// The +1 shift keeps both terms finite when either argument is zero.
double log1p_residual(double x, double lambda_hat);

/**
 * Normal-Gamma posterior over the mean and precision of log-scale residuals.
 *
 * (m, kappa) parameterize the conditional Normal prior on the mean, (delta,
 * eta) the Gamma prior on the precision. Evidence is carried as running
 * residual sums; the sum of squares is kept so the precision posterior stays
 * available even though the point forecast never reads it.
 */
struct NormalGammaState {
    double m = 0.0;
    double kappa = 1.0;
    double delta = 1.0;
    double eta = 1.0;
    double sum_e = 0.0;
    double sum_e_sq = 0.0;
    std::uint64_t count = 0;

    NormalGammaState() = default;
    NormalGammaState(double m, double kappa, double delta, double eta);
};

/// Absorb one residual into the running statistics. Rejects non-finite input.
NormalGammaState ng_update(const NormalGammaState& state, double e);

/// Posterior mean of the residual mean: (kappa*m + sum_e) / (kappa + count).
double ng_mean(const NormalGammaState& state);

struct GammaParams {
    double shape;
    double rate;
};

/// Marginal Gamma posterior of the residual precision:
///   shape = delta + count/2
///   rate  = eta + centered sum of squares / 2
///              + kappa*count*(mean_e - m)^2 / (2*(kappa + count))
GammaParams ng_precision_posterior(const NormalGammaState& state);

/// Boosted forecast: lambda_hat + max(0, exp(mu_hat) - 1). The clamp keeps
/// the correction from driving the forecast below the base mean.
double boost_forecast(double lambda_hat, double mu_hat);

} // namespace demandcast
