#include "demandcast/conjugate.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace demandcast {

namespace {

// Largest integer whose double representation is still exact.
constexpr std::uint64_t kExactLimit = (1ull << 53);

std::uint64_t pow10_digits(std::int64_t x)
{
    std::uint64_t p = 1;
    while (x >= 10) {
        x /= 10;
        p *= 10;
    }
    return p;
}

} // namespace

GammaPoissonState::GammaPoissonState(double alpha, double beta)
    : alpha0_(alpha), beta0_(beta)
{
    if (!(alpha > 0.0) || !(beta > 0.0))
        throw std::invalid_argument("gamma prior parameters must be positive");
}

double GammaPoissonState::alpha() const
{
    if (scale_ != 0)
        return static_cast<double>(virtual_count_ + sum_counts_ * scale_)
            / static_cast<double>(scale_);
    return alpha0_ + static_cast<double>(sum_counts_);
}

double GammaPoissonState::beta() const
{
    if (scale_ != 0)
        return static_cast<double>(1 + num_updates_ * scale_)
            / static_cast<double>(scale_);
    return beta0_ + static_cast<double>(num_updates_);
}

double GammaPoissonState::mean() const
{
    if (scale_ != 0) {
        // alpha/beta with the common 1/scale factor cancelled. Both sides are
        // exact integers below 2^53, so the division rounds only once.
        std::uint64_t num = virtual_count_ + sum_counts_ * scale_;
        std::uint64_t den = 1 + num_updates_ * scale_;
        if (num < kExactLimit && den < kExactLimit)
            return static_cast<double>(num) / static_cast<double>(den);
    }
    return alpha() / beta();
}

GammaPoissonState GammaPoissonState::updated(std::int64_t x) const
{
    if (x < 0)
        throw std::invalid_argument("counts must be non-negative");
    GammaPoissonState next = *this;
    next.sum_counts_ += static_cast<std::uint64_t>(x);
    next.num_updates_ += 1;
    return next;
}

GammaPoissonState init_gamma_prior(std::int64_t x1)
{
    if (x1 < 0)
        throw std::invalid_argument("counts must be non-negative");
    GammaPoissonState s;
    if (x1 == 0) {
        // No signal in a zero count; start wide with prior mean 100.
        s.alpha0_ = 0.01;
        s.beta0_ = 0.0001;
        s.scale_ = 10000;
        s.virtual_count_ = 100;
        return s;
    }
    std::uint64_t scale = pow10_digits(x1);
    s.scale_ = scale;
    s.virtual_count_ = static_cast<std::uint64_t>(x1);
    s.alpha0_ = static_cast<double>(s.virtual_count_) / static_cast<double>(scale);
    s.beta0_ = 1.0 / static_cast<double>(scale);
    return s;
}

GammaPoissonState gp_update(const GammaPoissonState& state, std::int64_t x)
{
    return state.updated(x);
}

double gp_mean(const GammaPoissonState& state)
{
    return state.mean();
}

double log1p_residual(double x, double lambda_hat)
{
    if (!(x >= 0.0) || !(lambda_hat >= 0.0))
        throw std::invalid_argument("log residual needs non-negative arguments");
    return std::log1p(x) - std::log1p(lambda_hat);
}

NormalGammaState::NormalGammaState(double m_, double kappa_, double delta_, double eta_)
    : m(m_), kappa(kappa_), delta(delta_), eta(eta_)
{
    if (!(kappa > 0.0) || !(delta > 0.0) || !(eta > 0.0))
        throw std::invalid_argument("normal-gamma prior needs positive kappa, delta, eta");
    if (!std::isfinite(m))
        throw std::invalid_argument("normal-gamma prior mean must be finite");
}

NormalGammaState ng_update(const NormalGammaState& state, double e)
{
    if (!std::isfinite(e))
        throw std::invalid_argument("residual must be finite");
    NormalGammaState next = state;
    next.sum_e += e;
    next.sum_e_sq += e * e;
    next.count += 1;
    return next;
}

double ng_mean(const NormalGammaState& state)
{
    double n = static_cast<double>(state.count);
    return (state.kappa * state.m + state.sum_e) / (state.kappa + n);
}

GammaParams ng_precision_posterior(const NormalGammaState& state)
{
    double n = static_cast<double>(state.count);
    GammaParams p;
    p.shape = state.delta + 0.5 * n;
    if (state.count == 0) {
        p.rate = state.eta;
        return p;
    }
    double mean_e = state.sum_e / n;
    double centered_ss = state.sum_e_sq - n * mean_e * mean_e;
    if (centered_ss < 0.0)
        centered_ss = 0.0;
    double shift = state.m - mean_e;
    p.rate = state.eta + 0.5 * centered_ss
        + 0.5 * state.kappa * n * shift * shift / (state.kappa + n);
    return p;
}

double boost_forecast(double lambda_hat, double mu_hat)
{
    double correction = std::expm1(mu_hat);
    if (correction < 0.0)
        correction = 0.0;
    return lambda_hat + correction;
}

} // namespace demandcast
