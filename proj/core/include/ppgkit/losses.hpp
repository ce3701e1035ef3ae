#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "ppgkit/signal.hpp"
#include "ppgkit/softdtw.hpp"

namespace ppgkit {

/// Nonnegative mass vector normalized to sum 1.
struct MassDistribution {
    std::vector<double> mass;

    /// Normalizes on construction. Throws ZeroMass when the input sums to 0,
    /// BadConfig on negative entries.
    explicit MassDistribution(std::vector<double> raw);

    std::size_t dims() const { return mass.size(); }
};

/// Frequency-domain sparsity settings: analysis band and the half-window
/// around the spectral peak that counts as "on-peak" mass.
struct SparsityFreqConfig {
    double band_lo_hz = 0.5;
    double band_hi_hz = 5.0;
    double delta_f_hz = 0.2;
};

struct LossWeights {
    double alpha = 1.5;    // time-domain terms
    double beta = 0.8;     // frequency-domain terms
    double gamma_sd = 1.2; // second-derivative terms
};

/// One loss term: scalar value and gradient w.r.t. the predicted signal.
struct LossTerm {
    double value = 0.0;
    std::vector<double> grad;
};

/// The eight per-domain terms plus the weighted total. The total always
/// satisfies total = alpha*(dtw_t + sparsity_t + variance_t)
/// + beta*(sparsity_f + variance_f) + gamma_sd*(dtw_sd + sparsity_sd + variance_sd).
struct LossBreakdown {
    std::map<std::string, LossTerm> terms;
    double total = 0.0;
    std::vector<double> total_grad;
    LossWeights weights;
};

/// Names of the eight terms in canonical order.
const std::vector<std::string>& loss_term_names();

enum class MassDomain { Time, Freq, SecondDerivative };

/// value = sum |x[n]|, grad[n] = sign(x[n]) (subgradient 0 at 0).
LossTerm sparsity_time(const SampledSignal& x);

/// value = sum |x''[n]| via second_difference; gradient chains through the
/// exact adjoint.
LossTerm sparsity_sd(const SampledSignal& x);

/// Off-peak spectral mass ratio in [0, 1]: mass outside +-delta_f of the
/// (frozen) spectral peak divided by total band mass. Gradient propagates
/// through the DFT magnitudes. Throws ZeroSpectrum on a zero denominator.
LossTerm sparsity_freq(const SampledSignal& x, const SparsityFreqConfig& cfg);

/// Mean squared difference of the two CDFs: (1/d) sum_i (CDF_i(q) - CDF_i(p))^2.
double variance_loss(const MassDistribution& q, const MassDistribution& p);

/// CDF-variance loss between per-domain mass vectors of predicted and
/// reference signals. The reference is treated as constant; the gradient
/// chains through the mass construction of x_pred.
/// Domain masses: Time -> normalized |x[n]|; Freq -> normalized DB4 subband
/// energies; SecondDerivative -> normalized |x''[n]|.
LossTerm variance_loss_domain(const SampledSignal& x_pred, const SampledSignal& x_ref,
                              MassDomain domain, std::size_t wavelet_levels = 4);

/// All eight terms, their gradients, and the weighted total.
/// Both DTW terms use the same temperature gamma; relative to the fs^2-scaled
/// second-derivative costs it acts nearly hard, which pins curvature features
/// in place. Throws LengthMismatch / RateMismatch.
LossBreakdown total_loss(const SampledSignal& x_pred, const SampledSignal& x_ref,
                         const LossWeights& weights, const SoftDtwConfig& dtw_cfg,
                         const SparsityFreqConfig& freq_cfg,
                         std::size_t wavelet_levels = 4);

/// Central-difference check of an analytic gradient: max relative error over
/// coordinates with |grad| > 1e-8, skipping coordinates within kink_tol of a
/// nondifferentiable point of the loss.
double finite_diff_check(const std::function<double(const SampledSignal&)>& value_fn,
                         const std::vector<double>& analytic_grad,
                         const SampledSignal& x, double eps,
                         const std::function<bool(std::size_t)>& skip_coord = nullptr);

/// Named-loss convenience wrapper for the CLI and acceptance suite.
/// loss_id is one of: sparsity_time, sparsity_sd, sparsity_freq,
/// variance_time, variance_freq, variance_sd, soft_dtw, total.
double finite_diff_check_named(const std::string& loss_id, const SampledSignal& x,
                               const SampledSignal& ref, double eps,
                               const SoftDtwConfig& dtw_cfg = {},
                               const SparsityFreqConfig& freq_cfg = {},
                               const LossWeights& weights = {});

} // namespace ppgkit
