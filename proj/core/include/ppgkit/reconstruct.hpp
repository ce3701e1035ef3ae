#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ppgkit/losses.hpp"
#include "ppgkit/signal.hpp"

namespace ppgkit {

enum class OptimMethod { PlainGd, Momentum, AdaptiveMoments };

struct OptimConfig {
    std::size_t max_iters = 2000;
    double step = 0.05;
    OptimMethod method = OptimMethod::AdaptiveMoments;
    double tol = 1e-6; // stop when relative best-loss decrease < tol over 50 iters
    // Geometric learning-rate schedule: lr(t) = step * decay^(t / max_iters),
    // so decay is the total shrink factor over the run and 1 keeps lr fixed.
    // The loss terms live on very different scales (the second-derivative
    // alignment is the harshest), so late iterations need far smaller steps
    // than the early denoising phase.
    double decay = 1e-3;
    std::uint64_t seed = 0;
    std::size_t log_every = 50;
};

/// One logged row of the optimization trace (current-iterate values).
struct LossTraceRow {
    std::size_t iter = 0;
    double total = 0.0;
    std::vector<double> term_values; // ordered per loss_term_names()
};

struct ReconstructionMetrics {
    double pearson = 0.0;
    double rmse = 0.0;
    double frechet = 0.0;
    double hr_error_bpm = 0.0;
};

struct ReconstructionResult {
    SampledSignal final_signal; // best-seen candidate
    std::vector<LossTraceRow> loss_trace;
    std::size_t iters_run = 0;
    double best_total = 0.0;
    ReconstructionMetrics final_metrics;
};

/// First-order descent on the weighted total loss, starting from `init`.
/// Returns the best-seen candidate (the nonconvex DTW landscape can
/// oscillate). Deterministic given inputs and config.
/// Throws Diverged when the total blows past a divergence guard.
ReconstructionResult reconstruct(const SampledSignal& target, const SampledSignal& init,
                                 const LossWeights& weights, const OptimConfig& ocfg,
                                 const SoftDtwConfig& dtw_cfg,
                                 const SparsityFreqConfig& freq_cfg);

} // namespace ppgkit
