#include "ppgkit/reconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ppgkit/metrics.hpp"
#include "ppgkit/spectral.hpp"

namespace ppgkit {

ReconstructionResult reconstruct(const SampledSignal& target, const SampledSignal& init,
                                 const LossWeights& weights, const OptimConfig& ocfg,
                                 const SoftDtwConfig& dtw_cfg,
                                 const SparsityFreqConfig& freq_cfg) {
    if (target.size() != init.size())
        throw LengthMismatch("reconstruct: target/init length mismatch");
    if (target.fs != init.fs)
        throw RateMismatch("reconstruct: target/init rate mismatch");
    if (!(ocfg.step > 0.0))
        throw BadConfig("reconstruct: step must be positive");
    if (!(ocfg.decay > 0.0) || ocfg.decay > 1.0)
        throw BadConfig("reconstruct: decay must be in (0, 1]");

    const std::size_t n = init.size();
    SampledSignal x = init;
    std::vector<double> m(n, 0.0), v(n, 0.0); // moment accumulators
    constexpr double kBeta1 = 0.9, kBeta2 = 0.999, kEps = 1e-8;
    constexpr double kMomentum = 0.9;

    ReconstructionResult res;
    res.final_signal = init;
    double best = std::numeric_limits<double>::infinity();
    double divergence_guard = 1e6; // widened after the first evaluation
    double window_best = best;     // best loss at the start of the tol window
    std::size_t window_start = 0;

    for (std::size_t t = 1; t <= ocfg.max_iters; ++t) {
        LossBreakdown bd;
        try {
            bd = total_loss(x, target, weights, dtw_cfg, freq_cfg);
        } catch (const Error&) {
            // The first evaluation vets the inputs and config; a failure on a
            // later iterate means the update blew the numerics up (overflow in
            // the cost or gradient chain), which is divergence.
            if (t == 1) throw;
            throw Diverged("reconstruct: loss evaluation overflowed");
        }
        if (t == 1) {
            // The raw weighted total of a noisy start can legitimately exceed
            // 1e6 at high sampling rates, so the guard is relative as well.
            divergence_guard = std::max(1e6, 100.0 * std::abs(bd.total));
            window_best = bd.total;
        }
        if (!std::isfinite(bd.total) || bd.total > divergence_guard)
            throw Diverged("reconstruct: total loss diverged");
        if (bd.total < best) {
            best = bd.total;
            res.final_signal = x;
        }
        res.iters_run = t;
        if (ocfg.log_every > 0 && ((t - 1) % ocfg.log_every == 0 || t == ocfg.max_iters)) {
            LossTraceRow row;
            row.iter = t;
            row.total = bd.total;
            for (const auto& name : loss_term_names())
                row.term_values.push_back(bd.terms.at(name).value);
            res.loss_trace.push_back(std::move(row));
        }

        // Relative-progress stop over a 50-iteration window.
        if (t - window_start >= 50) {
            const double denom = std::max(std::abs(window_best), 1e-30);
            if (std::abs(window_best - best) / denom < ocfg.tol) break;
            window_best = best;
            window_start = t;
        }

        // Geometric step schedule: large early steps denoise, tiny late steps
        // settle the stiff second-derivative alignment terms.
        const double lr = ocfg.step * std::pow(ocfg.decay, static_cast<double>(t) /
                                                               static_cast<double>(ocfg.max_iters));

        const std::vector<double>& g = bd.total_grad;
        switch (ocfg.method) {
        case OptimMethod::PlainGd:
            for (std::size_t i = 0; i < n; ++i) x.samples[i] -= lr * g[i];
            break;
        case OptimMethod::Momentum:
            for (std::size_t i = 0; i < n; ++i) {
                m[i] = kMomentum * m[i] + g[i];
                x.samples[i] -= lr * m[i];
            }
            break;
        case OptimMethod::AdaptiveMoments: {
            const double c1 = 1.0 - std::pow(kBeta1, static_cast<double>(t));
            const double c2 = 1.0 - std::pow(kBeta2, static_cast<double>(t));
            for (std::size_t i = 0; i < n; ++i) {
                m[i] = kBeta1 * m[i] + (1.0 - kBeta1) * g[i];
                v[i] = kBeta2 * v[i] + (1.0 - kBeta2) * g[i] * g[i];
                x.samples[i] -= lr * (m[i] / c1) / (std::sqrt(v[i] / c2) + kEps);
            }
            break;
        }
        }
        // Magnitudes beyond 1e60 overflow the polynomial loss/gradient chains
        // downstream; no meaningful iterate gets anywhere near that.
        for (double s : x.samples)
            if (!std::isfinite(s) || std::abs(s) > 1e60)
                throw Diverged("reconstruct: iterate left the finite range");
    }

    res.best_total = best;
    const SampledSignal& out = res.final_signal;
    res.final_metrics.pearson = pearson(out, target);
    res.final_metrics.rmse = rmse(out, target);
    res.final_metrics.frechet = frechet(out, target);
    try {
        res.final_metrics.hr_error_bpm =
            std::abs(spectral_peak_hr(out) - spectral_peak_hr(target));
    } catch (const Error&) {
        // HR is not estimable for every input (too short, or the band does
        // not fit under Nyquist); the waveform metrics above still stand.
        res.final_metrics.hr_error_bpm = std::numeric_limits<double>::quiet_NaN();
    }
    return res;
}

} // namespace ppgkit
