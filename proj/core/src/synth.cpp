#include "ppgkit/synth.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace ppgkit {

namespace {
constexpr double kSystolicOffsetS = 0.15; // beat start -> systolic peak
}

std::vector<double> gaussian_vector(std::size_t n, std::uint64_t seed, double sigma) {
    std::mt19937_64 rng(seed);
    auto uniform = [&rng]() {
        // (0, 1], safe for log()
        return (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
    };
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; i += 2) {
        const double u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double th = 2.0 * std::numbers::pi * u2;
        out[i] = sigma * r * std::cos(th);
        if (i + 1 < n) out[i + 1] = sigma * r * std::sin(th);
    }
    return out;
}

SampledSignal synth_ppg(const SynthConfig& cfg, SynthMetadata* meta) {
    if (cfg.hr_bpm < 30.0 || cfg.hr_bpm > 300.0)
        throw BadConfig("synth_ppg: hr_bpm must be in [30, 300]");
    if (!(cfg.fs > 0.0) || !(cfg.duration_s > 0.0))
        throw BadConfig("synth_ppg: fs and duration must be positive");
    if (!(cfg.systolic_width_s > 0.0) || !(cfg.diastolic_width_s > 0.0))
        throw BadConfig("synth_ppg: widths must be positive");
    if (cfg.diastolic_amp < 0.0 || cfg.diastolic_amp >= 1.0)
        throw BadConfig("synth_ppg: diastolic_amp must be in [0, 1)");
    const double period = 60.0 / cfg.hr_bpm;
    if (!(cfg.diastolic_delay_s < period))
        throw BadConfig("synth_ppg: diastolic delay must be shorter than the beat period");

    const std::size_t n = static_cast<std::size_t>(std::llround(cfg.duration_s * cfg.fs));
    std::vector<double> x(n, 0.0);
    const long nbeats = static_cast<long>(std::ceil(cfg.duration_s / period));
    if (meta) {
        meta->hr_bpm = cfg.hr_bpm;
        meta->systolic_peak_times_s.clear();
        meta->diastolic_peak_times_s.clear();
    }
    for (long b = -1; b <= nbeats + 1; ++b) {
        const double t_sys = static_cast<double>(b) * period + kSystolicOffsetS;
        const double t_dia = t_sys + cfg.diastolic_delay_s;
        for (std::size_t i = 0; i < n; ++i) {
            const double t = static_cast<double>(i) / cfg.fs;
            const double ds = (t - t_sys) / cfg.systolic_width_s;
            const double dd = (t - t_dia) / cfg.diastolic_width_s;
            x[i] += std::exp(-0.5 * ds * ds) + cfg.diastolic_amp * std::exp(-0.5 * dd * dd);
        }
        if (meta && t_sys >= 0.0 && t_sys < cfg.duration_s) {
            meta->systolic_peak_times_s.push_back(t_sys);
            if (cfg.diastolic_amp > 0.0 && t_dia < cfg.duration_s)
                meta->diastolic_peak_times_s.push_back(t_dia);
        }
    }
    return SampledSignal(std::move(x), cfg.fs);
}

SampledSignal add_noise(const SampledSignal& signal, const NoiseConfig& cfg) {
    const std::size_t n = signal.size();
    std::vector<double> out = signal.samples;
    if (cfg.white_sigma > 0.0) {
        const std::vector<double> noise = gaussian_vector(n, cfg.seed, cfg.white_sigma);
        for (std::size_t i = 0; i < n; ++i) out[i] += noise[i];
    }
    if (cfg.baseline_amp > 0.0) {
        const double w = 2.0 * std::numbers::pi * cfg.baseline_freq_hz / signal.fs;
        for (std::size_t i = 0; i < n; ++i)
            out[i] += cfg.baseline_amp * std::sin(w * static_cast<double>(i));
    }
    return SampledSignal(std::move(out), signal.fs);
}

} // namespace ppgkit
