#pragma once

#include <cstdint>
#include <vector>

#include "ppgkit/signal.hpp"

namespace ppgkit {

/// Parametric two-Gaussian beat model: a systolic bump of amplitude 1 at a
/// fixed offset into each beat and a narrower diastolic bump of amplitude
/// diastolic_amp at +diastolic_delay_s. Peak times are analytically known,
/// which makes the generator an exact oracle for the detectors and metrics.
struct SynthConfig {
    double hr_bpm = 60.0;
    double fs = 100.0;
    double duration_s = 10.0;
    double systolic_width_s = 0.12;   // Gaussian sigma of the systolic bump
    double diastolic_amp = 0.4;       // in [0, 1)
    double diastolic_delay_s = 0.30;  // systolic peak -> diastolic peak
    double diastolic_width_s = 0.06;  // narrower, so a dicrotic dip exists
    std::uint64_t seed = 0;
};

struct NoiseConfig {
    double white_sigma = 0.0;
    double baseline_amp = 0.0;
    double baseline_freq_hz = 0.2;
    std::uint64_t seed = 0;
};

/// Ground-truth metadata emitted alongside a synthetic signal.
struct SynthMetadata {
    double hr_bpm = 0.0;
    std::vector<double> systolic_peak_times_s;
    std::vector<double> diastolic_peak_times_s;
};

/// Deterministic given the config. Throws BadConfig on invariant violations.
SampledSignal synth_ppg(const SynthConfig& cfg, SynthMetadata* meta = nullptr);

/// signal + seeded white Gaussian noise + baseline sinusoid.
SampledSignal add_noise(const SampledSignal& signal, const NoiseConfig& cfg);

/// Seeded standard-normal draws (Box-Muller over mt19937_64), bitwise
/// reproducible across platforms. Shared by add_noise, the CLI and the tests.
std::vector<double> gaussian_vector(std::size_t n, std::uint64_t seed, double sigma = 1.0);

} // namespace ppgkit
