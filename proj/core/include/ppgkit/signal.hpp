#pragma once

#include <cstddef>
#include <vector>

#include "ppgkit/errors.hpp"

namespace ppgkit {

/// Uniformly sampled real-valued series. The universal currency of the
/// library: every operator consumes and produces these by value.
struct SampledSignal {
    std::vector<double> samples;
    double fs = 1.0; // sampling rate, Hz

    SampledSignal() = default;

    /// Validates: at least one sample, fs > 0, all values finite.
    SampledSignal(std::vector<double> samples, double fs);

    std::size_t size() const { return samples.size(); }
    double duration_s() const { return static_cast<double>(samples.size()) / fs; }
    double operator[](std::size_t i) const { return samples[i]; }
};

/// Fixed-length windows cut from a source signal at a regular stride.
struct PatchSet {
    std::vector<SampledSignal> patches;
    std::size_t window_len = 0;
    std::size_t stride = 0;
    std::size_t source_len = 0;
};

enum class NormalizeMode { ZScore, MinMax };

/// ZScore: mean 0, sample (n-1) standard deviation 1. MinMax: range [0, 1].
/// Throws ConstantSignal when the required denominator is zero.
SampledSignal normalize(const SampledSignal& signal, NormalizeMode mode);

/// Discrete second derivative: y[n] = fs^2 * (x[n+1] - 2 x[n] + x[n-1]) on
/// interior samples, y[0] = y[N-1] = 0. Output length equals input length.
/// Linear in x. Throws TooShort when the signal has fewer than 3 samples.
SampledSignal second_difference(const SampledSignal& signal);

/// Exact transpose of second_difference as a linear map, boundary-zeroing
/// included. Used to chain gradients from the second-derivative domain back
/// to the raw signal.
SampledSignal second_difference_adjoint(const SampledSignal& grad_out);

/// All maximal full windows; a trailing partial window is dropped.
/// Patch count = floor((len - window_len) / stride) + 1.
PatchSet segment_patches(const SampledSignal& signal, std::size_t window_len,
                         std::size_t stride);

} // namespace ppgkit
