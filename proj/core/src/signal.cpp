#include "ppgkit/signal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ppgkit {

SampledSignal::SampledSignal(std::vector<double> s, double rate)
    : samples(std::move(s)), fs(rate) {
    if (samples.empty())
        throw EmptyInput("SampledSignal: need at least one sample");
    if (!(fs > 0.0) || !std::isfinite(fs))
        throw BadConfig("SampledSignal: fs must be positive and finite");
    for (double v : samples)
        if (!std::isfinite(v))
            throw BadConfig("SampledSignal: non-finite sample value");
}

SampledSignal normalize(const SampledSignal& signal, NormalizeMode mode) {
    const auto& x = signal.samples;
    const std::size_t n = x.size();
    std::vector<double> out(n);
    if (mode == NormalizeMode::ZScore) {
        const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
        double ss = 0.0;
        for (double v : x) ss += (v - mean) * (v - mean);
        if (n < 2 || ss == 0.0)
            throw ConstantSignal("normalize: zero variance");
        const double sd = std::sqrt(ss / static_cast<double>(n - 1));
        for (std::size_t i = 0; i < n; ++i) out[i] = (x[i] - mean) / sd;
    } else {
        const auto [mn, mx] = std::minmax_element(x.begin(), x.end());
        if (*mx == *mn)
            throw ConstantSignal("normalize: max equals min");
        const double range = *mx - *mn;
        for (std::size_t i = 0; i < n; ++i) out[i] = (x[i] - *mn) / range;
    }
    return SampledSignal(std::move(out), signal.fs);
}

SampledSignal second_difference(const SampledSignal& signal) {
    const auto& x = signal.samples;
    const std::size_t n = x.size();
    if (n < 3)
        throw TooShort("second_difference: need at least 3 samples");
    const double scale = signal.fs * signal.fs;
    std::vector<double> y(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i)
        y[i] = scale * (x[i + 1] - 2.0 * x[i] + x[i - 1]);
    return SampledSignal(std::move(y), signal.fs);
}

SampledSignal second_difference_adjoint(const SampledSignal& grad_out) {
    const auto& g = grad_out.samples;
    const std::size_t n = g.size();
    if (n < 3)
        throw TooShort("second_difference_adjoint: need at least 3 samples");
    const double scale = grad_out.fs * grad_out.fs;
    std::vector<double> y(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        y[i - 1] += scale * g[i];
        y[i] -= 2.0 * scale * g[i];
        y[i + 1] += scale * g[i];
    }
    return SampledSignal(std::move(y), grad_out.fs);
}

PatchSet segment_patches(const SampledSignal& signal, std::size_t window_len,
                         std::size_t stride) {
    const std::size_t n = signal.size();
    if (window_len < 1 || window_len > n || stride < 1)
        throw BadWindow("segment_patches: invalid window/stride");
    PatchSet set;
    set.window_len = window_len;
    set.stride = stride;
    set.source_len = n;
    const std::size_t count = (n - window_len) / stride + 1;
    set.patches.reserve(count);
    for (std::size_t p = 0; p < count; ++p) {
        const std::size_t start = p * stride;
        std::vector<double> w(signal.samples.begin() + static_cast<std::ptrdiff_t>(start),
                              signal.samples.begin() + static_cast<std::ptrdiff_t>(start + window_len));
        set.patches.emplace_back(std::move(w), signal.fs);
    }
    return set;
}

} // namespace ppgkit
