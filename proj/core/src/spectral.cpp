#include "ppgkit/spectral.hpp"

#include <cmath>
#include <numbers>

namespace ppgkit {

const std::vector<double>& db4_scaling_taps() {
    static const std::vector<double> h = {
        0.2303778133088965,    0.7148465705529157,   0.6308807679298589,
        -0.027983769416859854, -0.18703481171909309, 0.030841381835560764,
        0.0328830116668852,    -0.010597401785069032};
    return h;
}

const std::vector<double>& db4_wavelet_taps() {
    static const std::vector<double> g = [] {
        const auto& h = db4_scaling_taps();
        std::vector<double> out(h.size());
        for (std::size_t k = 0; k < h.size(); ++k)
            out[k] = ((k % 2 == 0) ? 1.0 : -1.0) * h[h.size() - 1 - k];
        return out;
    }();
    return g;
}

Spectrum magnitude_spectrum(const SampledSignal& signal, double f_lo, double f_hi) {
    const std::size_t n = signal.size();
    if (n < 8)
        throw TooShort("magnitude_spectrum: need at least 8 samples");
    if (!(f_lo >= 0.0) || !(f_lo < f_hi) || !(f_hi <= signal.fs / 2.0))
        throw BadBand("magnitude_spectrum: band must satisfy 0 <= lo < hi <= fs/2");
    const double df = signal.fs / static_cast<double>(n);
    Spectrum spec;
    spec.band_lo = f_lo;
    spec.band_hi = f_hi;
    const auto& x = signal.samples;
    for (std::size_t k = 0; k <= n / 2; ++k) {
        const double f = static_cast<double>(k) * df;
        if (f < f_lo || f > f_hi) continue;
        double re = 0.0, im = 0.0;
        const double w = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
        for (std::size_t t = 0; t < n; ++t) {
            const double th = w * static_cast<double>(t);
            re += x[t] * std::cos(th);
            im -= x[t] * std::sin(th);
        }
        spec.freqs.push_back(f);
        spec.mags.push_back(std::hypot(re, im));
    }
    if (spec.freqs.empty())
        throw BadBand("magnitude_spectrum: band contains no DFT bins");
    return spec;
}

namespace {

// One analysis step: x (even length) -> approx, detail halves via periodic
// convolution with the DB4 filter pair.
void dwt_step(const std::vector<double>& x, std::vector<double>& a, std::vector<double>& d) {
    const auto& h = db4_scaling_taps();
    const auto& g = db4_wavelet_taps();
    const std::size_t n = x.size();
    const std::size_t half = n / 2;
    a.assign(half, 0.0);
    d.assign(half, 0.0);
    for (std::size_t i = 0; i < half; ++i) {
        double sa = 0.0, sd = 0.0;
        for (std::size_t k = 0; k < 8; ++k) {
            const double v = x[(2 * i + k) % n];
            sa += h[k] * v;
            sd += g[k] * v;
        }
        a[i] = sa;
        d[i] = sd;
    }
}

std::vector<double> idwt_step(const std::vector<double>& a, const std::vector<double>& d) {
    const auto& h = db4_scaling_taps();
    const auto& g = db4_wavelet_taps();
    const std::size_t n = 2 * a.size();
    std::vector<double> x(n, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < 8; ++k)
            x[(2 * i + k) % n] += h[k] * a[i] + g[k] * d[i];
    return x;
}

} // namespace

WaveletDecomposition dwt_db4(const SampledSignal& signal, std::size_t levels) {
    const std::size_t n = signal.size();
    if (levels < 1)
        throw BadConfig("dwt_db4: levels must be >= 1");
    if (n % (std::size_t{1} << levels) != 0)
        throw BadLength("dwt_db4: length must be divisible by 2^levels");
    WaveletDecomposition dec;
    dec.levels = levels;
    dec.source_len = n;
    dec.fs = signal.fs;
    std::vector<double> a = signal.samples;
    for (std::size_t lvl = 0; lvl < levels; ++lvl) {
        std::vector<double> next_a, d;
        dwt_step(a, next_a, d);
        dec.details.push_back(std::move(d));
        a = std::move(next_a);
    }
    dec.approx = std::move(a);
    return dec;
}

SampledSignal idwt_db4(const WaveletDecomposition& decomp) {
    if (decomp.levels == 0 || decomp.details.size() != decomp.levels)
        throw Malformed("idwt_db4: level count mismatch");
    std::vector<double> a = decomp.approx;
    for (std::size_t lvl = decomp.levels; lvl-- > 0;) {
        if (decomp.details[lvl].size() != a.size())
            throw Malformed("idwt_db4: inconsistent coefficient lengths");
        a = idwt_step(a, decomp.details[lvl]);
    }
    if (a.size() != decomp.source_len)
        throw Malformed("idwt_db4: source length mismatch");
    return SampledSignal(std::move(a), decomp.fs);
}

Spectrum wavelet_mass(const SampledSignal& signal, std::size_t levels) {
    WaveletDecomposition dec = dwt_db4(signal, levels);
    Spectrum spec;
    spec.band_lo = 0.0;
    spec.band_hi = signal.fs / 2.0;
    auto energy = [](const std::vector<double>& c) {
        double s = 0.0;
        for (double v : c) s += v * v;
        return s;
    };
    // Ascending nominal center frequency: approx, then details coarse -> fine.
    const double fs = signal.fs;
    spec.freqs.push_back(fs / std::pow(2.0, static_cast<double>(levels) + 2.0));
    spec.mags.push_back(energy(dec.approx));
    for (std::size_t lvl = levels; lvl >= 1; --lvl) {
        spec.freqs.push_back(0.75 * fs / std::pow(2.0, static_cast<double>(lvl)));
        spec.mags.push_back(energy(dec.details[lvl - 1]));
    }
    return spec;
}

double spectral_peak_hr(const SampledSignal& signal, double band_lo, double band_hi) {
    if (signal.duration_s() < 5.0)
        throw TooShort("spectral_peak_hr: need at least 5 s of signal");
    Spectrum spec = magnitude_spectrum(signal, band_lo, band_hi);
    std::size_t best = 0;
    for (std::size_t i = 1; i < spec.mags.size(); ++i)
        if (spec.mags[i] > spec.mags[best]) best = i;
    if (spec.mags[best] == 0.0)
        throw NoPeak("spectral_peak_hr: in-band spectrum is identically zero");
    double f = spec.freqs[best];
    if (best > 0 && best + 1 < spec.mags.size()) {
        // Parabolic refinement so resolution is not limited to bin width.
        const double ym = spec.mags[best - 1];
        const double y0 = spec.mags[best];
        const double yp = spec.mags[best + 1];
        const double denom = ym - 2.0 * y0 + yp;
        if (denom != 0.0) {
            const double delta = 0.5 * (ym - yp) / denom;
            const double bin_width = spec.freqs[1] - spec.freqs[0];
            f += delta * bin_width;
        }
    }
    return 60.0 * f;
}

} // namespace ppgkit
