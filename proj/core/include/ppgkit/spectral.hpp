#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "ppgkit/signal.hpp"

namespace ppgkit {

/// Frequency bins (Hz, strictly increasing) and nonnegative magnitudes over a band.
struct Spectrum {
    std::vector<double> freqs;
    std::vector<double> mags;
    double band_lo = 0.0;
    double band_hi = 0.0;
};

/// Multilevel DB4 coefficient set. `details` runs finest to coarsest;
/// periodic extension keeps the transform orthonormal, so the total
/// coefficient count equals the source length.
struct WaveletDecomposition {
    std::size_t levels = 0;
    std::vector<double> approx;               // coarsest level
    std::vector<std::vector<double>> details; // finest -> coarsest
    std::size_t source_len = 0;
    double fs = 1.0;
};

/// DFT magnitudes |X_k| at bins k*fs/N restricted to [f_lo, f_hi].
/// Throws BadBand for an invalid band, TooShort for len < 8.
Spectrum magnitude_spectrum(const SampledSignal& signal, double f_lo, double f_hi);

/// Orthonormal DB4 analysis with periodic extension. Requires the length to
/// be divisible by 2^levels (BadLength otherwise). Energy is preserved.
WaveletDecomposition dwt_db4(const SampledSignal& signal, std::size_t levels);

/// Perfect-reconstruction inverse of dwt_db4. Throws Malformed when the
/// per-level coefficient lengths are inconsistent.
SampledSignal idwt_db4(const WaveletDecomposition& decomp);

/// Sum of squared coefficients per subband (approx first, then details
/// coarsest to finest) with nominal subband center frequencies. This is the
/// frequency-domain mass fed to the variance loss.
Spectrum wavelet_mass(const SampledSignal& signal, std::size_t levels);

/// 60 x argmax frequency of the magnitude spectrum over [band_lo, band_hi] Hz
/// with parabolic interpolation around the peak bin. Throws NoPeak when the
/// in-band spectrum is identically zero.
double spectral_peak_hr(const SampledSignal& signal, double band_lo = 0.5,
                        double band_hi = 5.0);

/// The 8 DB4 scaling filter taps (orthonormal, sum = sqrt(2)).
const std::vector<double>& db4_scaling_taps();

/// The 8 DB4 wavelet filter taps, g[k] = (-1)^k h[7-k].
const std::vector<double>& db4_wavelet_taps();

} // namespace ppgkit
