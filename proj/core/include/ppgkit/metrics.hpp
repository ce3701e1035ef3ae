#pragma once

#include <vector>

#include "ppgkit/signal.hpp"

namespace ppgkit {

struct HrSeriesPair {
    std::vector<double> hr_pred; // bpm
    std::vector<double> hr_true; // bpm
};

struct HrErrorStats {
    double mae_bpm = 0.0;
    double rmse_bpm = 0.0;
    double r = 0.0;
};

/// Pearson correlation coefficient. Throws ConstantInput when either signal
/// has zero variance, LengthMismatch on unequal lengths.
double pearson(const SampledSignal& x, const SampledSignal& y);

/// Discrete Frechet distance between the two value sequences (scalar
/// Euclidean pointwise distance, standard coupling DP). Symmetric.
double frechet(const SampledSignal& x, const SampledSignal& y);

/// sqrt(mean((x - y)^2)).
double rmse(const SampledSignal& x, const SampledSignal& y);

HrErrorStats hr_error_stats(const HrSeriesPair& pair);

} // namespace ppgkit
