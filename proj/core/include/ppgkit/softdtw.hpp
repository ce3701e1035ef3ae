#pragma once

#include <cstddef>
#include <vector>

#include "ppgkit/signal.hpp"

namespace ppgkit {

/// Soft-DTW settings. gamma = 0 reproduces classical DTW; gamma > 0 replaces
/// the min over alignment paths with a temperature-gamma soft-min. The
/// per-element cost is squared Euclidean on scalar samples.
struct SoftDtwConfig {
    double gamma = 1.0;
};

/// Accumulated-cost table R ((n+2) x (m+2), padded) and expected-alignment
/// table E (n x m) from one forward/backward pass. E row/column indices match
/// sample indices of x and y.
struct SoftDtwWorkspace {
    std::size_t n = 0;
    std::size_t m = 0;
    std::vector<double> R; // (n+2) * (m+2), row-major
    std::vector<double> E; // n * m, row-major

    double r(std::size_t i, std::size_t j) const { return R[i * (m + 2) + j]; }
    double e(std::size_t i, std::size_t j) const { return E[i * m + j]; }
};

/// Forward dynamic program. Returns the soft-DTW value and a workspace with
/// the filled R table (E left empty until soft_dtw_grad runs the backward
/// recursion). Throws EmptyInput when either sequence is empty.
double soft_dtw(const SampledSignal& x, const SampledSignal& y,
                const SoftDtwConfig& cfg, SoftDtwWorkspace* workspace = nullptr);

/// Gradient of soft_dtw w.r.t. x. For gamma > 0 this is the smooth gradient
/// through the expected alignment E; for gamma = 0 it follows the unique
/// optimal path (ties broken diagonal-first, deterministically).
std::vector<double> soft_dtw_grad(const SampledSignal& x, const SampledSignal& y,
                                  const SoftDtwConfig& cfg,
                                  SoftDtwWorkspace* workspace = nullptr);

} // namespace ppgkit
