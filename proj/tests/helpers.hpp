#pragma once

// Shared fixtures and independent oracle implementations for the test suite.
// Oracles are deliberately written differently from the library code (brute
// force, closed forms, or alternate formulas) so agreement is meaningful.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "ppgkit/signal.hpp"
#include "ppgkit/synth.hpp"

namespace testutil {

inline ppgkit::SampledSignal random_signal(std::size_t n, std::uint64_t seed,
                                           double fs = 1.0, double sigma = 1.0) {
    return {ppgkit::gaussian_vector(n, seed, sigma), fs};
}

// Uniform integer in [lo, hi] from a dedicated engine (not the library's).
inline std::size_t rand_size(std::mt19937& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// ---- soft-DTW oracles ----

// Classical DTW by an independent hard-min dynamic program.
inline double hard_dtw_oracle(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size(), m = y.size();
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<std::vector<double>> D(n + 1, std::vector<double>(m + 1, inf));
    D[0][0] = 0.0;
    for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = 1; j <= m; ++j) {
            const double c = (x[i - 1] - y[j - 1]) * (x[i - 1] - y[j - 1]);
            D[i][j] = c + std::min({D[i - 1][j - 1], D[i - 1][j], D[i][j - 1]});
        }
    return D[n][m];
}

// All monotone alignment-path costs by explicit recursion (n, m small).
inline void enumerate_path_costs(const std::vector<double>& x, const std::vector<double>& y,
                                 std::size_t i, std::size_t j, double acc,
                                 std::vector<double>& out) {
    const double c = (x[i] - y[j]) * (x[i] - y[j]);
    acc += c;
    if (i + 1 == x.size() && j + 1 == y.size()) {
        out.push_back(acc);
        return;
    }
    if (i + 1 < x.size()) enumerate_path_costs(x, y, i + 1, j, acc, out);
    if (j + 1 < y.size()) enumerate_path_costs(x, y, i, j + 1, acc, out);
    if (i + 1 < x.size() && j + 1 < y.size()) enumerate_path_costs(x, y, i + 1, j + 1, acc, out);
}

// Soft-DTW by exhaustive path enumeration: -gamma * log sum_paths e^{-cost/gamma}.
inline double softdtw_enumeration_oracle(const std::vector<double>& x,
                                         const std::vector<double>& y, double gamma) {
    std::vector<double> costs;
    enumerate_path_costs(x, y, 0, 0, 0.0, costs);
    const double mn = *std::min_element(costs.begin(), costs.end());
    double s = 0.0;
    for (double c : costs) s += std::exp(-(c - mn) / gamma);
    return mn - gamma * std::log(s);
}

// ---- discrete Frechet oracle: brute force over all monotone couplings ----
inline double frechet_oracle(const std::vector<double>& x, const std::vector<double>& y) {
    double best = std::numeric_limits<double>::infinity();
    std::function<void(std::size_t, std::size_t, double)> walk =
        [&](std::size_t i, std::size_t j, double mx) {
            mx = std::max(mx, std::abs(x[i] - y[j]));
            if (mx >= best) return; // prune
            if (i + 1 == x.size() && j + 1 == y.size()) {
                best = std::min(best, mx);
                return;
            }
            if (i + 1 < x.size()) walk(i + 1, j, mx);
            if (j + 1 < y.size()) walk(i, j + 1, mx);
            if (i + 1 < x.size() && j + 1 < y.size()) walk(i + 1, j + 1, mx);
        };
    walk(0, 0, 0.0);
    return best;
}

// ---- metric second implementations (covariance formulation) ----
inline double pearson_oracle(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        syy += y[i] * y[i];
        sxy += x[i] * y[i];
    }
    const double cov = sxy / n - (sx / n) * (sy / n);
    const double vx = sxx / n - (sx / n) * (sx / n);
    const double vy = syy / n - (sy / n) * (sy / n);
    return cov / std::sqrt(vx * vy);
}

inline double rmse_oracle(const std::vector<double>& x, const std::vector<double>& y) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] - y[i]) * (x[i] - y[i]);
    return std::sqrt(s / static_cast<double>(x.size()));
}

// ---- CDF-variance second implementation (explicit prefix sums) ----
inline double variance_oracle(std::vector<double> q, std::vector<double> p) {
    double sq = 0, sp = 0;
    for (double v : q) sq += v;
    for (double v : p) sp += v;
    for (double& v : q) v /= sq;
    for (double& v : p) v /= sp;
    std::vector<double> cq(q.size()), cp(p.size());
    std::partial_sum(q.begin(), q.end(), cq.begin());
    std::partial_sum(p.begin(), p.end(), cp.begin());
    double s = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) s += (cq[i] - cp[i]) * (cq[i] - cp[i]);
    return s / static_cast<double>(q.size());
}

// ---- DFT band energy at one bin-aligned frequency (for spectral tests) ----
inline double tone_bin_energy(const std::vector<double>& x, double fs, double f) {
    const std::size_t n = x.size();
    const std::size_t k = static_cast<std::size_t>(std::llround(f * static_cast<double>(n) / fs));
    double re = 0, im = 0;
    for (std::size_t t = 0; t < n; ++t) {
        const double th = 2.0 * M_PI * static_cast<double>(k * t) / static_cast<double>(n);
        re += x[t] * std::cos(th);
        im -= x[t] * std::sin(th);
    }
    return re * re + im * im;
}

} // namespace testutil
