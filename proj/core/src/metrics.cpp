#include "ppgkit/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace ppgkit {

namespace {

double pearson_raw(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0)
        throw ConstantInput("pearson: constant input");
    return sxy / std::sqrt(sxx * syy);
}

} // namespace

double pearson(const SampledSignal& x, const SampledSignal& y) {
    if (x.size() != y.size())
        throw LengthMismatch("pearson: length mismatch");
    if (x.size() < 2)
        throw TooShort("pearson: need at least 2 samples");
    return pearson_raw(x.samples, y.samples);
}

double frechet(const SampledSignal& x, const SampledSignal& y) {
    const std::size_t n = x.size();
    const std::size_t m = y.size();
    if (n == 0 || m == 0)
        throw EmptyInput("frechet: empty curve");
    // ca[i][j] = min over couplings of max pointwise distance, one row at a time.
    std::vector<double> prev(m), cur(m);
    for (std::size_t j = 0; j < m; ++j) {
        const double d = std::abs(x[0] - y[j]);
        prev[j] = j == 0 ? d : std::max(prev[j - 1], d);
    }
    for (std::size_t i = 1; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            const double d = std::abs(x[i] - y[j]);
            double reach;
            if (j == 0) {
                reach = prev[0];
            } else {
                reach = std::min({prev[j], prev[j - 1], cur[j - 1]});
            }
            cur[j] = std::max(reach, d);
        }
        std::swap(prev, cur);
    }
    return prev[m - 1];
}

double rmse(const SampledSignal& x, const SampledSignal& y) {
    if (x.size() != y.size())
        throw LengthMismatch("rmse: length mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = x[i] - y[i];
        acc += d * d;
    }
    return std::sqrt(acc / static_cast<double>(x.size()));
}

HrErrorStats hr_error_stats(const HrSeriesPair& pair) {
    const std::size_t n = pair.hr_pred.size();
    if (n == 0 || pair.hr_true.size() != n)
        throw LengthMismatch("hr_error_stats: series must have equal nonzero length");
    for (std::size_t i = 0; i < n; ++i)
        if (!(pair.hr_pred[i] > 0.0) || !(pair.hr_true[i] > 0.0))
            throw BadConfig("hr_error_stats: HR values must be positive");
    HrErrorStats s;
    double se = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = pair.hr_pred[i] - pair.hr_true[i];
        s.mae_bpm += std::abs(d);
        se += d * d;
    }
    s.mae_bpm /= static_cast<double>(n);
    s.rmse_bpm = std::sqrt(se / static_cast<double>(n));
    s.r = pearson_raw(pair.hr_pred, pair.hr_true);
    return s;
}

} // namespace ppgkit
