#include "ppgkit/softdtw.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace ppgkit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void validate(const SampledSignal& x, const SampledSignal& y, const SoftDtwConfig& cfg,
              const char* who) {
    if (x.size() == 0 || y.size() == 0)
        throw EmptyInput(std::string(who) + ": empty sequence");
    if (!std::isfinite(cfg.gamma) || cfg.gamma < 0.0)
        throw BadConfig(std::string(who) + ": gamma must be finite and >= 0");
}

inline double softmin3(double a, double b, double c, double gamma) {
    const double mn = std::min(a, std::min(b, c));
    if (gamma <= 0.0 || !std::isfinite(mn)) return mn;
    // Terms below exp(-40) are under 1 ulp of the guaranteed min term 1.0.
    auto e = [&](double v) {
        const double z = (v - mn) / gamma;
        return z == 0.0 ? 1.0 : (z > 40.0 ? 0.0 : std::exp(-z));
    };
    const double s = e(a) + e(b) + e(c);
    return s == 1.0 ? mn : mn - gamma * std::log(s);
}

inline double sqcost(double a, double b) {
    const double d = a - b;
    return d * d;
}

void forward(const SampledSignal& x, const SampledSignal& y, double gamma,
             SoftDtwWorkspace& ws) {
    const std::size_t n = x.size();
    const std::size_t m = y.size();
    ws.n = n;
    ws.m = m;
    const std::size_t W = m + 2;
    ws.R.assign((n + 2) * W, kInf);
    ws.R[0] = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
        const double xi = x[i - 1];
        for (std::size_t j = 1; j <= m; ++j) {
            const double sm = softmin3(ws.R[(i - 1) * W + (j - 1)],
                                       ws.R[(i - 1) * W + j],
                                       ws.R[i * W + (j - 1)], gamma);
            ws.R[i * W + j] = sqcost(xi, y[j - 1]) + sm;
        }
    }
}

// Backward recursion of the expected-alignment table for gamma > 0.
void backward(const SampledSignal& x, const SampledSignal& y, double gamma,
              SoftDtwWorkspace& ws) {
    const std::size_t n = ws.n;
    const std::size_t m = ws.m;
    const std::size_t W = m + 2;
    std::vector<double> E((n + 2) * W, 0.0);
    std::vector<double>& R = ws.R;
    // Pad for the recursion: the virtual terminal cell carries weight 1 and
    // the out-of-range column/row must never attract probability mass.
    R[(n + 1) * W + (m + 1)] = R[n * W + m];
    for (std::size_t i = 1; i <= n; ++i) R[i * W + (m + 1)] = -kInf;
    for (std::size_t j = 1; j <= m; ++j) R[(n + 1) * W + j] = -kInf;
    E[(n + 1) * W + (m + 1)] = 1.0;
    auto cost = [&](std::size_t i, std::size_t j) -> double {
        if (i <= n && j <= m) return sqcost(x[i - 1], y[j - 1]);
        return 0.0; // virtual terminal cell
    };
    // The softmin recursion guarantees nonpositive arguments; weights under
    // exp(-40) contribute less than 1 ulp and are dropped.
    auto w = [gamma](double z) { return z < -40.0 * gamma ? 0.0 : std::exp(z / gamma); };
    for (std::size_t i = n; i >= 1; --i) {
        for (std::size_t j = m; j >= 1; --j) {
            const double rij = R[i * W + j];
            const double a = w(R[(i + 1) * W + j] - rij - cost(i + 1, j));
            const double b = w(R[i * W + (j + 1)] - rij - cost(i, j + 1));
            const double c = w(R[(i + 1) * W + (j + 1)] - rij - cost(i + 1, j + 1));
            E[i * W + j] = E[(i + 1) * W + j] * a + E[i * W + (j + 1)] * b +
                           E[(i + 1) * W + (j + 1)] * c;
        }
    }
    ws.E.assign(n * m, 0.0);
    for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = 1; j <= m; ++j)
            ws.E[(i - 1) * m + (j - 1)] = E[i * W + j];
}

// gamma = 0: indicator of the unique optimal path, backtracked with
// deterministic tie-breaking (diagonal, then up, then left).
void hard_path(SoftDtwWorkspace& ws) {
    const std::size_t n = ws.n;
    const std::size_t m = ws.m;
    const std::size_t W = m + 2;
    ws.E.assign(n * m, 0.0);
    std::size_t i = n, j = m;
    while (true) {
        ws.E[(i - 1) * m + (j - 1)] = 1.0;
        if (i == 1 && j == 1) break;
        const double diag = ws.R[(i - 1) * W + (j - 1)];
        const double up = ws.R[(i - 1) * W + j];
        const double left = ws.R[i * W + (j - 1)];
        if (diag <= up && diag <= left) {
            --i;
            --j;
        } else if (up <= left) {
            --i;
        } else {
            --j;
        }
    }
}

} // namespace

double soft_dtw(const SampledSignal& x, const SampledSignal& y,
                const SoftDtwConfig& cfg, SoftDtwWorkspace* workspace) {
    validate(x, y, cfg, "soft_dtw");
    SoftDtwWorkspace local;
    SoftDtwWorkspace& ws = workspace ? *workspace : local;
    forward(x, y, cfg.gamma, ws);
    return ws.R[x.size() * (y.size() + 2) + y.size()];
}

std::vector<double> soft_dtw_grad(const SampledSignal& x, const SampledSignal& y,
                                  const SoftDtwConfig& cfg,
                                  SoftDtwWorkspace* workspace) {
    validate(x, y, cfg, "soft_dtw_grad");
    SoftDtwWorkspace local;
    SoftDtwWorkspace& ws = workspace ? *workspace : local;
    forward(x, y, cfg.gamma, ws);
    if (cfg.gamma > 0.0)
        backward(x, y, cfg.gamma, ws);
    else
        hard_path(ws);
    const std::size_t n = x.size();
    const std::size_t m = y.size();
    std::vector<double> grad(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < m; ++j)
            acc += ws.E[i * m + j] * 2.0 * (x[i] - y[j]);
        grad[i] = acc;
    }
    return grad;
}

} // namespace ppgkit
