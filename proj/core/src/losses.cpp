#include "ppgkit/losses.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ppgkit/spectral.hpp"

namespace ppgkit {

namespace {

inline double sgn(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

// Largest level count <= requested that divides the signal length.
std::size_t usable_levels(std::size_t n, std::size_t requested) {
    std::size_t lv = requested;
    while (lv > 1 && n % (std::size_t{1} << lv) != 0) --lv;
    if (n % (std::size_t{1} << lv) != 0)
        throw BadLength("wavelet mass: signal length must be even");
    return lv;
}

// CDF-variance loss between raw (unnormalized) mass vectors; returns the
// value and its gradient w.r.t. the raw predicted masses.
double cdf_variance(const std::vector<double>& mq, const std::vector<double>& mp,
                    std::vector<double>* grad_mq) {
    const std::size_t d = mq.size();
    double sq = 0.0, sp = 0.0;
    for (double v : mq) sq += v;
    for (double v : mp) sp += v;
    if (sq == 0.0 || sp == 0.0)
        throw ZeroMass("cdf_variance: zero total mass");
    double cq = 0.0, cp = 0.0;
    double value = 0.0;
    std::vector<double> dC(d);
    for (std::size_t i = 0; i < d; ++i) {
        cq += mq[i] / sq;
        cp += mp[i] / sp;
        const double diff = cq - cp;
        value += diff * diff;
        dC[i] = 2.0 / static_cast<double>(d) * diff;
    }
    value /= static_cast<double>(d);
    if (grad_mq) {
        // dvalue/dq_j = sum_{i >= j} dC_i, then through q_j = mq_j / sq.
        std::vector<double> dq(d);
        double acc = 0.0;
        for (std::size_t j = d; j-- > 0;) {
            acc += dC[j];
            dq[j] = acc;
        }
        double dot = 0.0;
        for (std::size_t j = 0; j < d; ++j) dot += dq[j] * (mq[j] / sq);
        grad_mq->assign(d, 0.0);
        for (std::size_t j = 0; j < d; ++j) (*grad_mq)[j] = (dq[j] - dot) / sq;
    }
    return value;
}

} // namespace

MassDistribution::MassDistribution(std::vector<double> raw) : mass(std::move(raw)) {
    if (mass.empty())
        throw BadConfig("MassDistribution: need at least one bin");
    double sum = 0.0;
    for (double v : mass) {
        if (v < 0.0 || !std::isfinite(v))
            throw BadConfig("MassDistribution: entries must be nonnegative and finite");
        sum += v;
    }
    if (sum == 0.0)
        throw ZeroMass("MassDistribution: total mass is zero");
    for (double& v : mass) v /= sum;
}

const std::vector<std::string>& loss_term_names() {
    static const std::vector<std::string> names = {
        "dtw_t",  "sparsity_t",  "variance_t", "sparsity_f",
        "variance_f", "dtw_sd", "sparsity_sd", "variance_sd"};
    return names;
}

LossTerm sparsity_time(const SampledSignal& x) {
    LossTerm t;
    t.grad.resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        t.value += std::abs(x[i]);
        t.grad[i] = sgn(x[i]);
    }
    return t;
}

LossTerm sparsity_sd(const SampledSignal& x) {
    SampledSignal sd = second_difference(x);
    LossTerm t;
    std::vector<double> s(sd.size());
    for (std::size_t i = 0; i < sd.size(); ++i) {
        t.value += std::abs(sd[i]);
        s[i] = sgn(sd[i]);
    }
    t.grad = second_difference_adjoint(SampledSignal(std::move(s), x.fs)).samples;
    return t;
}

LossTerm sparsity_freq(const SampledSignal& x, const SparsityFreqConfig& cfg) {
    const std::size_t n = x.size();
    if (cfg.delta_f_hz <= 0.0)
        throw BadConfig("sparsity_freq: delta_f must be positive");
    Spectrum spec = magnitude_spectrum(x, cfg.band_lo_hz, cfg.band_hi_hz);
    const std::size_t nb = spec.mags.size();
    std::size_t peak = 0;
    for (std::size_t i = 1; i < nb; ++i)
        if (spec.mags[i] > spec.mags[peak]) peak = i;
    double total = 0.0, outside = 0.0;
    std::vector<bool> is_out(nb);
    for (std::size_t i = 0; i < nb; ++i) {
        total += spec.mags[i];
        // Relative slack keeps bins exactly at +-delta_f on-peak regardless of
        // rounding in the bin-frequency arithmetic.
        is_out[i] =
            std::abs(spec.freqs[i] - spec.freqs[peak]) > cfg.delta_f_hz * (1.0 + 1e-12);
        if (is_out[i]) outside += spec.mags[i];
    }
    if (total == 0.0)
        throw ZeroSpectrum("sparsity_freq: zero band mass");
    LossTerm t;
    t.value = outside / total;
    // Chain d(value)/d|X_k| through the DFT magnitudes; the peak bin is
    // frozen (argmax treated as constant).
    t.grad.assign(n, 0.0);
    const double inv_total = 1.0 / total;
    for (std::size_t i = 0; i < nb; ++i) {
        if (spec.mags[i] < 1e-300) continue; // subgradient 0 at a zero magnitude
        const double dval_dmag = ((is_out[i] ? 1.0 : 0.0) - t.value) * inv_total;
        const std::size_t k = static_cast<std::size_t>(
            std::llround(spec.freqs[i] * static_cast<double>(n) / x.fs));
        const double w = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
        double re = 0.0, im = 0.0;
        for (std::size_t s = 0; s < n; ++s) {
            const double th = w * static_cast<double>(s);
            re += x[s] * std::cos(th);
            im -= x[s] * std::sin(th);
        }
        const double inv_mag = 1.0 / spec.mags[i];
        for (std::size_t s = 0; s < n; ++s) {
            const double th = w * static_cast<double>(s);
            const double dmag = (re * std::cos(th) - im * std::sin(th)) * inv_mag;
            t.grad[s] += dval_dmag * dmag;
        }
    }
    return t;
}

double variance_loss(const MassDistribution& q, const MassDistribution& p) {
    if (q.dims() != p.dims())
        throw DimensionMismatch("variance_loss: dimension mismatch");
    return cdf_variance(q.mass, p.mass, nullptr);
}

LossTerm variance_loss_domain(const SampledSignal& x_pred, const SampledSignal& x_ref,
                              MassDomain domain, std::size_t wavelet_levels) {
    LossTerm t;
    switch (domain) {
    case MassDomain::Time: {
        std::vector<double> mq(x_pred.size()), mp(x_ref.size());
        for (std::size_t i = 0; i < x_pred.size(); ++i) mq[i] = std::abs(x_pred[i]);
        for (std::size_t i = 0; i < x_ref.size(); ++i) mp[i] = std::abs(x_ref[i]);
        if (mq.size() != mp.size())
            throw DimensionMismatch("variance_loss_domain: length mismatch");
        std::vector<double> gm;
        t.value = cdf_variance(mq, mp, &gm);
        t.grad.resize(x_pred.size());
        for (std::size_t i = 0; i < x_pred.size(); ++i) t.grad[i] = gm[i] * sgn(x_pred[i]);
        break;
    }
    case MassDomain::SecondDerivative: {
        SampledSignal sq = second_difference(x_pred);
        SampledSignal sp = second_difference(x_ref);
        std::vector<double> mq(sq.size()), mp(sp.size());
        for (std::size_t i = 0; i < sq.size(); ++i) mq[i] = std::abs(sq[i]);
        for (std::size_t i = 0; i < sp.size(); ++i) mp[i] = std::abs(sp[i]);
        if (mq.size() != mp.size())
            throw DimensionMismatch("variance_loss_domain: length mismatch");
        std::vector<double> gm;
        t.value = cdf_variance(mq, mp, &gm);
        for (std::size_t i = 0; i < gm.size(); ++i) gm[i] *= sgn(sq[i]);
        t.grad = second_difference_adjoint(SampledSignal(std::move(gm), x_pred.fs)).samples;
        break;
    }
    case MassDomain::Freq: {
        const std::size_t lv = usable_levels(x_pred.size(), wavelet_levels);
        WaveletDecomposition dq = dwt_db4(x_pred, lv);
        Spectrum wq = wavelet_mass(x_pred, lv);
        Spectrum wp = wavelet_mass(x_ref, lv);
        std::vector<double> gm;
        t.value = cdf_variance(wq.mags, wp.mags, &gm);
        // Masses are subband energies sum c^2; per-coefficient gradient is
        // 2 c * dvalue/dmass(band), mapped back through the orthonormal
        // inverse transform.
        WaveletDecomposition gdec = dq;
        // wavelet_mass band order: approx first, then details coarse -> fine.
        for (double& v : gdec.approx) v *= 2.0 * gm[0];
        for (std::size_t lvl = 0; lvl < lv; ++lvl) {
            const double gband = gm[lv - lvl]; // detail level lvl+1 (finest = last bin)
            for (double& v : gdec.details[lvl]) v *= 2.0 * gband;
        }
        t.grad = idwt_db4(gdec).samples;
        break;
    }
    }
    return t;
}

LossBreakdown total_loss(const SampledSignal& x_pred, const SampledSignal& x_ref,
                         const LossWeights& weights, const SoftDtwConfig& dtw_cfg,
                         const SparsityFreqConfig& freq_cfg, std::size_t wavelet_levels) {
    if (x_pred.size() != x_ref.size())
        throw LengthMismatch("total_loss: signals must have equal length");
    if (x_pred.fs != x_ref.fs)
        throw RateMismatch("total_loss: signals must share a sampling rate");
    LossBreakdown bd;
    bd.weights = weights;
    const std::size_t n = x_pred.size();

    auto dtw_term = [&](const SampledSignal& a, const SampledSignal& b, double gamma) {
        LossTerm t;
        SoftDtwConfig cfg{gamma};
        SoftDtwWorkspace ws;
        t.grad = soft_dtw_grad(a, b, cfg, &ws); // fills R; value read off the table
        t.value = ws.r(a.size(), b.size());
        return t;
    };

    bd.terms["dtw_t"] = dtw_term(x_pred, x_ref, dtw_cfg.gamma);
    bd.terms["sparsity_t"] = sparsity_time(x_pred);
    bd.terms["variance_t"] = variance_loss_domain(x_pred, x_ref, MassDomain::Time);
    bd.terms["sparsity_f"] = sparsity_freq(x_pred, freq_cfg);
    bd.terms["variance_f"] =
        variance_loss_domain(x_pred, x_ref, MassDomain::Freq, wavelet_levels);

    // Second-derivative domain. The temperature is kept at the caller's gamma
    // even though the fs^2-scaled second derivative inflates the pairwise
    // costs: the nearly-hard alignment this produces pins curvature features
    // in place, which is exactly what the term is for.
    {
        SampledSignal sq = second_difference(x_pred);
        SampledSignal sp = second_difference(x_ref);
        LossTerm t = dtw_term(sq, sp, dtw_cfg.gamma);
        t.grad = second_difference_adjoint(SampledSignal(std::move(t.grad), x_pred.fs)).samples;
        bd.terms["dtw_sd"] = std::move(t);
    }
    bd.terms["sparsity_sd"] = sparsity_sd(x_pred);
    bd.terms["variance_sd"] =
        variance_loss_domain(x_pred, x_ref, MassDomain::SecondDerivative);

    auto weight_of = [&](const std::string& name) {
        if (name == "dtw_t" || name == "sparsity_t" || name == "variance_t")
            return weights.alpha;
        if (name == "sparsity_f" || name == "variance_f") return weights.beta;
        return weights.gamma_sd;
    };
    bd.total_grad.assign(n, 0.0);
    for (const auto& name : loss_term_names()) {
        const double w = weight_of(name);
        const LossTerm& t = bd.terms.at(name);
        bd.total += w * t.value;
        for (std::size_t i = 0; i < n; ++i) bd.total_grad[i] += w * t.grad[i];
    }
    return bd;
}

double finite_diff_check(const std::function<double(const SampledSignal&)>& value_fn,
                         const std::vector<double>& analytic_grad,
                         const SampledSignal& x, double eps,
                         const std::function<bool(std::size_t)>& skip_coord) {
    if (!(eps > 0.0))
        throw BadConfig("finite_diff_check: eps must be positive");
    double max_rel = 0.0;
    SampledSignal probe = x;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (skip_coord && skip_coord(i)) continue;
        if (std::abs(analytic_grad[i]) <= 1e-8) continue;
        const double orig = probe.samples[i];
        probe.samples[i] = orig + eps;
        const double fp = value_fn(probe);
        probe.samples[i] = orig - eps;
        const double fm = value_fn(probe);
        probe.samples[i] = orig;
        const double fd = (fp - fm) / (2.0 * eps);
        const double rel = std::abs(fd - analytic_grad[i]) / std::abs(analytic_grad[i]);
        max_rel = std::max(max_rel, rel);
    }
    return max_rel;
}

double finite_diff_check_named(const std::string& loss_id, const SampledSignal& x,
                               const SampledSignal& ref, double eps,
                               const SoftDtwConfig& dtw_cfg,
                               const SparsityFreqConfig& freq_cfg,
                               const LossWeights& weights) {
    const double kink_tol = 1e-6;
    auto near_kink_abs = [&](const SampledSignal& s) {
        return [&s, kink_tol](std::size_t i) { return std::abs(s[i]) < kink_tol; };
    };
    if (loss_id == "sparsity_time") {
        LossTerm t = sparsity_time(x);
        return finite_diff_check(
            [](const SampledSignal& s) { return sparsity_time(s).value; }, t.grad, x, eps,
            near_kink_abs(x));
    }
    if (loss_id == "sparsity_sd") {
        LossTerm t = sparsity_sd(x);
        SampledSignal sd = second_difference(x);
        const double tol = kink_tol * x.fs * x.fs;
        return finite_diff_check(
            [](const SampledSignal& s) { return sparsity_sd(s).value; }, t.grad, x, eps,
            [&sd, tol](std::size_t i) {
                // a coordinate perturbation touches sd[i-1..i+1]
                for (std::size_t k = (i == 0 ? 0 : i - 1); k <= i + 1 && k < sd.size(); ++k)
                    if (std::abs(sd[k]) < tol) return true;
                return false;
            });
    }
    if (loss_id == "sparsity_freq") {
        LossTerm t = sparsity_freq(x, freq_cfg);
        return finite_diff_check(
            [&](const SampledSignal& s) { return sparsity_freq(s, freq_cfg).value; },
            t.grad, x, eps);
    }
    if (loss_id == "variance_time" || loss_id == "variance_freq" || loss_id == "variance_sd") {
        const MassDomain dom = loss_id == "variance_time" ? MassDomain::Time
                               : loss_id == "variance_freq" ? MassDomain::Freq
                                                            : MassDomain::SecondDerivative;
        LossTerm t = variance_loss_domain(x, ref, dom);
        std::function<bool(std::size_t)> skip;
        if (dom == MassDomain::Time) {
            skip = near_kink_abs(x);
        } else if (dom == MassDomain::SecondDerivative) {
            SampledSignal sd = second_difference(x);
            const double tol = kink_tol * x.fs * x.fs;
            skip = [sd, tol](std::size_t i) {
                for (std::size_t k = (i == 0 ? 0 : i - 1); k <= i + 1 && k < sd.size(); ++k)
                    if (std::abs(sd[k]) < tol) return true;
                return false;
            };
        }
        return finite_diff_check(
            [&](const SampledSignal& s) {
                return variance_loss_domain(s, ref, dom).value;
            },
            t.grad, x, eps, skip);
    }
    if (loss_id == "soft_dtw") {
        std::vector<double> g = soft_dtw_grad(x, ref, dtw_cfg);
        return finite_diff_check(
            [&](const SampledSignal& s) { return soft_dtw(s, ref, dtw_cfg); }, g, x, eps);
    }
    if (loss_id == "total") {
        LossBreakdown bd = total_loss(x, ref, weights, dtw_cfg, freq_cfg);
        SampledSignal sd = second_difference(x);
        const double tol = kink_tol * x.fs * x.fs;
        return finite_diff_check(
            [&](const SampledSignal& s) {
                return total_loss(s, ref, weights, dtw_cfg, freq_cfg).total;
            },
            bd.total_grad, x, eps,
            [&x, sd, tol, kink_tol](std::size_t i) {
                if (std::abs(x[i]) < kink_tol) return true;
                for (std::size_t k = (i == 0 ? 0 : i - 1); k <= i + 1 && k < sd.size(); ++k)
                    if (std::abs(sd[k]) < tol) return true;
                return false;
            });
    }
    throw BadConfig("finite_diff_check_named: unknown loss id '" + loss_id + "'");
}

} // namespace ppgkit
