// ppg command-line tool: generate, analyze, score, gradient-check and
// reconstruct sampled waveforms. File formats: JSON for signals/reports, CSV
// for tabular/plot data. Every subcommand is deterministic given flags and
// seeds; all randomness requires an explicit --seed.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ppgkit/io.hpp"
#include "ppgkit/losses.hpp"
#include "ppgkit/metrics.hpp"
#include "ppgkit/morphology.hpp"
#include "ppgkit/reconstruct.hpp"
#include "ppgkit/signal.hpp"
#include "ppgkit/softdtw.hpp"
#include "ppgkit/spectral.hpp"
#include "ppgkit/synth.hpp"

namespace {

using ppgkit::SampledSignal;
using ppgkit::io::format_number;

struct Band {
    double lo = 0.5;
    double hi = 5.0;
};

Band parse_band(const std::string& text) {
    Band b;
    char extra = 0;
    if (std::sscanf(text.c_str(), "%lf,%lf%c", &b.lo, &b.hi, &extra) != 2)
        throw CLI::ValidationError("--band", "expected <lo,hi> (e.g. 0.5,5)");
    return b;
}

std::string sidecar_path(const std::string& path) {
    const auto dot = path.find_last_of('.');
    const auto base = dot == std::string::npos ? path : path.substr(0, dot);
    return base + ".meta.json";
}

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() &&
           s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

void write_signal(const SampledSignal& s, const std::string& path) {
    if (ends_with(path, ".csv"))
        ppgkit::io::write_signal_csv(s, path);
    else
        ppgkit::io::write_signal_json(s, path);
}

// Shared loss/weight flags used by `loss`, `gradcheck` and `reconstruct`.
struct LossFlags {
    ppgkit::LossWeights weights;
    double gamma_dtw = 1.0;
    double delta_f = 0.2;
    std::string band = "0.5,5";
    std::size_t levels = 4;

    void attach(CLI::App* cmd) {
        cmd->add_option("--alpha", weights.alpha, "time-domain weight");
        cmd->add_option("--beta", weights.beta, "frequency-domain weight");
        cmd->add_option("--gamma-sd", weights.gamma_sd, "second-derivative weight");
        cmd->add_option("--gamma-dtw", gamma_dtw, "soft-DTW temperature");
        cmd->add_option("--delta-f", delta_f, "on-peak half-window, Hz");
        cmd->add_option("--band", band, "analysis band <lo,hi> in Hz");
        cmd->add_option("--levels", levels, "wavelet decomposition levels");
    }

    ppgkit::SoftDtwConfig dtw() const { return {gamma_dtw}; }
    ppgkit::SparsityFreqConfig freq() const {
        const Band b = parse_band(band);
        return {b.lo, b.hi, delta_f};
    }
};

SampledSignal zscore(const SampledSignal& s) {
    return ppgkit::normalize(s, ppgkit::NormalizeMode::ZScore);
}

int run(int argc, char** argv) {
    CLI::App app{"sampled-waveform toolkit: synthesis, morphology, wavelets, "
                 "losses and gradient-descent reconstruction"};
    app.require_subcommand(1);

    // ---- synth ----
    auto* synth = app.add_subcommand("synth", "generate a synthetic pulse waveform");
    ppgkit::SynthConfig scfg;
    double synth_noise = 0.0;
    std::string synth_out;
    synth->add_option("--hr", scfg.hr_bpm, "heart rate, bpm")->required();
    synth->add_option("--fs", scfg.fs, "sampling rate, Hz")->required();
    synth->add_option("--dur", scfg.duration_s, "duration, seconds")->required();
    synth->add_option("--seed", scfg.seed, "noise seed")->required();
    synth->add_option("--noise", synth_noise, "white noise sigma (default 0)");
    synth->add_option("-o", synth_out, "output signal path (.json or .csv)")->required();

    // ---- sdppg ----
    auto* sdppg = app.add_subcommand("sdppg", "detect per-beat fiducials and a-e waves");
    std::string sdppg_in, sdppg_out;
    std::size_t sdppg_smooth = 5;
    sdppg->add_option("--in", sdppg_in, "input signal")->required();
    sdppg->add_option("--smooth", sdppg_smooth, "smoothing window, samples");
    sdppg->add_option("-o", sdppg_out, "fiducials CSV path")->required();

    // ---- wavelet ----
    auto* wavelet = app.add_subcommand("wavelet", "multilevel DB4 decomposition");
    std::string wav_in, wav_out;
    std::size_t wav_levels = 4;
    wavelet->add_option("--in", wav_in, "input signal")->required();
    wavelet->add_option("--levels", wav_levels, "decomposition levels");
    wavelet->add_option("-o", wav_out, "decomposition JSON path")->required();

    // ---- hr ----
    auto* hr = app.add_subcommand("hr", "spectral heart-rate estimate");
    std::string hr_in, hr_out, hr_band = "0.5,5";
    hr->add_option("--in", hr_in, "input signal")->required();
    hr->add_option("--band", hr_band, "search band <lo,hi> in Hz");
    hr->add_option("-o", hr_out, "optional magnitude-spectrum CSV path");

    // ---- loss ----
    auto* loss = app.add_subcommand("loss", "multi-domain loss report for a signal pair");
    std::string loss_pred, loss_ref, loss_out;
    LossFlags loss_flags;
    loss->add_option("--pred", loss_pred, "predicted signal")->required();
    loss->add_option("--ref", loss_ref, "reference signal")->required();
    loss_flags.attach(loss);
    loss->add_option("-o", loss_out, "report JSON path")->required();

    // ---- gradcheck ----
    auto* gradcheck = app.add_subcommand("gradcheck", "finite-difference gradient check");
    std::string gc_loss;
    std::size_t gc_n = 64;
    std::uint64_t gc_seed = 0;
    double gc_eps = 1e-5, gc_fs = 50.0;
    LossFlags gc_flags;
    gradcheck
        ->add_option("--loss", gc_loss,
                     "loss id: sparsity_time|sparsity_sd|sparsity_freq|variance_time|"
                     "variance_freq|variance_sd|soft_dtw|total")
        ->required();
    gradcheck->add_option("--n", gc_n, "signal length");
    gradcheck->add_option("--seed", gc_seed, "random-signal seed")->required();
    gradcheck->add_option("--eps", gc_eps, "central-difference step");
    gradcheck->add_option("--fs", gc_fs, "sampling rate of the test signals");
    gc_flags.attach(gradcheck);

    // ---- reconstruct ----
    auto* recon = app.add_subcommand("reconstruct",
                                     "gradient-descent reconstruction toward a target");
    std::string rec_target, rec_init, rec_out, rec_trace, rec_method = "adaptive_moments";
    double rec_noise = 0.5;
    std::uint64_t rec_seed = 0;
    bool rec_seed_given = false;
    ppgkit::OptimConfig ocfg;
    LossFlags rec_flags;
    recon->add_option("--target", rec_target, "target signal")->required();
    recon->add_option("--init", rec_init, "initial candidate (default: target + noise)");
    recon->add_option("--noise", rec_noise, "init noise sigma when --init is absent");
    recon->add_option("--seed", rec_seed, "init noise seed")
        ->each([&](const std::string&) { rec_seed_given = true; });
    recon->add_option("--iters", ocfg.max_iters, "max iterations");
    recon->add_option("--step", ocfg.step, "base step size");
    recon->add_option("--tol", ocfg.tol, "relative-progress stop tolerance");
    recon->add_option("--decay", ocfg.decay, "total learning-rate shrink factor over the run");
    recon->add_option("--log-every", ocfg.log_every, "trace logging period");
    recon->add_option("--method", rec_method, "plain_gd|momentum|adaptive_moments");
    rec_flags.attach(recon);
    recon->add_option("-o", rec_out, "reconstructed signal path")->required();
    recon->add_option("--trace", rec_trace, "optional loss-trace CSV path");

    // ---- eval ----
    auto* eval = app.add_subcommand("eval", "waveform fidelity metrics for signal pairs");
    std::vector<std::string> ev_pred, ev_ref;
    std::string ev_out;
    eval->add_option("--pred", ev_pred, "predicted signal (repeatable)")->required();
    eval->add_option("--ref", ev_ref, "reference signal (repeatable)")->required();
    eval->add_option("-o", ev_out, "report path (.json) or batch table (.csv)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2; // usage errors exit 2
    }

    if (synth->parsed()) {
        ppgkit::SynthMetadata meta;
        SampledSignal s = ppgkit::synth_ppg(scfg, &meta);
        if (synth_noise > 0.0)
            s = ppgkit::add_noise(s, {synth_noise, 0.0, 0.2, scfg.seed});
        write_signal(s, synth_out);
        ppgkit::io::write_synth_metadata_json(meta, sidecar_path(synth_out));
        return 0;
    }

    if (sdppg->parsed()) {
        SampledSignal s = ppgkit::io::read_signal(sdppg_in);
        ppgkit::FiducialSet waves = ppgkit::detect_sdppg_waves(s, sdppg_smooth);
        ppgkit::FiducialSet fids = ppgkit::detect_fiducials(s);
        if (fids.beats.size() == waves.beats.size()) {
            for (std::size_t i = 0; i < waves.beats.size(); ++i) {
                waves.beats[i].dicrotic_notch = fids.beats[i].dicrotic_notch;
                waves.beats[i].diastolic_peak = fids.beats[i].diastolic_peak;
            }
        }
        ppgkit::io::write_fiducials_csv(waves, s, sdppg_out);
        return 0;
    }

    if (wavelet->parsed()) {
        SampledSignal s = ppgkit::io::read_signal(wav_in);
        ppgkit::io::write_decomposition_json(ppgkit::dwt_db4(s, wav_levels), wav_out);
        return 0;
    }

    if (hr->parsed()) {
        SampledSignal s = ppgkit::io::read_signal(hr_in);
        const Band b = parse_band(hr_band);
        std::cout << format_number(ppgkit::spectral_peak_hr(s, b.lo, b.hi)) << "\n";
        if (!hr_out.empty())
            ppgkit::io::write_spectrum_csv(ppgkit::magnitude_spectrum(s, b.lo, b.hi), hr_out);
        return 0;
    }

    if (loss->parsed()) {
        SampledSignal pred = ppgkit::io::read_signal(loss_pred);
        SampledSignal ref = ppgkit::io::read_signal(loss_ref);
        ppgkit::LossBreakdown bd = ppgkit::total_loss(pred, ref, loss_flags.weights,
                                                      loss_flags.dtw(), loss_flags.freq(),
                                                      loss_flags.levels);
        ppgkit::io::write_loss_report_json(bd, loss_out);
        return 0;
    }

    if (gradcheck->parsed()) {
        SampledSignal x(ppgkit::gaussian_vector(gc_n, gc_seed), gc_fs);
        SampledSignal ref(ppgkit::gaussian_vector(gc_n, gc_seed + 1), gc_fs);
        const double err = ppgkit::finite_diff_check_named(
            gc_loss, x, ref, gc_eps, gc_flags.dtw(), gc_flags.freq(), gc_flags.weights);
        std::cout << format_number(err) << "\n";
        return err < 1e-3 ? 0 : 1;
    }

    if (recon->parsed()) {
        SampledSignal target = ppgkit::io::read_signal(rec_target);
        SampledSignal init;
        if (!rec_init.empty()) {
            init = ppgkit::io::read_signal(rec_init);
        } else {
            if (!rec_seed_given)
                throw CLI::ValidationError("--seed", "required when --init is absent");
            init = ppgkit::add_noise(target, {rec_noise, 0.0, 0.2, rec_seed});
        }
        if (rec_method == "plain_gd")
            ocfg.method = ppgkit::OptimMethod::PlainGd;
        else if (rec_method == "momentum")
            ocfg.method = ppgkit::OptimMethod::Momentum;
        else if (rec_method == "adaptive_moments")
            ocfg.method = ppgkit::OptimMethod::AdaptiveMoments;
        else
            throw CLI::ValidationError("--method", "unknown method: " + rec_method);
        ocfg.seed = rec_seed;
        ppgkit::ReconstructionResult res = ppgkit::reconstruct(
            target, init, rec_flags.weights, ocfg, rec_flags.dtw(), rec_flags.freq());
        write_signal(res.final_signal, rec_out);
        if (!rec_trace.empty())
            ppgkit::io::write_trace_csv(res.loss_trace, rec_trace);
        std::cout << "iters=" << res.iters_run
                  << " total=" << format_number(res.best_total)
                  << " pearson=" << format_number(res.final_metrics.pearson)
                  << " rmse=" << format_number(res.final_metrics.rmse)
                  << " frechet=" << format_number(res.final_metrics.frechet)
                  << " hr_error_bpm=" << format_number(res.final_metrics.hr_error_bpm)
                  << "\n";
        return 0;
    }

    if (eval->parsed()) {
        if (ev_pred.size() != ev_ref.size())
            throw CLI::ValidationError("--pred/--ref", "need equally many of each");
        // Deterministic aggregation order: sort pairs by predicted path.
        std::vector<std::size_t> order(ev_pred.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return ev_pred[a] < ev_pred[b];
        });
        struct Row {
            std::string name;
            double pearson, frechet, rmse, hr_pred, hr_true;
        };
        std::vector<Row> rows;
        // HR is not estimable for every input (too short, or the band does not
        // fit under Nyquist); such pairs report nan and are skipped by the
        // HR aggregates below.
        auto hr_or_nan = [](const SampledSignal& s) {
            try {
                return ppgkit::spectral_peak_hr(s);
            } catch (const ppgkit::Error&) {
                return std::numeric_limits<double>::quiet_NaN();
            }
        };
        for (std::size_t k : order) {
            SampledSignal pred = zscore(ppgkit::io::read_signal(ev_pred[k]));
            SampledSignal ref = zscore(ppgkit::io::read_signal(ev_ref[k]));
            rows.push_back({ev_pred[k], ppgkit::pearson(pred, ref),
                            ppgkit::frechet(pred, ref), ppgkit::rmse(pred, ref),
                            hr_or_nan(pred), hr_or_nan(ref)});
        }
        if (ends_with(ev_out, ".csv")) {
            // Per-pair rows plus mu/sigma summary rows (population sigma).
            std::vector<std::string> cols = {"pearson", "frechet", "rmse", "hr_pred",
                                             "hr_true"};
            auto field = [](const Row& r, std::size_t c) {
                const double v[] = {r.pearson, r.frechet, r.rmse, r.hr_pred, r.hr_true};
                return v[c];
            };
            std::string out = "pair,pearson,frechet,rmse,hr_pred,hr_true\n";
            for (const Row& r : rows) {
                out += r.name;
                for (std::size_t c = 0; c < cols.size(); ++c)
                    out += "," + format_number(field(r, c));
                out += "\n";
            }
            for (const char* stat : {"mu", "sigma"}) {
                out += stat;
                for (std::size_t c = 0; c < cols.size(); ++c) {
                    double mu = 0.0;
                    for (const Row& r : rows) mu += field(r, c);
                    mu /= static_cast<double>(rows.size());
                    double value = mu;
                    if (stat[0] == 's') {
                        double var = 0.0;
                        for (const Row& r : rows) {
                            const double d = field(r, c) - mu;
                            var += d * d;
                        }
                        value = std::sqrt(var / static_cast<double>(rows.size()));
                    }
                    out += "," + format_number(value);
                }
                out += "\n";
            }
            ppgkit::io::atomic_write_text(out, ev_out);
        } else {
            nlohmann::json j;
            double p = 0.0, f = 0.0, r = 0.0;
            ppgkit::HrSeriesPair hr_pair;
            double mae = 0.0, se = 0.0;
            for (const Row& row : rows) {
                p += row.pearson;
                f += row.frechet;
                r += row.rmse;
                if (!std::isfinite(row.hr_pred) || !std::isfinite(row.hr_true)) continue;
                hr_pair.hr_pred.push_back(row.hr_pred);
                hr_pair.hr_true.push_back(row.hr_true);
                const double d = row.hr_pred - row.hr_true;
                mae += std::abs(d);
                se += d * d;
            }
            const double n = static_cast<double>(rows.size());
            j["pearson"] = std::stod(format_number(p / n));
            j["frechet"] = std::stod(format_number(f / n));
            j["rmse"] = std::stod(format_number(r / n));
            const std::size_t n_hr = hr_pair.hr_pred.size();
            if (n_hr > 0) {
                const double nh = static_cast<double>(n_hr);
                j["hr"] = {{"mae", std::stod(format_number(mae / nh))},
                           {"rmse", std::stod(format_number(std::sqrt(se / nh)))}};
            } else {
                j["hr"] = {{"mae", nullptr}, {"rmse", nullptr}};
            }
            try {
                if (n_hr >= 2)
                    j["hr"]["r"] =
                        std::stod(format_number(ppgkit::hr_error_stats(hr_pair).r));
                else
                    j["hr"]["r"] = nullptr; // needs >= 2 estimable pairs
            } catch (const ppgkit::ConstantInput&) {
                j["hr"]["r"] = nullptr; // undefined for a constant HR series
            }
            ppgkit::io::atomic_write_text(j.dump(), ev_out);
        }
        return 0;
    }

    return 2;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ppgkit::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
