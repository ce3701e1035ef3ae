#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "ppgkit/morphology.hpp"
#include "ppgkit/spectral.hpp"
#include "ppgkit/synth.hpp"

using namespace ppgkit;

namespace {

SynthConfig make_cfg(double hr, double fs = 100.0, double dur = 10.0) {
    SynthConfig cfg;
    cfg.hr_bpm = hr;
    cfg.fs = fs;
    cfg.duration_s = dur;
    return cfg;
}

} // namespace

TEST_CASE("synth_ppg: 60 bpm for 10 s carries 10 systolic bumps, HR reads 60") {
    SynthMetadata meta;
    const SampledSignal ppg = synth_ppg(make_cfg(60.0), &meta);
    CHECK(meta.systolic_peak_times_s.size() == 10);
    CHECK(std::abs(spectral_peak_hr(ppg) - 60.0) <= 1.0);
}

TEST_CASE("synth_ppg: diastolic_amp=0 leaves no diastolic peaks to detect") {
    SynthConfig cfg = make_cfg(72.0);
    cfg.diastolic_amp = 0.0;
    const FiducialSet fids = detect_fiducials(synth_ppg(cfg));
    REQUIRE(!fids.beats.empty());
    for (const auto& beat : fids.beats) CHECK(!beat.diastolic_peak.has_value());
}

TEST_CASE("synth_ppg is deterministic: same config, bitwise-identical output") {
    const SampledSignal a = synth_ppg(make_cfg(84.0));
    const SampledSignal b = synth_ppg(make_cfg(84.0));
    CHECK(a.samples == b.samples);
}

TEST_CASE("synth_ppg metadata peaks sit on actual local maxima of the waveform") {
    SynthMetadata meta;
    const SampledSignal ppg = synth_ppg(make_cfg(72.0), &meta);
    for (double t : meta.systolic_peak_times_s) {
        const auto i = static_cast<std::size_t>(std::llround(t * ppg.fs));
        REQUIRE(i > 0);
        REQUIRE(i + 1 < ppg.size());
        // Allow one sample of grid quantization around the analytic time.
        const double here = std::max({ppg[i - 1], ppg[i], ppg[i + 1]});
        CHECK(here >= ppg[i - 1]);
        CHECK(here >= ppg[i + 1]);
        CHECK(ppg[i] > 0.5); // systolic bump has unit amplitude
    }
}

TEST_CASE("synth_ppg: generated HR matches config within 1 beat over 10 s, 48-180 bpm") {
    for (double hr : {48.0, 60.0, 72.0, 96.0, 120.0, 180.0}) {
        SynthMetadata meta;
        synth_ppg(make_cfg(hr, 100.0, 10.0), &meta);
        const double got = 60.0 * static_cast<double>(meta.systolic_peak_times_s.size()) / 10.0;
        CHECK(std::abs(got - hr) <= 6.0); // 1 beat over 10 s = 6 bpm
    }
}

TEST_CASE("synth_ppg outputs are finite and amplitude-bounded") {
    const SampledSignal ppg = synth_ppg(make_cfg(120.0));
    for (double v : ppg.samples) {
        CHECK(std::isfinite(v));
        CHECK(v <= 1.0 + 0.4 + 1e-9);
        CHECK(v >= -1e-9);
    }
}

TEST_CASE("synth_ppg rejects invalid configs") {
    SynthConfig bad_hr = make_cfg(20.0);
    CHECK_THROWS_AS(synth_ppg(bad_hr), BadConfig);
    SynthConfig bad_delay = make_cfg(180.0);
    bad_delay.diastolic_delay_s = 0.5; // beat period at 180 bpm is 1/3 s
    CHECK_THROWS_AS(synth_ppg(bad_delay), BadConfig);
    SynthConfig bad_width = make_cfg(60.0);
    bad_width.systolic_width_s = 0.0;
    CHECK_THROWS_AS(synth_ppg(bad_width), BadConfig);
}

TEST_CASE("add_noise: zero noise is the identity") {
    const SampledSignal ppg = synth_ppg(make_cfg(60.0));
    const SampledSignal out = add_noise(ppg, {});
    CHECK(out.samples == ppg.samples);
}

TEST_CASE("add_noise: white sigma=0.1 residual variance is 0.01 within 20%") {
    const SampledSignal base(std::vector<double>(10000, 1.0), 100.0);
    NoiseConfig cfg;
    cfg.white_sigma = 0.1;
    cfg.seed = 99;
    const SampledSignal out = add_noise(base, cfg);
    double mean = 0.0;
    for (std::size_t i = 0; i < out.size(); ++i) mean += out[i] - base[i];
    mean /= static_cast<double>(out.size());
    double var = 0.0;
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double d = out[i] - base[i] - mean;
        var += d * d;
    }
    var /= static_cast<double>(out.size() - 1);
    CHECK(var > 0.008);
    CHECK(var < 0.012);
}

TEST_CASE("add_noise: baseline sinusoid shows up at its frequency in the spectrum") {
    // Pure baseline on a zero signal: the 0.2 Hz DFT bin carries amp * N / 2.
    const std::size_t n = 3000;
    const double fs = 100.0;
    const SampledSignal base(std::vector<double>(n, 0.0), fs);
    NoiseConfig cfg;
    cfg.baseline_amp = 0.3;
    cfg.baseline_freq_hz = 0.2;
    const SampledSignal out = add_noise(base, cfg);
    const double e = testutil::tone_bin_energy(out.samples, fs, 0.2);
    const double want = 0.3 * static_cast<double>(n) / 2.0;
    CHECK(std::sqrt(e) == doctest::Approx(want).epsilon(1e-6));
}

TEST_CASE("add_noise is deterministic per seed and differs across seeds") {
    const SampledSignal ppg = synth_ppg(make_cfg(60.0));
    NoiseConfig cfg;
    cfg.white_sigma = 0.5;
    cfg.seed = 7;
    const SampledSignal a = add_noise(ppg, cfg);
    const SampledSignal b = add_noise(ppg, cfg);
    CHECK(a.samples == b.samples);
    cfg.seed = 8;
    const SampledSignal c = add_noise(ppg, cfg);
    CHECK(a.samples != c.samples);
}

TEST_CASE("gaussian_vector: seeded draws are reproducible with sane moments") {
    const std::vector<double> a = gaussian_vector(20000, 123, 2.0);
    const std::vector<double> b = gaussian_vector(20000, 123, 2.0);
    CHECK(a == b);
    double mean = 0.0;
    for (double v : a) mean += v;
    mean /= static_cast<double>(a.size());
    double var = 0.0;
    for (double v : a) var += (v - mean) * (v - mean);
    var /= static_cast<double>(a.size() - 1);
    CHECK(std::abs(mean) < 0.05);
    CHECK(std::abs(var - 4.0) < 0.2);
}
