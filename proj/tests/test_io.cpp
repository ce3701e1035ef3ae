#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <unistd.h>
#include <fstream>
#include <string>

#include <json.hpp>

#include "helpers.hpp"
#include "ppgkit/io.hpp"

using namespace ppgkit;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path dir;
    TempDir() {
        dir = fs::temp_directory_path() /
              ("ppgkit-io-test-" + std::to_string(::getpid()));
        fs::create_directories(dir);
    }
    ~TempDir() { fs::remove_all(dir); }
    std::string path(const std::string& name) const { return (dir / name).string(); }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

} // namespace

TEST_CASE("signal JSON round trip is bitwise on values") {
    TempDir tmp;
    const SampledSignal x = testutil::random_signal(64, 5, 51.25);
    io::write_signal_json(x, tmp.path("sig.json"));
    const SampledSignal back = io::read_signal(tmp.path("sig.json"));
    CHECK(back.fs == doctest::Approx(x.fs).epsilon(1e-12));
    REQUIRE(back.size() == x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        CHECK(back[i] == doctest::Approx(x[i]).epsilon(1e-11));
}

TEST_CASE("signal CSV round trip preserves values to 12 significant digits") {
    TempDir tmp;
    const SampledSignal x = testutil::random_signal(32, 6, 100.0);
    io::write_signal_csv(x, tmp.path("sig.csv"));
    const SampledSignal back = io::read_signal(tmp.path("sig.csv"));
    REQUIRE(back.size() == x.size());
    CHECK(back.fs == 100.0);
    for (std::size_t i = 0; i < x.size(); ++i)
        CHECK(back[i] == doctest::Approx(x[i]).epsilon(1e-11));
}

TEST_CASE("read_signal rejects missing files, bad extensions and NaN values") {
    TempDir tmp;
    CHECK_THROWS_AS(io::read_signal(tmp.path("missing.json")), IoError);
    CHECK_THROWS_AS(io::read_signal(tmp.path("sig.xml")), IoError);
    {
        std::ofstream out(tmp.path("nan.json"));
        out << R"({"fs": 10.0, "samples": [1.0, "nan", 2.0]})";
    }
    CHECK_THROWS_AS(io::read_signal(tmp.path("nan.json")), IoError);
    {
        std::ofstream out(tmp.path("bad.csv"));
        out << "fs=10\n1.0\nnot-a-number\n";
    }
    CHECK_THROWS_AS(io::read_signal(tmp.path("bad.csv")), IoError);
}

TEST_CASE("loss report JSON carries terms, total, and weights") {
    TempDir tmp;
    const SampledSignal x = testutil::random_signal(64, 7, 50.0);
    const SampledSignal y = testutil::random_signal(64, 8, 50.0);
    const LossBreakdown bd = total_loss(x, y, {}, {}, {});
    io::write_loss_report_json(bd, tmp.path("report.json"));
    const auto doc = nlohmann::json::parse(slurp(tmp.path("report.json")));
    CHECK(doc["total"].get<double>() == doctest::Approx(bd.total).epsilon(1e-11));
    CHECK(doc["weights"]["alpha"].get<double>() == 1.5);
    CHECK(doc["weights"]["beta"].get<double>() == 0.8);
    CHECK(doc["weights"]["gamma_sd"].get<double>() == 1.2);
    for (const auto& name : loss_term_names())
        CHECK(doc["terms"][name]["value"].get<double>() ==
              doctest::Approx(bd.terms.at(name).value).epsilon(1e-11));
}

TEST_CASE("trace CSV header names the canonical term order") {
    TempDir tmp;
    LossTraceRow row;
    row.iter = 1;
    row.total = 2.5;
    row.term_values.assign(8, 0.25);
    io::write_trace_csv({row}, tmp.path("trace.csv"));
    const std::string text = slurp(tmp.path("trace.csv"));
    const std::string header = text.substr(0, text.find('\n'));
    CHECK(header ==
          "iter,total,dtw_t,sparsity_t,variance_t,sparsity_f,variance_f,dtw_sd,"
          "sparsity_sd,variance_sd");
}

TEST_CASE("fiducials CSV has the documented columns and one row per feature") {
    TempDir tmp;
    SynthConfig cfg;
    cfg.hr_bpm = 60.0;
    const SampledSignal ppg = synth_ppg(cfg);
    const FiducialSet fids = detect_fiducials(ppg);
    io::write_fiducials_csv(fids, ppg, tmp.path("fid.csv"));
    std::ifstream in(tmp.path("fid.csv"));
    std::string header;
    std::getline(in, header);
    CHECK(header == "beat,feature,index,time_s,value");
    std::size_t rows = 0;
    for (std::string line; std::getline(in, line);)
        if (!line.empty()) ++rows;
    std::size_t features = 0;
    for (const auto& b : fids.beats) {
        features += 2; // onset + systolic always present
        features += b.dicrotic_notch.has_value() + b.diastolic_peak.has_value();
        for (const auto& f : {b.a, b.b, b.c, b.d, b.e}) features += f.has_value();
    }
    CHECK(rows == features);
}

TEST_CASE("eval report JSON has the documented shape") {
    TempDir tmp;
    ReconstructionMetrics wave;
    wave.pearson = 0.95;
    wave.rmse = 0.1;
    wave.frechet = 0.2;
    HrErrorStats hr;
    hr.mae_bpm = 1.0;
    hr.rmse_bpm = 1.5;
    hr.r = 0.99;
    io::write_eval_report_json(wave, hr, tmp.path("eval.json"));
    const auto doc = nlohmann::json::parse(slurp(tmp.path("eval.json")));
    CHECK(doc["pearson"].get<double>() == 0.95);
    CHECK(doc["frechet"].get<double>() == 0.2);
    CHECK(doc["rmse"].get<double>() == 0.1);
    CHECK(doc["hr"]["mae"].get<double>() == 1.0);
    CHECK(doc["hr"]["rmse"].get<double>() == 1.5);
    CHECK(doc["hr"]["r"].get<double>() == 0.99);
}

TEST_CASE("synth metadata JSON lists HR and the true peak times") {
    TempDir tmp;
    SynthConfig cfg;
    cfg.hr_bpm = 72.0;
    SynthMetadata meta;
    synth_ppg(cfg, &meta);
    io::write_synth_metadata_json(meta, tmp.path("meta.json"));
    const auto doc = nlohmann::json::parse(slurp(tmp.path("meta.json")));
    CHECK(doc["hr_bpm"].get<double>() == doctest::Approx(72.0));
    CHECK(doc["systolic_peak_times_s"].size() == meta.systolic_peak_times_s.size());
    CHECK(doc["diastolic_peak_times_s"].size() == meta.diastolic_peak_times_s.size());
}

TEST_CASE("atomic_write_text leaves no temp litter and writes exactly the content") {
    TempDir tmp;
    io::atomic_write_text("hello\n", tmp.path("out.txt"));
    CHECK(slurp(tmp.path("out.txt")) == "hello\n");
    std::size_t entries = 0;
    for ([[maybe_unused]] const auto& e : fs::directory_iterator(tmp.dir)) ++entries;
    CHECK(entries == 1);
    // Overwrite is atomic too: the new content fully replaces the old.
    io::atomic_write_text("second\n", tmp.path("out.txt"));
    CHECK(slurp(tmp.path("out.txt")) == "second\n");
}

TEST_CASE("atomic_write_text to an unwritable directory throws IoError") {
    CHECK_THROWS_AS(io::atomic_write_text("x", "/nonexistent-dir-xyz/file.txt"), IoError);
}

TEST_CASE("format_number emits 12 significant digits") {
    CHECK(io::format_number(1.0) == "1");
    CHECK(io::format_number(0.1) == "0.1");
    CHECK(io::format_number(1.0 / 3.0) == "0.333333333333");
    CHECK(io::format_number(123456789012345.0) == "1.23456789012e+14");
}

TEST_CASE("spectrum CSV round-trips frequencies and magnitudes as text") {
    TempDir tmp;
    Spectrum spec;
    spec.freqs = {0.5, 1.0, 1.5};
    spec.mags = {0.25, 1.0 / 3.0, 0.75};
    io::write_spectrum_csv(spec, tmp.path("spec.csv"));
    const std::string text = slurp(tmp.path("spec.csv"));
    CHECK(text.find("freq_hz,magnitude") == 0);
    CHECK(text.find("0.333333333333") != std::string::npos);
}
