#include "ppgkit/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace ppgkit::io {

namespace {

using nlohmann::json;

void atomic_write(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw IoError("cannot open for writing: " + tmp.string());
        out << content;
        if (!out.flush())
            throw IoError("write failed: " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp);
        throw IoError("rename failed: " + target.string() + ": " + ec.message());
    }
}

double checked(double v, const std::string& where) {
    if (!std::isfinite(v))
        throw IoError("non-finite value in " + where);
    return v;
}

json number_array(const std::vector<double>& xs) {
    json arr = json::array();
    for (double v : xs) arr.push_back(std::stod(format_number(v)));
    return arr;
}

} // namespace

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void atomic_write_text(const std::string& content, const std::string& path) {
    atomic_write(path, content);
}

SampledSignal read_signal(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open: " + path);
    const auto ext = std::filesystem::path(path).extension().string();
    std::vector<double> samples;
    double fs = 0.0;
    if (ext == ".json") {
        try {
            json j;
            in >> j;
            if (!j.contains("fs") || !j.contains("samples") || !j["samples"].is_array())
                throw IoError("signal JSON needs {fs, samples}: " + path);
            fs = j["fs"].get<double>();
            for (const auto& v : j["samples"])
                samples.push_back(checked(v.get<double>(), path));
        } catch (const json::exception& e) {
            throw IoError("bad JSON in " + path + ": " + e.what());
        }
    } else if (ext == ".csv") {
        std::string line;
        if (!std::getline(in, line) || line.rfind("fs=", 0) != 0)
            throw IoError("signal CSV must start with fs=<Hz>: " + path);
        try {
            fs = std::stod(line.substr(3));
            while (std::getline(in, line)) {
                if (line.empty()) continue;
                samples.push_back(checked(std::stod(line), path));
            }
        } catch (const std::logic_error&) {
            throw IoError("bad numeric value in " + path + ": " + line);
        }
    } else {
        throw IoError("unknown signal format (use .json or .csv): " + path);
    }
    try {
        return SampledSignal(std::move(samples), fs);
    } catch (const Error& e) {
        throw IoError(std::string("invalid signal in ") + path + ": " + e.what());
    }
}

void write_signal_json(const SampledSignal& s, const std::string& path) {
    json j;
    j["fs"] = std::stod(format_number(s.fs));
    j["samples"] = number_array(s.samples);
    atomic_write(path, j.dump());
}

void write_signal_csv(const SampledSignal& s, const std::string& path) {
    std::ostringstream out;
    out << "fs=" << format_number(s.fs) << "\n";
    for (double v : s.samples) out << format_number(v) << "\n";
    atomic_write(path, out.str());
}

void write_spectrum_csv(const Spectrum& spec, const std::string& path) {
    std::ostringstream out;
    out << "freq_hz,magnitude\n";
    for (std::size_t i = 0; i < spec.freqs.size(); ++i)
        out << format_number(spec.freqs[i]) << "," << format_number(spec.mags[i]) << "\n";
    atomic_write(path, out.str());
}

void write_decomposition_json(const WaveletDecomposition& dec, const std::string& path) {
    json j;
    j["levels"] = dec.levels;
    j["fs"] = std::stod(format_number(dec.fs));
    j["source_len"] = dec.source_len;
    j["boundary_mode"] = "periodic";
    j["approx"] = number_array(dec.approx);
    json details = json::array();
    for (const auto& d : dec.details) details.push_back(number_array(d));
    j["details"] = details; // finest -> coarsest
    atomic_write(path, j.dump());
}

void write_loss_report_json(const LossBreakdown& bd, const std::string& path) {
    json terms;
    for (const auto& name : loss_term_names())
        terms[name] = {{"value", std::stod(format_number(bd.terms.at(name).value))}};
    json j;
    j["terms"] = terms;
    j["total"] = std::stod(format_number(bd.total));
    j["weights"] = {{"alpha", bd.weights.alpha},
                    {"beta", bd.weights.beta},
                    {"gamma_sd", bd.weights.gamma_sd}};
    atomic_write(path, j.dump());
}

void write_fiducials_csv(const FiducialSet& set, const SampledSignal& signal,
                         const std::string& path) {
    std::ostringstream out;
    out << "beat,feature,index,time_s,value\n";
    auto row = [&](std::size_t beat, const char* name, std::size_t idx) {
        out << beat << "," << name << "," << idx << ","
            << format_number(static_cast<double>(idx) / signal.fs) << ","
            << format_number(signal.samples[idx]) << "\n";
    };
    for (std::size_t b = 0; b < set.beats.size(); ++b) {
        const auto& beat = set.beats[b];
        row(b, "onset", beat.onset);
        row(b, "systolic_peak", beat.systolic_peak);
        if (beat.dicrotic_notch) row(b, "dicrotic_notch", *beat.dicrotic_notch);
        if (beat.diastolic_peak) row(b, "diastolic_peak", *beat.diastolic_peak);
        if (beat.a) row(b, "a", *beat.a);
        if (beat.b) row(b, "b", *beat.b);
        if (beat.c) row(b, "c", *beat.c);
        if (beat.d) row(b, "d", *beat.d);
        if (beat.e) row(b, "e", *beat.e);
    }
    atomic_write(path, out.str());
}

void write_trace_csv(const std::vector<LossTraceRow>& trace, const std::string& path) {
    std::ostringstream out;
    out << "iter,total";
    for (const auto& name : loss_term_names()) out << "," << name;
    out << "\n";
    for (const auto& row : trace) {
        out << row.iter << "," << format_number(row.total);
        for (double v : row.term_values) out << "," << format_number(v);
        out << "\n";
    }
    atomic_write(path, out.str());
}

void write_synth_metadata_json(const SynthMetadata& meta, const std::string& path) {
    json j;
    j["hr_bpm"] = std::stod(format_number(meta.hr_bpm));
    j["systolic_peak_times_s"] = number_array(meta.systolic_peak_times_s);
    j["diastolic_peak_times_s"] = number_array(meta.diastolic_peak_times_s);
    atomic_write(path, j.dump());
}

void write_eval_report_json(const ReconstructionMetrics& wave, const HrErrorStats& hr,
                            const std::string& path) {
    json j;
    j["pearson"] = std::stod(format_number(wave.pearson));
    j["frechet"] = std::stod(format_number(wave.frechet));
    j["rmse"] = std::stod(format_number(wave.rmse));
    j["hr"] = {{"mae", std::stod(format_number(hr.mae_bpm))},
               {"rmse", std::stod(format_number(hr.rmse_bpm))},
               {"r", std::stod(format_number(hr.r))}};
    atomic_write(path, j.dump());
}

} // namespace ppgkit::io
