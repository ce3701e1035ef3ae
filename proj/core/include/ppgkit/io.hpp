#pragma once

#include <string>

#include "ppgkit/losses.hpp"
#include "ppgkit/metrics.hpp"
#include "ppgkit/morphology.hpp"
#include "ppgkit/reconstruct.hpp"
#include "ppgkit/signal.hpp"
#include "ppgkit/spectral.hpp"
#include "ppgkit/synth.hpp"

namespace ppgkit::io {

/// Reads a signal from JSON ({"fs": <Hz>, "samples": [...]}) or CSV
/// (header line `fs=<Hz>`, one sample per line), dispatching on the file
/// extension. NaN/Inf values are rejected. Throws IoError.
SampledSignal read_signal(const std::string& path);

/// Writers are atomic: content goes to a temp file in the same directory and
/// is renamed into place, so failures never leave partial output. All numbers
/// are serialized with 12 significant digits.
void write_signal_json(const SampledSignal& s, const std::string& path);
void write_signal_csv(const SampledSignal& s, const std::string& path);
void write_spectrum_csv(const Spectrum& spec, const std::string& path);
void write_decomposition_json(const WaveletDecomposition& dec, const std::string& path);
void write_loss_report_json(const LossBreakdown& bd, const std::string& path);
void write_fiducials_csv(const FiducialSet& set, const SampledSignal& signal,
                         const std::string& path);
void write_trace_csv(const std::vector<LossTraceRow>& trace, const std::string& path);
void write_synth_metadata_json(const SynthMetadata& meta, const std::string& path);
void write_eval_report_json(const ReconstructionMetrics& wave, const HrErrorStats& hr,
                            const std::string& path);

/// 12-significant-digit text form used by every writer and the CLI.
std::string format_number(double v);

/// Atomic text write (temp file + rename) for callers assembling their own
/// formats. Throws IoError.
void atomic_write_text(const std::string& content, const std::string& path);

} // namespace ppgkit::io
