#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ppgkit/signal.hpp"

namespace ppgkit {

/// Per-beat fiducial indices. Optional features are absent when the waveform
/// genuinely lacks them, never fabricated.
struct BeatFiducials {
    std::size_t onset = 0;
    std::size_t systolic_peak = 0;
    std::optional<std::size_t> dicrotic_notch;
    std::optional<std::size_t> diastolic_peak;
    // SDPPG waves (a-d systolic, e diastolic); c/d commonly absent at high HR.
    std::optional<std::size_t> a, b, c, d, e;
};

struct FiducialSet {
    std::vector<BeatFiducials> beats;
};

/// Beat onsets: local minima preceding each systolic upstroke. Sorted,
/// strictly increasing. Throws NoBeats when no qualifying minima exist.
std::vector<std::size_t> detect_onsets(const SampledSignal& ppg,
                                       double min_hr_bpm = 30.0,
                                       double max_hr_bpm = 300.0);

/// Per beat: systolic peak = global max between consecutive onsets; dicrotic
/// notch = first local minimum after the systolic peak; diastolic peak =
/// first local maximum after the notch (requires a small prominence so noise
/// ripple is not reported as a feature).
FiducialSet detect_fiducials(const SampledSignal& ppg);

/// a-e waves on the smoothed second derivative: a = first positive local max
/// after onset, b = first negative local min after a, then c/d/e follow the
/// alternating-extrema convention; c/d are omitted when the intermediate
/// extrema are absent.
FiducialSet detect_sdppg_waves(const SampledSignal& ppg, std::size_t smooth_win = 5);

} // namespace ppgkit
