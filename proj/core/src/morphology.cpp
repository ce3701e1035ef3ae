#include "ppgkit/morphology.hpp"

#include <algorithm>
#include <cmath>

namespace ppgkit {

namespace {

// Detector tuning. Fractions of the smoothed signal's global range keep every
// rule invariant under positive affine transforms of the input.
constexpr double kOnsetSmoothS = 0.08;       // moving-average window, seconds
constexpr double kPeakThresholdFrac = 0.6;   // systolic candidates must clear this
constexpr double kDiaProminenceFrac = 0.02;  // min rise from notch to diastolic peak

std::vector<double> moving_average(const std::vector<double>& x, std::size_t w) {
    if (w <= 1) return x;
    const std::size_t n = x.size();
    std::vector<double> out(n, 0.0);
    // centered window, shrunk at the edges
    const std::size_t half = w / 2;
    double acc = 0.0;
    std::size_t lo = 0, hi = 0; // current [lo, hi)
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t want_lo = i > half ? i - half : 0;
        const std::size_t want_hi = std::min(n, i + w - half);
        while (hi < want_hi) acc += x[hi++];
        while (lo < want_lo) acc -= x[lo++];
        out[i] = acc / static_cast<double>(hi - lo);
    }
    return out;
}

struct BeatSegmentation {
    std::vector<double> smooth;
    std::vector<std::size_t> onsets;
    std::vector<std::size_t> systolic; // one per onset pair
};

BeatSegmentation segment_beats(const SampledSignal& ppg, double min_hr_bpm,
                               double max_hr_bpm) {
    if (!(min_hr_bpm > 0.0) || !(max_hr_bpm > min_hr_bpm))
        throw BadConfig("detect_onsets: invalid HR band");
    BeatSegmentation seg;
    const std::size_t n = ppg.size();
    const std::size_t w =
        std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(ppg.fs * kOnsetSmoothS)));
    seg.smooth = moving_average(ppg.samples, w);
    const auto& sm = seg.smooth;
    const auto [mn_it, mx_it] = std::minmax_element(sm.begin(), sm.end());
    const double range = *mx_it - *mn_it;
    if (range <= 0.0 || n < 3)
        throw NoBeats("detect_onsets: constant signal");
    const double thr = *mn_it + kPeakThresholdFrac * range;
    const std::size_t min_dist =
        std::max<std::size_t>(1, static_cast<std::size_t>(ppg.fs * 60.0 / max_hr_bpm));
    std::vector<std::size_t> peaks;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (sm[i] >= sm[i - 1] && sm[i] > sm[i + 1] && sm[i] > thr) {
            if (!peaks.empty() && i - peaks.back() < min_dist) {
                if (sm[i] > sm[peaks.back()]) peaks.back() = i;
            } else {
                peaks.push_back(i);
            }
        }
    }
    if (peaks.empty())
        throw NoBeats("detect_onsets: no systolic peaks found");
    std::size_t prev = 0;
    for (std::size_t p : peaks) {
        if (p == prev) continue;
        const auto it = std::min_element(sm.begin() + static_cast<std::ptrdiff_t>(prev),
                                         sm.begin() + static_cast<std::ptrdiff_t>(p));
        const auto idx = static_cast<std::size_t>(it - sm.begin());
        // A minimum on the array edge belongs to a clipped partial beat and
        // cannot be confirmed as a true trough; skip it.
        if (idx > 0) seg.onsets.push_back(idx);
        prev = p;
    }
    // Systolic peak per beat: global max of the smoothed signal between
    // consecutive onsets.
    for (std::size_t b = 0; b + 1 < seg.onsets.size(); ++b) {
        const auto it =
            std::max_element(sm.begin() + static_cast<std::ptrdiff_t>(seg.onsets[b]),
                             sm.begin() + static_cast<std::ptrdiff_t>(seg.onsets[b + 1]));
        seg.systolic.push_back(static_cast<std::size_t>(it - sm.begin()));
    }
    return seg;
}

} // namespace

std::vector<std::size_t> detect_onsets(const SampledSignal& ppg, double min_hr_bpm,
                                       double max_hr_bpm) {
    return segment_beats(ppg, min_hr_bpm, max_hr_bpm).onsets;
}

FiducialSet detect_fiducials(const SampledSignal& ppg) {
    BeatSegmentation seg = segment_beats(ppg, 30.0, 300.0);
    const auto& sm = seg.smooth;
    const auto [mn_it, mx_it] = std::minmax_element(sm.begin(), sm.end());
    const double prominence = kDiaProminenceFrac * (*mx_it - *mn_it);
    FiducialSet set;
    for (std::size_t b = 0; b + 1 < seg.onsets.size(); ++b) {
        BeatFiducials beat;
        beat.onset = seg.onsets[b];
        beat.systolic_peak = seg.systolic[b];
        const std::size_t end = seg.onsets[b + 1];
        // first local minimum after the systolic peak
        std::size_t i = beat.systolic_peak + 1;
        std::optional<std::size_t> notch;
        for (; i + 1 < end; ++i) {
            if (sm[i] <= sm[i - 1] && sm[i] < sm[i + 1]) {
                notch = i;
                break;
            }
        }
        if (notch) {
            // first local maximum after the notch that actually rises
            for (std::size_t j = *notch + 1; j + 1 < end; ++j) {
                if (sm[j] >= sm[j - 1] && sm[j] > sm[j + 1] &&
                    sm[j] - sm[*notch] > prominence) {
                    beat.dicrotic_notch = notch;
                    beat.diastolic_peak = j;
                    break;
                }
            }
        }
        set.beats.push_back(beat);
    }
    if (set.beats.empty())
        throw NoBeats("detect_fiducials: fewer than two onsets");
    return set;
}

FiducialSet detect_sdppg_waves(const SampledSignal& ppg, std::size_t smooth_win) {
    if (smooth_win < 1)
        throw BadConfig("detect_sdppg_waves: smooth_win must be >= 1");
    BeatSegmentation seg = segment_beats(ppg, 30.0, 300.0);
    SampledSignal smoothed(moving_average(ppg.samples, smooth_win), ppg.fs);
    SampledSignal sdppg = second_difference(smoothed);
    const auto& sd = sdppg.samples;
    const std::size_t n = sd.size();

    auto is_max = [&](std::size_t i) {
        return i > 0 && i + 1 < n && sd[i] >= sd[i - 1] && sd[i] > sd[i + 1];
    };
    auto is_min = [&](std::size_t i) {
        return i > 0 && i + 1 < n && sd[i] <= sd[i - 1] && sd[i] < sd[i + 1];
    };
    auto next_extremum = [&](std::size_t from, std::size_t end, bool want_max)
        -> std::optional<std::size_t> {
        for (std::size_t i = from; i <= end && i + 1 < n; ++i)
            if (want_max ? is_max(i) : is_min(i)) return i;
        return std::nullopt;
    };

    FiducialSet set;
    for (std::size_t b = 0; b + 1 < seg.onsets.size(); ++b) {
        BeatFiducials beat;
        beat.onset = seg.onsets[b];
        beat.systolic_peak = seg.systolic[b];
        const std::size_t end = seg.onsets[b + 1];
        // a: first positive local max at or after the onset
        std::optional<std::size_t> a;
        for (std::size_t i = std::max<std::size_t>(beat.onset, 1); i <= end && i + 1 < n; ++i) {
            if (is_max(i) && sd[i] > 0.0) {
                a = i;
                break;
            }
        }
        if (a) {
            beat.a = a;
            std::optional<std::size_t> bw;
            for (std::size_t i = *a + 1; i <= end && i + 1 < n; ++i) {
                if (is_min(i) && sd[i] < 0.0) {
                    bw = i;
                    break;
                }
            }
            if (bw) {
                beat.b = bw;
                const auto m1 = next_extremum(*bw + 1, end, true);
                if (m1) {
                    const auto mn = next_extremum(*m1 + 1, end, false);
                    const auto m2 = mn ? next_extremum(*mn + 1, end, true) : std::nullopt;
                    if (mn && m2) {
                        beat.c = m1;
                        beat.d = mn;
                        beat.e = m2;
                    } else {
                        beat.e = m1; // no intermediate c/d pair
                    }
                }
            }
        }
        set.beats.push_back(beat);
    }
    if (set.beats.empty())
        throw NoBeats("detect_sdppg_waves: fewer than two onsets");
    return set;
}

} // namespace ppgkit
