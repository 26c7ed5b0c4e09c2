#pragma once

#include "cardioseis/signal_core.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace cardioseis {

enum class FlowPhase { Inspiration, Expiration };
enum class VolumePhase { LLV, HLV };

/// A library SCG event used to build the matched filter.
///
/// On construction the template calibrates the mapping from a matched-filter
/// envelope peak to the event center by running the filter on the template
/// itself (zero-padded by one template length on both sides).
class Template {
public:
    /// Throws DegenerateError if fewer than 8 samples or constant.
    Template(Waveform samples, double fs, std::size_t source_start = 0);

    /// Cut [start_s, start_s + length_s) out of a conditioned channel.
    static Template from_channel(const Channel& ch, double start_s, double length_s);

    const Waveform& samples() const { return samples_; }
    std::size_t length() const { return samples_.size(); }
    double fs() const { return fs_; }
    std::size_t source_start() const { return source_start_; }

    /// Envelope-peak index (in full-convolution coordinates) minus the
    /// event-center index, as measured on the template itself.
    long long peak_to_center() const { return peak_to_center_; }

private:
    Waveform samples_;
    double fs_;
    std::size_t source_start_;
    long long peak_to_center_ = 0;
};

struct ScgEvent {
    std::size_t ref_index = 0;  // event center, sample index in the analysis channel
    Waveform window;
    int align_shift = 0;
    std::optional<FlowPhase> flow_phase;
    std::optional<VolumePhase> volume_phase;
};

struct DetectionParams {
    double threshold_frac = 0.5;    // of the 95th-percentile envelope amplitude
    double min_separation_s = 0.4;
};

/// Time-reversed template: w[t] = l[L - 1 - t].
Waveform build_matched_filter(const Template& tpl);
Waveform build_matched_filter(std::span<const double> tpl);

/// Full linear convolution of x with w (length N + L - 1). A template
/// occurrence starting at sample p produces its correlation maximum at
/// index p + L - 1.
Waveform matched_filter_output(std::span<const double> x, std::span<const double> w);

/// Index of the first sample of a window of length L centered on ref.
inline long long window_start(long long ref, std::size_t length)
{
    return ref - static_cast<long long>(length / 2);
}

/// L samples starting at ref - floor(L/2). Throws std::out_of_range
/// ("window out of range") if that does not fit.
Waveform extract_window(std::span<const double> x, long long ref, std::size_t length);
inline Waveform extract_window(const Channel& ch, long long ref, std::size_t length)
{
    return extract_window(ch.samples, ref, length);
}

/// Matched-filter + Hilbert-envelope peak picking. Returned events are
/// sorted by ref_index, all windows lie inside the channel, and pairwise
/// separation is at least min_separation_s.
std::vector<ScgEvent> detect_events(const Channel& ch, const Template& tpl, const DetectionParams& params = {});

/// Linear-interpolated percentile (0..100) of a non-empty sample.
double percentile(std::span<const double> x, double pct);

}  // namespace cardioseis
