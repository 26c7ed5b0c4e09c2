#include "cardioseis/event_detection.hpp"

#include "cardioseis/error.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cardioseis {

Template::Template(Waveform samples, double fs, std::size_t source_start)
    : samples_(std::move(samples)), fs_(fs), source_start_(source_start)
{
    if (samples_.size() < 8) throw DegenerateError("template shorter than 8 samples");
    if (std::all_of(samples_.begin(), samples_.end(), [&](double v) { return v == samples_.front(); }))
        throw DegenerateError("degenerate template: constant samples");
    if (!(fs_ > 0.0)) throw std::invalid_argument("template sampling rate must be positive");

    const std::size_t len = samples_.size();
    Waveform padded(3 * len, 0.0);
    std::copy(samples_.begin(), samples_.end(), padded.begin() + static_cast<std::ptrdiff_t>(len));
    const Waveform env = hilbert_envelope(matched_filter_output(padded, build_matched_filter(samples_)));
    const auto peak = static_cast<long long>(std::max_element(env.begin(), env.end()) - env.begin());
    const auto center = static_cast<long long>(len + len / 2);
    peak_to_center_ = peak - center;
}

Template Template::from_channel(const Channel& ch, double start_s, double length_s)
{
    if (!(length_s > 0.0) || start_s < 0.0) throw InputError("template span must have start >= 0 and length > 0");
    const auto start = static_cast<std::size_t>(std::llround(start_s * ch.fs));
    const auto len = static_cast<std::size_t>(std::llround(length_s * ch.fs));
    if (start + len > ch.size()) throw InputError("template span exceeds recording");
    Waveform s(ch.samples.begin() + static_cast<std::ptrdiff_t>(start),
               ch.samples.begin() + static_cast<std::ptrdiff_t>(start + len));
    return Template(std::move(s), ch.fs, start);
}

Waveform build_matched_filter(std::span<const double> tpl)
{
    return Waveform(tpl.rbegin(), tpl.rend());
}

Waveform build_matched_filter(const Template& tpl)
{
    return build_matched_filter(tpl.samples());
}

Waveform matched_filter_output(std::span<const double> x, std::span<const double> w)
{
    if (w.empty()) throw std::invalid_argument("empty filter");
    if (x.size() < w.size()) throw std::invalid_argument("signal shorter than template");
    return convolve(x, w);
}

Waveform extract_window(std::span<const double> x, long long ref, std::size_t length)
{
    const long long start = window_start(ref, length);
    if (start < 0 || start + static_cast<long long>(length) > static_cast<long long>(x.size()))
        throw std::out_of_range("window out of range");
    const auto first = x.begin() + static_cast<std::ptrdiff_t>(start);
    return Waveform(first, first + static_cast<std::ptrdiff_t>(length));
}

double percentile(std::span<const double> x, double pct)
{
    if (x.empty()) throw std::invalid_argument("empty waveform");
    Waveform sorted(x.begin(), x.end());
    std::sort(sorted.begin(), sorted.end());
    const double pos = std::clamp(pct, 0.0, 100.0) / 100.0 * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

std::vector<ScgEvent> detect_events(const Channel& ch, const Template& tpl, const DetectionParams& params)
{
    if (!(params.threshold_frac > 0.0 && params.threshold_frac < 1.0))
        throw std::invalid_argument("threshold_frac must lie in (0, 1)");
    if (params.min_separation_s < 0.0) throw std::invalid_argument("min_separation_s must be non-negative");
    if (std::abs(tpl.fs() - ch.fs) > 1e-9 * ch.fs) throw std::invalid_argument("channel rate mismatch");

    const std::size_t len = tpl.length();
    const Waveform y = matched_filter_output(ch.samples, build_matched_filter(tpl));
    const Waveform env = hilbert_envelope(y);

    const double p95 = percentile(env, 95.0);
    if (!(p95 > 0.0)) return {};
    const double threshold = params.threshold_frac * p95;

    struct Candidate {
        long long ref;
        double amp;
    };
    std::vector<Candidate> cands;
    const auto n = static_cast<long long>(ch.size());
    for (std::size_t i = 1; i + 1 < env.size(); ++i) {
        if (env[i] < threshold || !(env[i] > env[i - 1]) || env[i] < env[i + 1]) continue;
        const long long ref = static_cast<long long>(i) - tpl.peak_to_center();
        const long long start = window_start(ref, len);
        if (start < 0 || start + static_cast<long long>(len) > n) continue;
        cands.push_back({ref, env[i]});
    }

    // Strongest peaks claim their neighbourhood first.
    std::stable_sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) { return a.amp > b.amp; });
    const double min_sep = params.min_separation_s * ch.fs;
    std::vector<long long> accepted;
    for (const auto& c : cands) {
        const bool clear = std::all_of(accepted.begin(), accepted.end(), [&](long long r) {
            return static_cast<double>(std::abs(r - c.ref)) >= min_sep;
        });
        if (clear) accepted.push_back(c.ref);
    }
    std::sort(accepted.begin(), accepted.end());

    std::vector<ScgEvent> events;
    events.reserve(accepted.size());
    for (long long ref : accepted) {
        ScgEvent ev;
        ev.ref_index = static_cast<std::size_t>(ref);
        ev.window = extract_window(ch, ref, len);
        events.push_back(std::move(ev));
    }
    return events;
}

}  // namespace cardioseis
