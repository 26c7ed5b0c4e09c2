#include "cardioseis/grouping.hpp"

#include "cardioseis/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace cardioseis {

std::string_view to_string(Group g)
{
    switch (g) {
    case Group::Inspiration: return "Inspiration";
    case Group::Expiration: return "Expiration";
    case Group::LLV: return "LLV";
    case Group::HLV: return "HLV";
    }
    return "?";
}

std::string_view to_string(Criterion c)
{
    return c == Criterion::FlowRate ? "FlowRate" : "LungVolume";
}

std::string_view to_string(Winner w)
{
    switch (w) {
    case Winner::FlowRate: return "FlowRate";
    case Winner::LungVolume: return "LungVolume";
    case Winner::Tie: return "Tie";
    }
    return "?";
}

namespace {

bool is_constant(std::span<const double> x)
{
    return std::all_of(x.begin(), x.end(), [&](double v) { return v == x.front(); });
}

int resolve_max_shift(int requested, std::size_t window_len)
{
    return requested >= 0 ? requested : static_cast<int>(window_len / 4);
}

ScgEvent shifted(const Channel& ch, const ScgEvent& ev, int shift)
{
    ScgEvent out = ev;
    out.align_shift = shift;
    out.window = extract_window(ch, static_cast<long long>(ev.ref_index) + shift, ev.window.size());
    return out;
}

}  // namespace

int best_shift(const Channel& ch, std::span<const double> reference, std::size_t center, int max_shift)
{
    if (reference.empty() || is_constant(reference)) throw DegenerateError("degenerate group average");
    const std::size_t len = reference.size();
    const auto n = static_cast<long long>(ch.size());
    double best = -std::numeric_limits<double>::infinity();
    int best_s = 0;
    bool found = false;
    for (int step = 0; step <= 2 * max_shift; ++step) {
        const int s = (step == 0) ? 0 : ((step % 2 == 1) ? -(step + 1) / 2 : step / 2);
        const long long start = window_start(static_cast<long long>(center) + s, len);
        if (start < 0 || start + static_cast<long long>(len) > n) continue;
        const std::span<const double> seg(ch.samples.data() + start, len);
        if (is_constant(seg)) continue;
        const double r = pearson(reference, seg);
        if (r > best) {
            best = r;
            best_s = s;
            found = true;
        }
    }
    if (!found) throw DegenerateError("degenerate correlation");
    return best_s;
}

AlignResult align_events(const Channel& ch, std::vector<ScgEvent> events, int max_shift)
{
    if (events.empty()) throw std::invalid_argument("empty event list");
    const std::size_t len = events.front().window.size();
    for (const auto& ev : events)
        if (ev.window.size() != len) throw std::invalid_argument("event windows differ in length");

    AlignResult result;
    std::vector<ScgEvent> kept;
    kept.reserve(events.size());
    for (auto& ev : events) {
        if (is_constant(ev.window))
            ++result.dropped;
        else
            kept.push_back(std::move(ev));
    }
    if (kept.empty()) throw DegenerateError("all event windows are constant");

    // Pass 1: highest-RMS event as reference.
    std::size_t ref_idx = 0;
    double ref_rms = -1.0;
    for (std::size_t i = 0; i < kept.size(); ++i) {
        const double r = rms(kept[i].window);
        if (r > ref_rms) {
            ref_rms = r;
            ref_idx = i;
        }
    }
    const Waveform reference = kept[ref_idx].window;
    std::vector<ScgEvent> pass1;
    pass1.reserve(kept.size());
    for (const auto& ev : kept) pass1.push_back(shifted(ch, ev, best_shift(ch, reference, ev.ref_index, max_shift)));

    // Pass 2: realign against the first-pass ensemble average.
    const Waveform avg = ensemble_average(pass1);
    if (is_constant(avg)) {
        result.events = std::move(pass1);
        return result;
    }
    result.events.reserve(kept.size());
    for (const auto& ev : kept) result.events.push_back(shifted(ch, ev, best_shift(ch, avg, ev.ref_index, max_shift)));
    return result;
}

Waveform ensemble_average(std::span<const ScgEvent> events)
{
    if (events.empty()) throw DegenerateError("empty group");
    const std::size_t len = events.front().window.size();
    Waveform avg(len, 0.0);
    for (const auto& ev : events) {
        if (ev.window.size() != len) throw std::invalid_argument("event windows differ in length");
        for (std::size_t i = 0; i < len; ++i) avg[i] += ev.window[i];
    }
    const double n = static_cast<double>(events.size());
    for (double& v : avg) v /= n;
    return avg;
}

double drms(std::span<const double> window, std::span<const double> group_avg)
{
    if (window.size() != group_avg.size()) throw std::invalid_argument("length mismatch");
    Waveform diff(window.size());
    for (std::size_t i = 0; i < window.size(); ++i) diff[i] = window[i] - group_avg[i];
    return rms(diff);
}

double normalized_dissim(std::span<const double> window, std::span<const double> group_avg)
{
    const double denom = rms(group_avg);
    if (!(denom > 0.0)) throw DegenerateError("degenerate group average");
    return std::abs(drms(window, group_avg) / denom) * 100.0;
}

MeanSd mean_sd(std::span<const double> values)
{
    if (values.empty()) throw DegenerateError("empty group");
    MeanSd out;
    out.n = values.size();
    double sum = 0.0;
    for (double v : values) sum += v;
    out.mean = sum / static_cast<double>(out.n);
    if (out.n > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - out.mean) * (v - out.mean);
        out.sd = std::sqrt(ss / static_cast<double>(out.n - 1));
    }
    return out;
}

MeanSd mean_dissimilarity(std::span<const ScgEvent> events, std::span<const double> group_avg)
{
    if (events.empty()) throw DegenerateError("empty group");
    std::vector<double> values;
    values.reserve(events.size());
    for (const auto& ev : events) values.push_back(normalized_dissim(ev.window, group_avg));
    return mean_sd(values);
}

double relative_difference(double mean_same, double mean_alt)
{
    if (!(mean_same > 0.0)) throw DegenerateError("relative difference undefined for zero same-group dissimilarity");
    return 100.0 * (mean_alt - mean_same) / mean_same;
}

Winner pick_winner(double rd_fr, double rd_lv, double tol)
{
    if (std::abs(rd_lv - rd_fr) <= tol) return Winner::Tie;
    return rd_lv > rd_fr ? Winner::LungVolume : Winner::FlowRate;
}

std::pair<GroupStats, GroupStats> evaluate_criterion(const Channel& ch, std::span<const ScgEvent> events,
                                                     Criterion criterion, const GroupingParams& params)
{
    const Group first_id = criterion == Criterion::FlowRate ? Group::Inspiration : Group::LLV;
    const Group second_id = criterion == Criterion::FlowRate ? Group::Expiration : Group::HLV;

    std::vector<ScgEvent> first, second;
    for (const auto& ev : events) {
        bool in_first = false;
        if (criterion == Criterion::FlowRate) {
            if (!ev.flow_phase) throw std::invalid_argument("event missing flow phase label");
            in_first = *ev.flow_phase == FlowPhase::Inspiration;
        } else {
            if (!ev.volume_phase) throw std::invalid_argument("event missing volume phase label");
            in_first = *ev.volume_phase == VolumePhase::LLV;
        }
        (in_first ? first : second).push_back(ev);
    }
    if (first.empty() || second.empty())
        throw DegenerateError("degenerate split for criterion " + std::string(to_string(criterion)) + ": " +
                              std::string(to_string(first.empty() ? first_id : second_id)) + " group is empty");

    const int max_shift = resolve_max_shift(params.max_shift, first.front().window.size());
    AlignResult a = align_events(ch, std::move(first), max_shift);
    AlignResult b = align_events(ch, std::move(second), max_shift);
    const Waveform avg_a = ensemble_average(a.events);
    const Waveform avg_b = ensemble_average(b.events);

    auto stats_for = [&](Group id, const AlignResult& own, const Waveform& own_avg, const Waveform& other_avg) {
        GroupStats s;
        s.group = id;
        s.n = own.events.size();
        s.dropped = own.dropped;
        s.ensemble_avg = own_avg;
        s.same = mean_dissimilarity(own.events, own_avg);
        std::vector<double> alt;
        alt.reserve(own.events.size());
        for (const auto& ev : own.events) {
            const ScgEvent moved = shifted(ch, ev, best_shift(ch, other_avg, ev.ref_index, max_shift));
            alt.push_back(normalized_dissim(moved.window, other_avg));
        }
        s.alt = mean_sd(alt);
        // Below this the same-group dissimilarity is rounding noise from averaging identical windows.
        if (s.same.mean < 1e-9)
            throw DegenerateError("degenerate group: " + std::string(to_string(id)) +
                                  " events are identical to their average, relative difference undefined");
        s.rd = relative_difference(s.same.mean, s.alt.mean);
        return s;
    };
    return {stats_for(first_id, a, avg_a, avg_b), stats_for(second_id, b, avg_b, avg_a)};
}

CriterionComparison compare_criteria(const Channel& ch, std::span<const ScgEvent> events,
                                     const GroupingParams& params)
{
    auto [insp, exp] = evaluate_criterion(ch, events, Criterion::FlowRate, params);
    auto [llv, hlv] = evaluate_criterion(ch, events, Criterion::LungVolume, params);
    CriterionComparison out;
    out.pair_winner = {pick_winner(insp.rd, llv.rd), pick_winner(exp.rd, hlv.rd)};
    out.overall = pick_winner((insp.rd + exp.rd) / 2.0, (llv.rd + hlv.rd) / 2.0);
    out.stats = {std::move(insp), std::move(exp), std::move(llv), std::move(hlv)};
    return out;
}

ScreenResult screen_outliers(const Channel& ch, std::vector<ScgEvent> events, int max_shift, double sigmas)
{
    ScreenResult out;
    if (events.size() < 3) {
        out.events = std::move(events);
        return out;
    }
    const int shift = resolve_max_shift(max_shift, events.front().window.size());
    const AlignResult aligned = align_events(ch, events, shift);
    const Waveform avg = ensemble_average(aligned.events);
    if (!(rms(avg) > 0.0)) throw DegenerateError("degenerate group average");

    std::vector<double> dissim;
    dissim.reserve(aligned.events.size());
    for (const auto& ev : aligned.events) dissim.push_back(normalized_dissim(ev.window, avg));
    const MeanSd stats = mean_sd(dissim);
    const double limit = stats.mean + sigmas * stats.sd;

    // aligned.events preserves the order of the non-constant input events.
    std::size_t k = 0;
    for (auto& ev : events) {
        const bool constant = is_constant(ev.window);
        if (constant) {
            ++out.dropped;
            continue;
        }
        if (dissim[k++] > limit)
            ++out.dropped;
        else
            out.events.push_back(std::move(ev));
    }
    return out;
}

}  // namespace cardioseis
