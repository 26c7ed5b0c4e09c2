#pragma once

#include "cardioseis/event_detection.hpp"
#include "cardioseis/signal_core.hpp"

#include <array>
#include <cstddef>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace cardioseis {

enum class Group { Inspiration, Expiration, LLV, HLV };
enum class Criterion { FlowRate, LungVolume };
enum class Winner { FlowRate, LungVolume, Tie };

std::string_view to_string(Group g);
std::string_view to_string(Criterion c);
std::string_view to_string(Winner w);

struct MeanSd {
    double mean = 0.0;
    double sd = 0.0;   // sample SD (n - 1); 0 when n == 1
    std::size_t n = 0;
};

struct GroupStats {
    Group group{};
    std::size_t n = 0;
    Waveform ensemble_avg;
    MeanSd same;  // normalized dissimilarity (%) vs own ensemble average
    MeanSd alt;   // vs the other group's ensemble average
    double rd = 0.0;  // %
    std::size_t dropped = 0;  // constant windows removed during alignment
};

struct CriterionComparison {
    // Inspiration, Expiration, LLV, HLV.
    std::array<GroupStats, 4> stats;
    // Inspiration <-> LLV, Expiration <-> HLV.
    std::array<Winner, 2> pair_winner{};
    // Mean RD of the two groups per criterion.
    Winner overall = Winner::Tie;
};

struct GroupingParams {
    int max_shift = -1;  // samples; negative means L/4
};

struct AlignResult {
    std::vector<ScgEvent> events;
    std::size_t dropped = 0;
};

/// Shift s in [-max_shift, max_shift] maximizing the Pearson correlation
/// between reference and the channel window centered at center + s. Shifts
/// whose window leaves the channel, or is constant, are skipped. Same
/// tie-break as best_lag. Throws DegenerateError for a constant reference.
int best_shift(const Channel& ch, std::span<const double> reference, std::size_t center, int max_shift);

/// Two-pass alignment: first to the highest-RMS event, then to the
/// first-pass ensemble average. Windows are re-extracted from the channel at
/// ref_index + align_shift. Constant windows are dropped and counted.
AlignResult align_events(const Channel& ch, std::vector<ScgEvent> events, int max_shift);

Waveform ensemble_average(std::span<const ScgEvent> events);

double drms(std::span<const double> window, std::span<const double> group_avg);

/// 100 * drms / rms(group_avg), in percent.
double normalized_dissim(std::span<const double> window, std::span<const double> group_avg);

MeanSd mean_sd(std::span<const double> values);
MeanSd mean_dissimilarity(std::span<const ScgEvent> events, std::span<const double> group_avg);

/// 100 * (mean_alt - mean_same) / mean_same.
double relative_difference(double mean_same, double mean_alt);

/// LungVolume if rd_lv exceeds rd_fr by more than tol, FlowRate for the
/// converse, Tie otherwise.
Winner pick_winner(double rd_fr, double rd_lv, double tol = 0.01);

std::pair<GroupStats, GroupStats> evaluate_criterion(const Channel& ch, std::span<const ScgEvent> events,
                                                     Criterion criterion, const GroupingParams& params = {});

CriterionComparison compare_criteria(const Channel& ch, std::span<const ScgEvent> events,
                                     const GroupingParams& params = {});

struct ScreenResult {
    std::vector<ScgEvent> events;
    std::size_t dropped = 0;
};

/// Removes events whose normalized dissimilarity to the all-event ensemble
/// average exceeds mean + sigmas * SD. Returned events keep their original
/// (unaligned) windows.
ScreenResult screen_outliers(const Channel& ch, std::vector<ScgEvent> events, int max_shift, double sigmas = 3.0);

}  // namespace cardioseis
