#pragma once

#include "cardioseis/event_detection.hpp"
#include "cardioseis/signal_core.hpp"

#include <cstddef>
#include <vector>

namespace cardioseis {

/// Flow (L/s, positive = inspiration) and the lung volume derived from it.
struct RespirationTrace {
    Channel flow;
    Channel volume;       // L, volume[0] == 0
    double mean_volume = 0.0;  // LLV/HLV threshold
};

/// Cumulative trapezoidal integral of flow. With detrend, the
/// trapezoid-weighted mean flow is removed first so the last volume sample
/// returns to zero.
RespirationTrace integrate_flow(const Channel& flow, bool detrend = true);

/// flow > 0 is Inspiration; zero flow counts as Expiration.
FlowPhase flow_phase_at(const RespirationTrace& trace, std::size_t index);

/// volume > mean is HLV; equality counts as LLV.
VolumePhase volume_phase_at(const RespirationTrace& trace, std::size_t index);

/// Labels each event at its ref_index. events_fs is the rate the events were
/// detected at and must equal the trace rate.
std::vector<ScgEvent> label_events(std::vector<ScgEvent> events, const RespirationTrace& trace, double events_fs);

}  // namespace cardioseis
