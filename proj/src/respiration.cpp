#include "cardioseis/respiration.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace cardioseis {

RespirationTrace integrate_flow(const Channel& flow, bool detrend)
{
    if (flow.samples.empty()) throw std::invalid_argument("empty flow channel");
    if (!(flow.fs > 0.0)) throw std::invalid_argument("flow sampling rate must be positive");

    const auto& f = flow.samples;
    const std::size_t n = f.size();
    double offset = 0.0;
    if (detrend) {
        if (n == 1) {
            offset = f[0];
        } else {
            const double sum = std::accumulate(f.begin(), f.end(), 0.0);
            offset = (sum - 0.5 * (f.front() + f.back())) / static_cast<double>(n - 1);
        }
    }

    Waveform vol(n, 0.0);
    const double half_dt = 0.5 / flow.fs;
    for (std::size_t i = 1; i < n; ++i) vol[i] = vol[i - 1] + half_dt * ((f[i - 1] - offset) + (f[i] - offset));

    RespirationTrace trace;
    trace.flow = flow;
    trace.mean_volume = std::accumulate(vol.begin(), vol.end(), 0.0) / static_cast<double>(n);
    trace.volume = Channel(std::move(vol), flow.fs, "volume");
    return trace;
}

FlowPhase flow_phase_at(const RespirationTrace& trace, std::size_t index)
{
    if (index >= trace.flow.size()) throw std::out_of_range("flow index out of range");
    return trace.flow.samples[index] > 0.0 ? FlowPhase::Inspiration : FlowPhase::Expiration;
}

VolumePhase volume_phase_at(const RespirationTrace& trace, std::size_t index)
{
    if (index >= trace.volume.size()) throw std::out_of_range("volume index out of range");
    return trace.volume.samples[index] > trace.mean_volume ? VolumePhase::HLV : VolumePhase::LLV;
}

std::vector<ScgEvent> label_events(std::vector<ScgEvent> events, const RespirationTrace& trace, double events_fs)
{
    if (std::abs(events_fs - trace.flow.fs) > 1e-9 * events_fs) throw std::invalid_argument("channel rate mismatch");
    for (auto& ev : events) {
        ev.flow_phase = flow_phase_at(trace, ev.ref_index);
        ev.volume_phase = volume_phase_at(trace, ev.ref_index);
    }
    return events;
}

}  // namespace cardioseis
