#pragma once

#include "cardioseis/event_detection.hpp"
#include "cardioseis/recording.hpp"
#include "cardioseis/signal_core.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace cardioseis::synth {

enum class Coupling { Volume, Flow, None };

struct SynthConfig {
    double duration_s = 120.0;
    double fs = 320.0;
    double resp_freq = 0.25;       // Hz
    double resp_amplitude = 0.5;   // L/s, peak flow
    double heart_rate_bpm = 66.0;
    double jitter = 0.05;          // uniform +/- fraction of the heart period
    Coupling coupling = Coupling::Volume;
    double alpha_max = 1.0;
    double snr_db = 20.0;          // +inf disables noise
    std::uint64_t seed = 1;
    double first_beat_s = 0.5;
};

struct GroundTruth {
    std::vector<std::size_t> beat_indices;  // center sample of each inserted beat
    std::vector<double> alpha;
    std::vector<FlowPhase> flow_phase;
    std::vector<VolumePhase> volume_phase;
    std::size_t window_length = 0;
};

struct Morphologies {
    Waveform low;
    Waveform high;
};

/// Damped-sinusoid bursts on a 24 Hz carrier, sine vs cosine phase with
/// 40 ms vs 30 ms rise/decay, each normalized to unit RMS.
Morphologies default_morphologies(double fs, double length_s = 0.25);

/// flow = A sin(2 pi f t); closed-form volume = A/(2 pi f) (1 - cos(2 pi f t)).
std::pair<Channel, Channel> gen_respiration(const SynthConfig& cfg);

/// Beat k's waveform is (1 - a_k) m_low + a_k m_high, with a_k taken from
/// the coupling variable at the beat instant. Throws std::invalid_argument
/// ("beat overlap") when the shortest heart period is below the morphology
/// length.
std::pair<Recording, GroundTruth> gen_recording(const SynthConfig& cfg, const Waveform& m_low, const Waveform& m_high);

/// Index into truth.beat_indices of the beat whose alpha is closest to the
/// median alpha, skipping the first and last beats.
std::size_t representative_beat(const GroundTruth& truth);

Coupling parse_coupling(const std::string& s);

}  // namespace cardioseis::synth
