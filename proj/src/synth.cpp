#include "cardioseis/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace cardioseis::synth {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Waveform burst(double fs, double length_s, double carrier_hz, double rise_s, double phase)
{
    const auto n = static_cast<std::size_t>(std::llround(length_s * fs));
    Waveform w(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / fs;
        // Gamma-like envelope: zero at onset, peak at rise_s, then decays.
        const double env = (t / rise_s) * std::exp(1.0 - t / rise_s);
        w[i] = env * std::sin(kTwoPi * carrier_hz * t + phase);
    }
    const double r = rms(w);
    for (double& v : w) v /= r;
    return w;
}

}  // namespace

Morphologies default_morphologies(double fs, double length_s)
{
    // Same carrier in quadrature: any mixture keeps the burst envelope, so the
    // matched-filter envelope peak does not move with the mixing coefficient.
    return {burst(fs, length_s, 24.0, 0.040, 0.0), burst(fs, length_s, 24.0, 0.030, std::numbers::pi / 2.0)};
}

std::pair<Channel, Channel> gen_respiration(const SynthConfig& cfg)
{
    if (!(cfg.duration_s > 0.0) || !(cfg.fs > 0.0)) throw std::invalid_argument("duration and fs must be positive");
    if (!(cfg.resp_freq > 0.0)) throw std::invalid_argument("respiration frequency must be positive");
    const auto n = static_cast<std::size_t>(std::llround(cfg.duration_s * cfg.fs));
    Waveform flow(n), vol(n);
    const double w = kTwoPi * cfg.resp_freq;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / cfg.fs;
        flow[i] = cfg.resp_amplitude * std::sin(w * t);
        vol[i] = cfg.resp_amplitude / w * (1.0 - std::cos(w * t));
    }
    return {Channel(std::move(flow), cfg.fs, "flow"), Channel(std::move(vol), cfg.fs, "volume")};
}

std::pair<Recording, GroundTruth> gen_recording(const SynthConfig& cfg, const Waveform& m_low, const Waveform& m_high)
{
    if (m_low.size() != m_high.size() || m_low.empty()) throw std::invalid_argument("morphologies must have equal, non-zero length");
    const double heart_hz = cfg.heart_rate_bpm / 60.0;
    if (!(cfg.resp_freq < heart_hz)) throw std::invalid_argument("respiration frequency must be below the heart rate");
    if (cfg.jitter < 0.0 || cfg.jitter >= 1.0) throw std::invalid_argument("jitter must lie in [0, 1)");
    if (cfg.alpha_max < 0.0 || cfg.alpha_max > 1.0) throw std::invalid_argument("alpha_max must lie in [0, 1]");
    if (std::isnan(cfg.snr_db)) throw std::invalid_argument("snr_db must not be NaN");

    const double period = cfg.fs / heart_hz;  // samples
    const std::size_t len = m_low.size();
    if (period * (1.0 - cfg.jitter) < static_cast<double>(len)) throw std::invalid_argument("beat overlap");

    auto [flow, vol] = gen_respiration(cfg);
    const std::size_t n = flow.size();
    const double vol_peak = 2.0 * cfg.resp_amplitude / (kTwoPi * cfg.resp_freq);
    double vol_mean = 0.0;
    for (double v : vol.samples) vol_mean += v;
    vol_mean /= static_cast<double>(std::max<std::size_t>(n, 1));

    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> jitter(-cfg.jitter, cfg.jitter);

    Waveform scg(n, 0.0), ecg(n, 0.0);
    GroundTruth truth;
    truth.window_length = len;
    const long long half = static_cast<long long>(len / 2);
    const double ecg_sigma = 0.008 * cfg.fs;
    const auto ecg_lead = static_cast<long long>(std::llround(0.05 * cfg.fs));

    double t = cfg.first_beat_s * cfg.fs;
    while (true) {
        const long long center = std::llround(t);
        const long long start = center - half;
        if (start + static_cast<long long>(len) > static_cast<long long>(n)) break;
        if (start >= 0) {
            const auto c = static_cast<std::size_t>(center);
            double alpha = 0.5;
            switch (cfg.coupling) {
            case Coupling::Volume: alpha = vol_peak > 0.0 ? std::clamp(vol.samples[c] / vol_peak, 0.0, 1.0) : 0.0; break;
            case Coupling::Flow: alpha = flow.samples[c] > 0.0 ? 1.0 : 0.0; break;
            case Coupling::None: alpha = 0.5; break;
            }
            alpha *= cfg.alpha_max;
            for (std::size_t i = 0; i < len; ++i)
                scg[static_cast<std::size_t>(start) + i] += (1.0 - alpha) * m_low[i] + alpha * m_high[i];

            const long long r_peak = center - ecg_lead;
            for (long long k = -4 * static_cast<long long>(ecg_sigma) - 1; k <= 4 * static_cast<long long>(ecg_sigma) + 1; ++k) {
                const long long idx = r_peak + k;
                if (idx < 0 || idx >= static_cast<long long>(n)) continue;
                const double z = static_cast<double>(k) / ecg_sigma;
                ecg[static_cast<std::size_t>(idx)] += std::exp(-0.5 * z * z);
            }

            truth.beat_indices.push_back(c);
            truth.alpha.push_back(alpha);
            truth.flow_phase.push_back(flow.samples[c] > 0.0 ? FlowPhase::Inspiration : FlowPhase::Expiration);
            truth.volume_phase.push_back(vol.samples[c] > vol_mean ? VolumePhase::HLV : VolumePhase::LLV);
        }
        t += period * (1.0 + jitter(rng));
    }

    if (std::isfinite(cfg.snr_db) && n > 0) {
        const double noise_rms = rms(scg) / std::pow(10.0, cfg.snr_db / 20.0);
        std::normal_distribution<double> gauss(0.0, noise_rms);
        for (double& v : scg) v += gauss(rng);
    }

    Recording rec;
    rec.id = "synth";
    rec.scg = Channel(std::move(scg), cfg.fs, "scg_z");
    rec.ecg = Channel(std::move(ecg), cfg.fs, "ecg");
    rec.flow = std::move(flow);
    rec.flow.label = "flow_lps";
    return {std::move(rec), std::move(truth)};
}

std::size_t representative_beat(const GroundTruth& truth)
{
    const std::size_t n = truth.alpha.size();
    if (n == 0) throw std::invalid_argument("no beats");
    if (n < 3) return 0;
    std::vector<double> sorted(truth.alpha.begin() + 1, truth.alpha.end() - 1);
    std::sort(sorted.begin(), sorted.end());
    const double median = sorted[sorted.size() / 2];
    std::size_t best = 1;
    for (std::size_t i = 1; i + 1 < n; ++i)
        if (std::abs(truth.alpha[i] - median) < std::abs(truth.alpha[best] - median)) best = i;
    return best;
}

Coupling parse_coupling(const std::string& s)
{
    if (s == "volume") return Coupling::Volume;
    if (s == "flow") return Coupling::Flow;
    if (s == "none") return Coupling::None;
    throw std::invalid_argument("unknown coupling '" + s + "' (expected volume|flow|none)");
}

}  // namespace cardioseis::synth
