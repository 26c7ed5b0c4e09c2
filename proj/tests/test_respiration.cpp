#include "cardioseis/respiration.hpp"
#include "oracles.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

using namespace cardioseis;
using Catch::Approx;

TEST_CASE("integrate_flow examples", "[respiration]")
{
    SECTION("trapezoid by hand")
    {
        const auto tr = integrate_flow(Channel({0, 1, 1, 0}, 1.0), false);
        const Waveform expect{0, 0.5, 1.5, 2.0};
        for (std::size_t i = 0; i < 4; ++i) CHECK(tr.volume.samples[i] == Approx(expect[i]).margin(1e-12));
        CHECK(tr.mean_volume == Approx(1.0));
    }
    SECTION("zero flow")
    {
        const auto tr = integrate_flow(Channel(Waveform(50, 0.0), 320.0), true);
        for (double v : tr.volume.samples) CHECK(v == 0.0);
        CHECK(tr.mean_volume == 0.0);
    }
    SECTION("sinusoidal flow matches its antiderivative")
    {
        const double fs = 320.0, f = 0.25, amp = 0.6;
        const auto flow = oracle::sine(f, fs, 6400, amp);
        const auto tr = integrate_flow(Channel(flow, fs), false);
        Waveform closed(flow.size()), diff(flow.size());
        for (std::size_t i = 0; i < flow.size(); ++i) {
            const double t = static_cast<double>(i) / fs;
            closed[i] = amp / (2 * std::numbers::pi * f) * (1 - std::cos(2 * std::numbers::pi * f * t));
            diff[i] = tr.volume.samples[i] - closed[i];
        }
        CHECK(oracle::brute_rms(diff) <= 0.01 * oracle::brute_rms(closed));
        REQUIRE(tr.volume.size() == flow.size());
        CHECK(tr.volume.samples[0] == 0.0);
    }
    SECTION("empty flow")
    {
        CHECK_THROWS_AS(integrate_flow(Channel({}, 320.0)), std::invalid_argument);
    }
}

TEST_CASE("integrate_flow invariants", "[respiration][property]")
{
    std::mt19937 rng(9);
    for (int trial = 0; trial < 50; ++trial) {
        auto flow = oracle::gaussian_noise(10 + rng() % 1000, 0.5, rng());
        for (auto& v : flow) v += 0.2;  // offset drift
        const double k = -2.0 + 0.1 * trial;
        Waveform kflow = flow;
        for (auto& v : kflow) v *= k;
        for (bool detrend : {false, true}) {
            const auto a = integrate_flow(Channel(flow, 100.0), detrend);
            const auto b = integrate_flow(Channel(kflow, 100.0), detrend);
            double scale = 0.0;
            for (double v : a.volume.samples) scale = std::max(scale, std::abs(v));
            for (std::size_t i = 0; i < flow.size(); ++i)
                CHECK(b.volume.samples[i] == Approx(k * a.volume.samples[i]).margin(1e-9 * std::abs(k) * scale + 1e-300));
            double sum = 0.0;
            for (double v : a.volume.samples) sum += v;
            CHECK(a.mean_volume == Approx(sum / static_cast<double>(flow.size())).margin(1e-12));
            if (detrend) CHECK(std::abs(a.volume.samples.back()) <= 1e-9);
        }
    }
}

TEST_CASE("phase labellers", "[respiration]")
{
    RespirationTrace tr;
    tr.flow = Channel({0.3, -0.3, 0.0}, 1.0);
    tr.mean_volume = 1.0;
    tr.volume = Channel({0.8, 1.2, 1.0}, 1.0);

    CHECK(flow_phase_at(tr, 0) == FlowPhase::Inspiration);
    CHECK(flow_phase_at(tr, 1) == FlowPhase::Expiration);
    CHECK(flow_phase_at(tr, 2) == FlowPhase::Expiration);
    CHECK_THROWS_AS(flow_phase_at(tr, 3), std::out_of_range);

    CHECK(volume_phase_at(tr, 0) == VolumePhase::LLV);
    CHECK(volume_phase_at(tr, 1) == VolumePhase::HLV);
    CHECK(volume_phase_at(tr, 2) == VolumePhase::LLV);
    CHECK_THROWS_AS(volume_phase_at(tr, 3), std::out_of_range);
}

TEST_CASE("label_events", "[respiration]")
{
    const double fs = 320.0;
    const auto flow = oracle::sine(0.25, fs, 6400, 0.5);
    const auto tr = integrate_flow(Channel(flow, fs), true);

    SECTION("strong inhalation at low volume")
    {
        ScgEvent ev;
        ev.ref_index = 160;  // 0.5 s: flow rising, volume still small
        const auto out = label_events({ev}, tr, fs);
        REQUIRE(out.size() == 1);
        CHECK(*out[0].flow_phase == FlowPhase::Inspiration);
        CHECK(*out[0].volume_phase == VolumePhase::LLV);
    }
    SECTION("empty list")
    {
        CHECK(label_events({}, tr, fs).empty());
    }
    SECTION("rate mismatch")
    {
        CHECK_THROWS_WITH(label_events({}, tr, 1000.0), "channel rate mismatch");
    }
    SECTION("partition and phase geometry on a sinusoid")
    {
        std::vector<ScgEvent> events;
        for (std::size_t i = 0; i < 6400; i += 7) {
            ScgEvent ev;
            ev.ref_index = i;
            events.push_back(ev);
        }
        const auto out = label_events(events, tr, fs);
        std::size_t insp = 0, exp = 0, llv = 0, hlv = 0;
        const double period = fs / 0.25;  // 1280 samples
        for (const auto& ev : out) {
            (*ev.flow_phase == FlowPhase::Inspiration ? insp : exp)++;
            (*ev.volume_phase == VolumePhase::LLV ? llv : hlv)++;
            const double phase = std::fmod(static_cast<double>(ev.ref_index), period) / period;
            // Inspiration = positive half-cycle of flow.
            if (phase > 1.0 / 1280 && phase < 0.5 - 1.0 / 1280) CHECK(*ev.flow_phase == FlowPhase::Inspiration);
            if (phase > 0.5 + 1.0 / 1280 && phase < 1.0 - 1.0 / 1280) CHECK(*ev.flow_phase == FlowPhase::Expiration);
            // HLV is the inspiration window delayed by a quarter period.
            if (phase > 0.25 + 1.0 / 1280 && phase < 0.75 - 1.0 / 1280) CHECK(*ev.volume_phase == VolumePhase::HLV);
            if (phase < 0.25 - 1.0 / 1280 || phase > 0.75 + 1.0 / 1280) CHECK(*ev.volume_phase == VolumePhase::LLV);
        }
        CHECK(insp + exp == out.size());
        CHECK(llv + hlv == out.size());
    }
}
