#include "cardioseis/error.hpp"
#include "cardioseis/event_detection.hpp"
#include "cardioseis/synth.hpp"
#include "oracles.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <random>

using namespace cardioseis;
using Catch::Approx;

namespace {

Waveform burst_template()
{
    return synth::default_morphologies(320.0).low;
}

// Silence plus the template at the given centers plus white noise at snr_db.
Channel plant(const Waveform& tpl, std::size_t n, const std::vector<std::size_t>& centers, double snr_db, unsigned seed,
              const std::vector<double>& gains = {})
{
    Waveform x(n, 0.0);
    for (std::size_t k = 0; k < centers.size(); ++k) {
        const double g = gains.empty() ? 1.0 : gains[k];
        const std::size_t start = centers[k] - tpl.size() / 2;
        for (std::size_t i = 0; i < tpl.size(); ++i) x[start + i] += g * tpl[i];
    }
    if (std::isfinite(snr_db)) {
        const auto noise = oracle::gaussian_noise(n, rms(x) / std::pow(10.0, snr_db / 20.0), seed);
        for (std::size_t i = 0; i < n; ++i) x[i] += noise[i];
    }
    return Channel(std::move(x), 320.0, "scg");
}

}  // namespace

TEST_CASE("build_matched_filter reverses the template", "[event_detection]")
{
    CHECK(build_matched_filter(Waveform{1, 2, 3}) == Waveform{3, 2, 1});
    CHECK(build_matched_filter(Waveform{1, 2, 1}) == Waveform{1, 2, 1});
    const Waveform l{0.5, -1, 2, 3, 0, 1, 4, -2, 7};
    CHECK(build_matched_filter(build_matched_filter(l)) == l);
    const Template tpl(l, 320.0);
    CHECK(build_matched_filter(tpl) == Waveform(l.rbegin(), l.rend()));
}

TEST_CASE("Template validation", "[event_detection]")
{
    CHECK_THROWS_AS(Template(Waveform{1, 2, 3, 4, 5, 6, 7}, 320.0), DegenerateError);
    CHECK_THROWS_AS(Template(Waveform(16, 2.0), 320.0), DegenerateError);
    const Channel ch(Waveform(1000, 0.0), 320.0);
    CHECK_THROWS_AS(Template::from_channel(ch, 3.0, 0.25), InputError);
}

TEST_CASE("matched_filter_output examples", "[event_detection][matched_filter]")
{
    const Waveform w = build_matched_filter(Waveform{1, 2});
    CHECK(w == Waveform{2, 1});
    const Waveform y = matched_filter_output(Waveform{0, 1, 2, 0}, w);
    REQUIRE(y.size() == 5);
    const Waveform expect{0, 2, 5, 2, 0};
    for (std::size_t i = 0; i < 5; ++i) CHECK(y[i] == Approx(expect[i]).margin(1e-12));

    SECTION("template against itself peaks at L-1 with the template energy")
    {
        const Waveform l = burst_template();
        const Waveform r = matched_filter_output(l, build_matched_filter(l));
        const auto peak = std::max_element(r.begin(), r.end()) - r.begin();
        CHECK(static_cast<std::size_t>(peak) == l.size() - 1);
        double energy = 0.0;
        for (double v : l) energy += v * v;
        CHECK(r[l.size() - 1] == Approx(energy).epsilon(1e-12));
    }
    SECTION("zeros in, zeros out")
    {
        for (double v : matched_filter_output(Waveform(100, 0.0), burst_template())) CHECK(v == 0.0);
    }
    SECTION("signal shorter than template")
    {
        CHECK_THROWS_WITH(matched_filter_output(Waveform{1, 2}, Waveform{1, 2, 3}), "signal shorter than template");
    }
}

TEST_CASE("matched_filter_output equals brute-force convolution", "[event_detection][matched_filter][property]")
{
    std::mt19937 rng(1234);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t len = 1 + rng() % 128;
        const std::size_t n = len + rng() % (2048 - len + 1);
        Waveform x(n), l(len);
        for (auto& v : x) v = u(rng);
        for (auto& v : l) v = u(rng);
        const Waveform w = build_matched_filter(l);
        const Waveform got = matched_filter_output(x, w);
        const Waveform ref = oracle::brute_convolve(x, w);
        REQUIRE(got.size() == ref.size());
        double err = 0.0, scale = 0.0;
        for (std::size_t i = 0; i < ref.size(); ++i) {
            err = std::max(err, std::abs(got[i] - ref[i]));
            scale = std::max(scale, std::abs(ref[i]));
        }
        CHECK(err <= 1e-9 * scale);
    }
}

TEST_CASE("extract_window", "[event_detection]")
{
    const Channel ch(Waveform{0, 1, 2, 3, 4}, 1.0);
    CHECK(extract_window(ch, 2, 3) == Waveform{1, 2, 3});
    CHECK_THROWS_WITH(extract_window(ch, 0, 3), "window out of range");
    CHECK_THROWS_AS(extract_window(ch, 4, 3), std::out_of_range);
    CHECK(extract_window(ch, 2, 5) == ch.samples);
    CHECK(extract_window(ch, 2, 4) == Waveform{0, 1, 2, 3});
}

TEST_CASE("detect_events finds planted templates", "[event_detection][detect]")
{
    const Waveform l = burst_template();
    const std::vector<std::size_t> truth{400, 1100, 1900};
    const Channel ch = plant(l, 2400, truth, 20.0, 77);
    const Template tpl(l, 320.0);

    const auto events = detect_events(ch, tpl);
    REQUIRE(events.size() == 3);
    for (std::size_t k = 0; k < 3; ++k) {
        CHECK(std::abs(static_cast<long long>(events[k].ref_index) - static_cast<long long>(truth[k])) <= 2);
        CHECK(events[k].window.size() == l.size());
    }

    SECTION("scale invariance of reference indices")
    {
        for (double k : {0.01, 3.0, 250.0}) {
            Channel scaled = ch;
            for (auto& v : scaled.samples) v *= k;
            const auto ev2 = detect_events(scaled, tpl);
            REQUIRE(ev2.size() == events.size());
            for (std::size_t i = 0; i < ev2.size(); ++i) CHECK(ev2[i].ref_index == events[i].ref_index);
        }
    }
}

TEST_CASE("detect_events edge cases", "[event_detection][detect]")
{
    const Waveform l = burst_template();
    const Template tpl(l, 320.0);

    SECTION("silence yields no events")
    {
        CHECK(detect_events(Channel(Waveform(2000, 0.0), 320.0), tpl).empty());
    }
    SECTION("two copies closer than the minimum separation collapse to the larger")
    {
        // 0.3 s apart, second copy larger.
        const Channel ch = plant(l, 1600, {600, 696}, INFINITY, 0, {1.0, 1.5});
        const auto events = detect_events(ch, tpl, {0.5, 0.4});
        REQUIRE(events.size() == 1);
        CHECK(std::abs(static_cast<long long>(events[0].ref_index) - 696) <= 2);
    }
    SECTION("events near the ends are dropped")
    {
        const Channel ch = plant(l, 1200, {l.size() / 2, 600}, INFINITY, 0);
        const auto events = detect_events(ch, tpl);
        for (const auto& ev : events) {
            CHECK(window_start(static_cast<long long>(ev.ref_index), l.size()) >= 0);
            CHECK(ev.ref_index + (l.size() - l.size() / 2) <= ch.size());
        }
    }
    SECTION("rate mismatch")
    {
        CHECK_THROWS_AS(detect_events(Channel(Waveform(1000, 0.0), 1000.0), tpl), std::invalid_argument);
    }
}

TEST_CASE("detected events respect the minimum separation", "[event_detection][detect][property]")
{
    const auto morph = synth::default_morphologies(320.0);
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        synth::SynthConfig cfg;
        cfg.duration_s = 30.0;
        cfg.seed = seed;
        cfg.heart_rate_bpm = 50.0 + 4.0 * static_cast<double>(seed);
        auto [rec, truth] = synth::gen_recording(cfg, morph.low, morph.high);
        const std::size_t b = synth::representative_beat(truth);
        const Template tpl(extract_window(rec.scg, static_cast<long long>(truth.beat_indices[b]), truth.window_length), 320.0);
        for (double sep : {0.2, 0.4, 0.6}) {
            const auto events = detect_events(rec.scg, tpl, {0.5, sep});
            for (std::size_t i = 1; i < events.size(); ++i) {
                CHECK(events[i].ref_index > events[i - 1].ref_index);
                CHECK(static_cast<double>(events[i].ref_index - events[i - 1].ref_index) / 320.0 >= sep);
            }
        }
    }
}

TEST_CASE("percentile", "[event_detection]")
{
    CHECK(percentile(Waveform{1, 2, 3, 4, 5}, 50.0) == 3.0);
    CHECK(percentile(Waveform{1, 2, 3, 4, 5}, 95.0) == Approx(4.8));
    CHECK(percentile(Waveform{7}, 95.0) == 7.0);
}
