#include "cardioseis/signal_core.hpp"

#include "cardioseis/error.hpp"
#include "fft.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace cardioseis {

namespace {

constexpr double kPi = std::numbers::pi;

// Odd (mirror) reflection of an index into [0, n). Handles any overshoot by
// bouncing back and forth, so short signals still get a valid index.
std::size_t reflect_index(long long i, std::size_t n)
{
    if (n == 1) return 0;
    const long long period = 2 * static_cast<long long>(n) - 2;
    i %= period;
    if (i < 0) i += period;
    if (i >= static_cast<long long>(n)) i = period - i;
    return static_cast<std::size_t>(i);
}

double db(double gain) { return 20.0 * std::log10(std::max(gain, 1e-300)); }

struct Ratio {
    long long up;
    long long down;
};

// target/source as a small rational. Integer-valued rates reduce by gcd;
// anything else falls back to a continued-fraction approximation.
Ratio rate_ratio(double source, double target)
{
    const double rs = std::round(source);
    const double rt = std::round(target);
    if (std::abs(rs - source) < 1e-9 && std::abs(rt - target) < 1e-9 && rs < 1e12 && rt < 1e12) {
        const auto s = static_cast<long long>(rs);
        const auto t = static_cast<long long>(rt);
        const long long g = std::gcd(s, t);
        return {t / g, s / g};
    }
    const double r = target / source;
    long long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    double v = r;
    for (int it = 0; it < 64; ++it) {
        const auto a = static_cast<long long>(std::floor(v));
        const long long h2 = a * h1 + h0;
        const long long k2 = a * k1 + k0;
        if (k2 > 1000000) break;
        h0 = h1; h1 = h2; k0 = k1; k1 = k2;
        if (std::abs(static_cast<double>(h1) / static_cast<double>(k1) - r) < 1e-12 * r) break;
        const double frac = v - static_cast<double>(a);
        if (frac < 1e-15) break;
        v = 1.0 / frac;
    }
    return {h1, k1};
}

}  // namespace

Channel::Channel(Waveform s, double rate, std::string name)
    : samples(std::move(s)), fs(rate), label(std::move(name))
{
}

void validate(const Channel& ch)
{
    if (!(ch.fs > 0.0) || !std::isfinite(ch.fs))
        throw InputError("channel '" + ch.label + "': sampling rate must be positive");
    for (std::size_t i = 0; i < ch.samples.size(); ++i) {
        if (!std::isfinite(ch.samples[i]))
            throw InputError("channel '" + ch.label + "': non-finite sample at index " + std::to_string(i));
    }
}

double rms(std::span<const double> x)
{
    if (x.empty()) throw std::invalid_argument("empty waveform");
    // Scale by the peak to stay clear of overflow/underflow in the squares.
    double peak = 0.0;
    for (double v : x) peak = std::max(peak, std::abs(v));
    if (peak == 0.0) return 0.0;
    double acc = 0.0;
    for (double v : x) {
        const double s = v / peak;
        acc += s * s;
    }
    return peak * std::sqrt(acc / static_cast<double>(x.size()));
}

Waveform design_lowpass_kernel(double fc, std::size_t taps)
{
    if (!(fc > 0.0 && fc < 0.5)) throw std::invalid_argument("normalized cutoff must lie in (0, 0.5)");
    if (taps % 2 == 0) ++taps;
    Waveform h(taps);
    const double mid = static_cast<double>(taps - 1) / 2.0;
    for (std::size_t k = 0; k < taps; ++k) {
        const double t = static_cast<double>(k) - mid;
        const double sinc = (t == 0.0) ? 2.0 * fc : std::sin(2.0 * kPi * fc * t) / (kPi * t);
        const double window =
            taps == 1 ? 1.0 : 0.54 - 0.46 * std::cos(2.0 * kPi * static_cast<double>(k) / static_cast<double>(taps - 1));
        h[k] = sinc * window;
    }
    const double dc = std::accumulate(h.begin(), h.end(), 0.0);
    for (double& v : h) v /= dc;
    return h;
}

double fir_gain(std::span<const double> kernel, double f)
{
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t k = 0; k < kernel.size(); ++k)
        acc += kernel[k] * std::polar(1.0, -2.0 * kPi * f * static_cast<double>(k));
    return std::abs(acc);
}

std::size_t lowpass_taps(double cutoff_hz, double fs)
{
    const double nyquist = fs / 2.0;
    if (!(cutoff_hz > 0.0)) throw std::invalid_argument("cutoff must be positive");
    if (cutoff_hz >= nyquist) throw std::invalid_argument("cutoff above Nyquist");

    const double fc = cutoff_hz / fs;
    const double pass_edge = 0.8 * cutoff_hz / fs;
    const double stop_edge = 1.5 * cutoff_hz / fs;
    constexpr int kGrid = 96;

    for (std::size_t order = 8; order <= 200000; order += 2) {
        const Waveform h = design_lowpass_kernel(fc, order + 1);
        bool ok = true;
        for (int i = 0; i <= kGrid && ok; ++i) {
            const double f = pass_edge * i / kGrid;
            if (std::abs(db(fir_gain(h, f))) > 0.5) ok = false;
        }
        if (stop_edge < 0.5) {
            for (int i = 0; i <= kGrid && ok; ++i) {
                const double f = stop_edge + (0.5 - stop_edge) * i / kGrid;
                if (db(fir_gain(h, f)) > -40.0) ok = false;
            }
        }
        if (ok) return order + 1;
        // Past a few hundred taps, step faster; the search only needs to be
        // "smallest" at the scale the analysis rate uses.
        if (order > 512) order += 2 * (order / 64);
    }
    throw std::invalid_argument("cannot design low-pass for this cutoff");
}

Channel lowpass(const Channel& ch, double cutoff_hz)
{
    if (cutoff_hz >= ch.fs / 2.0) throw std::invalid_argument("cutoff above Nyquist");
    if (ch.samples.empty()) return ch;
    const std::size_t taps = lowpass_taps(cutoff_hz, ch.fs);
    const Waveform h = design_lowpass_kernel(cutoff_hz / ch.fs, taps);
    const std::size_t half = taps / 2;
    const std::size_t n = ch.samples.size();

    Waveform padded(n + 2 * half);
    for (std::size_t i = 0; i < padded.size(); ++i)
        padded[i] = ch.samples[reflect_index(static_cast<long long>(i) - static_cast<long long>(half), n)];

    const Waveform full = convolve(padded, h);
    // Full convolution index of padded sample i's filtered value is i + half;
    // original sample j sits at padded index j + half.
    Waveform out(n);
    for (std::size_t j = 0; j < n; ++j) out[j] = full[j + 2 * half];
    return Channel(std::move(out), ch.fs, ch.label);
}

Channel resample(const Channel& ch, double target_fs)
{
    if (!(target_fs > 0.0)) throw std::invalid_argument("target rate must be positive");
    if (!(ch.fs > 0.0)) throw std::invalid_argument("source rate must be positive");
    if (target_fs == ch.fs) return ch;

    const std::size_t n = ch.samples.size();
    const auto out_len = static_cast<std::size_t>(std::llround(static_cast<double>(n) * target_fs / ch.fs));
    if (n == 0 || out_len == 0) return Channel({}, target_fs, ch.label);

    const Ratio r = rate_ratio(ch.fs, target_fs);
    const double fs_up = ch.fs * static_cast<double>(r.up);
    const double nyq = std::min(ch.fs, target_fs) / 2.0;
    const double pass_edge = 0.8 * nyq;
    const double stop_edge = 0.9 * nyq;
    auto taps = static_cast<std::size_t>(std::ceil(3.3 * fs_up / (stop_edge - pass_edge)));
    taps |= 1u;
    Waveform h = design_lowpass_kernel((pass_edge + stop_edge) / 2.0 / fs_up, taps);
    for (double& v : h) v *= static_cast<double>(r.up);

    const auto up = r.up;
    const auto down = r.down;
    const auto delay = static_cast<long long>(taps - 1) / 2;
    const auto ntaps = static_cast<long long>(taps);

    Waveform out(out_len);
    for (std::size_t m = 0; m < out_len; ++m) {
        const long long c = static_cast<long long>(m) * down + delay;
        // Input samples i contribute at upsampled position i*up, kernel tap c - i*up.
        long long i_lo = c - ntaps + 1;
        i_lo = i_lo >= 0 ? (i_lo + up - 1) / up : -((-i_lo) / up);
        const long long i_hi = c >= 0 ? c / up : -((-c + up - 1) / up);
        double acc = 0.0;
        for (long long i = i_lo; i <= i_hi; ++i)
            acc += h[static_cast<std::size_t>(c - i * up)] * ch.samples[reflect_index(i, n)];
        out[m] = acc;
    }
    return Channel(std::move(out), target_fs, ch.label);
}

Waveform hilbert_envelope(std::span<const double> x)
{
    if (x.size() < 4) throw std::invalid_argument("waveform too short for Hilbert envelope");
    const std::size_t n = x.size();
    std::vector<std::complex<double>> spec(n);
    for (std::size_t i = 0; i < n; ++i) spec[i] = {x[i], 0.0};
    detail::fft_inplace(spec, false);

    // Keep DC (and Nyquist for even n), double positive bins, drop negative.
    const std::size_t half = n / 2;
    for (std::size_t k = 1; k < n; ++k) {
        if (k < (n + 1) / 2)
            spec[k] *= 2.0;
        else if (!(n % 2 == 0 && k == half))
            spec[k] = 0.0;
    }
    detail::fft_inplace(spec, true);

    Waveform env(n);
    const double scale = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) env[i] = std::abs(spec[i]) * scale;
    return env;
}

double pearson(std::span<const double> a, std::span<const double> b)
{
    if (a.size() != b.size() || a.empty()) throw std::invalid_argument("pearson: length mismatch");
    const double n = static_cast<double>(a.size());
    const double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
    const double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double da = a[i] - ma;
        const double dbv = b[i] - mb;
        sab += da * dbv;
        saa += da * da;
        sbb += dbv * dbv;
    }
    if (saa <= 0.0 || sbb <= 0.0) throw DegenerateError("degenerate correlation");
    return sab / std::sqrt(saa * sbb);
}

namespace {

bool is_constant(std::span<const double> x)
{
    return std::all_of(x.begin(), x.end(), [&](double v) { return v == x.front(); });
}

}  // namespace

int best_lag(std::span<const double> x, std::span<const double> y, int max_lag)
{
    if (max_lag < 0) throw std::invalid_argument("max_lag must be non-negative");
    if (x.empty() || y.empty() || is_constant(x) || is_constant(y)) throw DegenerateError("degenerate correlation");

    const auto nx = static_cast<long long>(x.size());
    const auto ny = static_cast<long long>(y.size());
    double best = -std::numeric_limits<double>::infinity();
    int best_l = 0;
    bool found = false;

    // Visit 0, -1, +1, -2, +2, ... and only accept strict improvements, which
    // yields the tie-break order.
    for (int step = 0; step <= 2 * max_lag; ++step) {
        const int lag = (step == 0) ? 0 : ((step % 2 == 1) ? -(step + 1) / 2 : step / 2);
        const long long lo = std::max(0LL, -static_cast<long long>(lag));
        const long long hi = std::min(nx, ny - lag);
        if (hi - lo < 2) continue;
        const auto len = static_cast<std::size_t>(hi - lo);
        const auto xs = x.subspan(static_cast<std::size_t>(lo), len);
        const auto ys = y.subspan(static_cast<std::size_t>(lo + lag), len);
        if (is_constant(xs) || is_constant(ys)) continue;
        const double r = pearson(xs, ys);
        if (r > best) {
            best = r;
            best_l = lag;
            found = true;
        }
    }
    if (!found) throw DegenerateError("degenerate correlation");
    return best_l;
}

Waveform convolve(std::span<const double> a, std::span<const double> b)
{
    if (a.empty() || b.empty()) return {};
    const std::size_t out_len = a.size() + b.size() - 1;
    if (std::min(a.size(), b.size()) <= 16) {
        Waveform out(out_len, 0.0);
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t k = 0; k < b.size(); ++k) out[i + k] += a[i] * b[k];
        return out;
    }
    return detail::fft_convolve(a, b);
}

}  // namespace cardioseis
