#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace cardioseis {

using Waveform = std::vector<double>;

/// Uniformly sampled real-valued signal.
struct Channel {
    Waveform samples;
    double fs = 0.0;  // Hz
    std::string label;

    Channel() = default;
    Channel(Waveform s, double rate, std::string name = {});

    std::size_t size() const { return samples.size(); }
    double duration() const { return static_cast<double>(samples.size()) / fs; }
};

/// Throws InputError if fs <= 0 or any sample is NaN/Inf.
void validate(const Channel& ch);

double rms(std::span<const double> x);

/// Zero-phase windowed-sinc (Hamming) low-pass. Output has the same length
/// and rate as the input.
Channel lowpass(const Channel& ch, double cutoff_hz);

/// Hamming windowed-sinc kernel for the given normalized cutoff
/// (cycles/sample, 0 < fc < 0.5). Length is taps (odd), unit DC gain.
Waveform design_lowpass_kernel(double fc, std::size_t taps);

/// Number of taps lowpass() will use for this cutoff and rate.
std::size_t lowpass_taps(double cutoff_hz, double fs);

/// Magnitude response of a real FIR kernel at normalized frequency f.
double fir_gain(std::span<const double> kernel, double f);

/// Rational polyphase resampling with anti-alias filtering.
/// Output length = round(len * target_fs / fs).
Channel resample(const Channel& ch, double target_fs);

/// |analytic signal|, computed via DFT.
Waveform hilbert_envelope(std::span<const double> x);

/// Lag in [-max_lag, max_lag] maximizing the Pearson correlation between
/// x[n] and y[n + lag] over their overlap. A positive result means y is x
/// delayed. Ties go to smaller |lag|, then to the negative lag.
int best_lag(std::span<const double> x, std::span<const double> y, int max_lag);

/// Pearson correlation of two equal-length segments. Throws
/// DegenerateError if either has zero variance.
double pearson(std::span<const double> a, std::span<const double> b);

/// Full linear convolution (length a.size() + b.size() - 1).
Waveform convolve(std::span<const double> a, std::span<const double> b);

}  // namespace cardioseis
