#pragma once

// Independent reference computations used only by tests. Nothing here calls
// into the library's DSP paths.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

using Vec = std::vector<double>;

inline Vec brute_convolve(const Vec& a, const Vec& b)
{
    Vec out(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < b.size(); ++k) out[i + k] += a[i] * b[k];
    return out;
}

inline double brute_rms(const Vec& x)
{
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::sqrt(s / static_cast<double>(x.size()));
}

inline double brute_pearson(const double* a, const double* b, std::size_t n)
{
    double ma = 0.0, mb = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= static_cast<double>(n);
    mb /= static_cast<double>(n);
    double ab = 0.0, aa = 0.0, bb = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        ab += (a[i] - ma) * (b[i] - mb);
        aa += (a[i] - ma) * (a[i] - ma);
        bb += (b[i] - mb) * (b[i] - mb);
    }
    return ab / std::sqrt(aa * bb);
}

/// Exhaustive lag search with the documented tie-break (smaller |lag|, then
/// negative), scanning lags in plain ascending order.
inline int brute_best_lag(const Vec& x, const Vec& y, int max_lag)
{
    double best = -std::numeric_limits<double>::infinity();
    int best_lag = 0;
    for (int lag = -max_lag; lag <= max_lag; ++lag) {
        const long long lo = std::max(0, -lag);
        const long long hi = std::min<long long>(static_cast<long long>(x.size()), static_cast<long long>(y.size()) - lag);
        if (hi - lo < 2) continue;
        const double r = brute_pearson(x.data() + lo, y.data() + lo + lag, static_cast<std::size_t>(hi - lo));
        const bool better = r > best || (r == best && (std::abs(lag) < std::abs(best_lag) ||
                                                       (std::abs(lag) == std::abs(best_lag) && lag < best_lag)));
        if (better) {
            best = r;
            best_lag = lag;
        }
    }
    return best_lag;
}

inline Vec sine(double freq, double fs, std::size_t n, double amp = 1.0, double phase = 0.0)
{
    Vec v(n);
    for (std::size_t i = 0; i < n; ++i)
        v[i] = amp * std::sin(2.0 * std::numbers::pi * freq * static_cast<double>(i) / fs + phase);
    return v;
}

inline Vec gaussian_noise(std::size_t n, double sd, unsigned seed)
{
    std::mt19937 rng(seed);
    std::normal_distribution<double> g(0.0, sd);
    Vec v(n);
    for (auto& x : v) x = g(rng);
    return v;
}

/// RMS over samples [from, to).
inline double rms_range(const Vec& x, std::size_t from, std::size_t to)
{
    double s = 0.0;
    for (std::size_t i = from; i < to; ++i) s += x[i] * x[i];
    return std::sqrt(s / static_cast<double>(to - from));
}

inline double db(double ratio) { return 20.0 * std::log10(ratio); }

}  // namespace oracle
