#pragma once

#include <complex>
#include <span>
#include <vector>

namespace cardioseis::detail {

/// In-place complex DFT (unnormalized in both directions).
void fft_inplace(std::vector<std::complex<double>>& data, bool inverse);

/// Full linear convolution through zero-padded real DFTs.
std::vector<double> fft_convolve(std::span<const double> a, std::span<const double> b);

}  // namespace cardioseis::detail
