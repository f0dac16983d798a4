#pragma once

#include <complex>
#include <span>
#include <vector>

namespace cryscreen {

[[nodiscard]] constexpr bool is_power_of_two(std::size_t n) noexcept {
    return n != 0 && (n & (n - 1)) == 0;
}

/// In-place iterative radix-2 decimation-in-time FFT (forward, unnormalized).
/// Throws Error(Configuration) unless the length is a power of two.
void fft_inplace(std::span<std::complex<double>> data);

/// Full two-sided transform of a real frame.
std::vector<std::complex<double>> fft_real(std::span<const double> frame);

}  // namespace cryscreen
