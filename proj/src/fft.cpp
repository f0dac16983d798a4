#include "cryscreen/fft.hpp"

#include "cryscreen/error.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

namespace cryscreen {

void fft_inplace(std::span<std::complex<double>> data) {
    const std::size_t n = data.size();
    if (!is_power_of_two(n)) {
        throw Error(ErrorKind::Configuration,
                    "FFT length " + std::to_string(n) + " is not a power of two");
    }

    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(data[i], data[j]);
    }

    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t half = len / 2;
        const double step = -2.0 * std::numbers::pi / static_cast<double>(len);
        for (std::size_t k = 0; k < half; ++k) {
            // twiddles evaluated directly rather than by recurrence; keeps the
            // error at the 1e-12 level for L = 1024
            const std::complex<double> w = std::polar(1.0, step * static_cast<double>(k));
            for (std::size_t start = 0; start < n; start += len) {
                const std::complex<double> u = data[start + k];
                const std::complex<double> v = data[start + k + half] * w;
                data[start + k] = u + v;
                data[start + k + half] = u - v;
            }
        }
    }
}

std::vector<std::complex<double>> fft_real(std::span<const double> frame) {
    std::vector<std::complex<double>> buf(frame.begin(), frame.end());
    fft_inplace(buf);
    return buf;
}

}  // namespace cryscreen
