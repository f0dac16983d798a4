#include "cryscreen/simd.hpp"

#include <cstddef>

namespace cryscreen::simd::scalar {

// Four interleaved accumulators, combined pairwise, so the summation order
// matches the AVX2 lanes and both backends round identically.

double dot(const double* a, const double* b, std::size_t n) noexcept {
    double acc[4] = {0.0, 0.0, 0.0, 0.0};
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        for (std::size_t k = 0; k < 4; ++k) {
            acc[k] += a[i + k] * b[i + k];
        }
    }
    double sum = (acc[0] + acc[2]) + (acc[1] + acc[3]);
    for (; i < n; ++i) {
        sum += a[i] * b[i];
    }
    return sum;
}

double squared_distance(const double* a, const double* b, std::size_t n) noexcept {
    double acc[4] = {0.0, 0.0, 0.0, 0.0};
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        for (std::size_t k = 0; k < 4; ++k) {
            const double d = a[i + k] - b[i + k];
            acc[k] += d * d;
        }
    }
    double sum = (acc[0] + acc[2]) + (acc[1] + acc[3]);
    for (; i < n; ++i) {
        const double d = a[i] - b[i];
        sum += d * d;
    }
    return sum;
}

}  // namespace cryscreen::simd::scalar
