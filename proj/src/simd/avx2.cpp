// Compiled with -mavx2 -mfma; only entered after a runtime CPU check.

#include "cryscreen/simd.hpp"

#include <immintrin.h>

#include <cstddef>

namespace cryscreen::simd::avx2 {

namespace {

inline double horizontal_sum(__m256d v) noexcept {
    // (l0 + l2) + (l1 + l3), the same order as the scalar reference
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d pair = _mm_add_pd(lo, hi);
    const __m128d swapped = _mm_unpackhi_pd(pair, pair);
    return _mm_cvtsd_f64(_mm_add_sd(pair, swapped));
}

}  // namespace

double dot(const double* a, const double* b, std::size_t n) noexcept {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc);
    }
    double sum = horizontal_sum(acc);
    for (; i < n; ++i) {
        sum += a[i] * b[i];
    }
    return sum;
}

double squared_distance(const double* a, const double* b, std::size_t n) noexcept {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        acc = _mm256_fmadd_pd(d, d, acc);
    }
    double sum = horizontal_sum(acc);
    for (; i < n; ++i) {
        const double d = a[i] - b[i];
        sum += d * d;
    }
    return sum;
}

}  // namespace cryscreen::simd::avx2
