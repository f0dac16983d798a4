#pragma once

// Data-parallel inner loops. Each primitive has a scalar reference
// implementation and an AVX2+FMA variant; the variant is chosen once at
// first use from the running CPU and may be overridden (tests, or the
// CRYSCREEN_SIMD=scalar environment variable).

#include <span>
#include <string_view>

namespace cryscreen::simd {

enum class Backend { Scalar, Avx2 };

std::string_view to_string(Backend b) noexcept;

/// True when the CPU and the build both support the backend.
bool available(Backend b) noexcept;

Backend active() noexcept;

/// Forces a backend. Falls back to Scalar if `b` is unavailable and
/// returns the backend actually installed.
Backend select(Backend b) noexcept;

double dot(std::span<const double> a, std::span<const double> b) noexcept;
double squared_distance(std::span<const double> a, std::span<const double> b) noexcept;

namespace scalar {
double dot(const double* a, const double* b, std::size_t n) noexcept;
double squared_distance(const double* a, const double* b, std::size_t n) noexcept;
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
double dot(const double* a, const double* b, std::size_t n) noexcept;
double squared_distance(const double* a, const double* b, std::size_t n) noexcept;
}  // namespace avx2
#endif

}  // namespace cryscreen::simd
