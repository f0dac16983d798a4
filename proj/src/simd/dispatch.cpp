#include "cryscreen/simd.hpp"

#include <atomic>
#include <cstdlib>
#include <string_view>

namespace cryscreen::simd {

namespace {

using KernelFn = double (*)(const double*, const double*, std::size_t) noexcept;

struct Table {
    KernelFn dot;
    KernelFn squared_distance;
};

constexpr Table kScalar{&scalar::dot, &scalar::squared_distance};
#if defined(CRYSCREEN_HAVE_AVX2)
constexpr Table kAvx2{&avx2::dot, &avx2::squared_distance};
#endif

const Table* table_for(Backend b) noexcept {
#if defined(CRYSCREEN_HAVE_AVX2)
    if (b == Backend::Avx2) return &kAvx2;
#endif
    (void)b;
    return &kScalar;
}

Backend detect() noexcept {
    if (const char* env = std::getenv("CRYSCREEN_SIMD"); env != nullptr) {
        if (std::string_view(env) == "scalar") return Backend::Scalar;
    }
    return available(Backend::Avx2) ? Backend::Avx2 : Backend::Scalar;
}

struct State {
    std::atomic<Backend> backend{detect()};
    std::atomic<const Table*> table{table_for(backend.load())};
};

State& state() noexcept {
    static State s;
    return s;
}

}  // namespace

std::string_view to_string(Backend b) noexcept {
    switch (b) {
        case Backend::Scalar: return "scalar";
        case Backend::Avx2: return "avx2";
    }
    return "unknown";
}

bool available(Backend b) noexcept {
    switch (b) {
        case Backend::Scalar: return true;
        case Backend::Avx2:
#if defined(CRYSCREEN_HAVE_AVX2)
            return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
            return false;
#endif
    }
    return false;
}

Backend active() noexcept { return state().backend.load(); }

Backend select(Backend b) noexcept {
    if (!available(b)) b = Backend::Scalar;
    state().backend.store(b);
    state().table.store(table_for(b));
    return b;
}

double dot(std::span<const double> a, std::span<const double> b) noexcept {
    return state().table.load(std::memory_order_relaxed)->dot(a.data(), b.data(), a.size());
}

double squared_distance(std::span<const double> a, std::span<const double> b) noexcept {
    return state().table.load(std::memory_order_relaxed)
        ->squared_distance(a.data(), b.data(), a.size());
}

}  // namespace cryscreen::simd
