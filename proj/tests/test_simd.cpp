#include "cryscreen/random.hpp"
#include "cryscreen/simd.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

using namespace cryscreen;

namespace {

std::vector<double> random_vector(Rng& rng, std::size_t n, double scale) {
    std::vector<double> v(n);
    for (double& e : v) e = rng.uniform(-scale, scale);
    return v;
}

// Restores the process-wide backend after each test.
class SimdTest : public ::testing::Test {
protected:
    void TearDown() override { simd::select(saved_); }
    simd::Backend saved_ = simd::active();
};

}  // namespace

TEST_F(SimdTest, ScalarMatchesNaiveLoop) {
    Rng rng(1);
    for (std::size_t n : {0u, 1u, 3u, 4u, 7u, 168u, 513u}) {
        const auto a = random_vector(rng, n, 2.0);
        const auto b = random_vector(rng, n, 2.0);
        long double dot = 0.0L, dist = 0.0L;
        for (std::size_t i = 0; i < n; ++i) {
            dot += static_cast<long double>(a[i]) * b[i];
            dist += (static_cast<long double>(a[i]) - b[i]) * (static_cast<long double>(a[i]) - b[i]);
        }
        EXPECT_NEAR(simd::scalar::dot(a.data(), b.data(), n), static_cast<double>(dot), 1e-12 * (1.0 + n));
        EXPECT_NEAR(simd::scalar::squared_distance(a.data(), b.data(), n), static_cast<double>(dist),
                    1e-12 * (1.0 + n));
    }
}

#if defined(CRYSCREEN_HAVE_AVX2)
TEST_F(SimdTest, Avx2MatchesScalarReference) {
    if (!simd::available(simd::Backend::Avx2)) GTEST_SKIP() << "CPU lacks AVX2/FMA";
    Rng rng(2);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t n = rng.below(600);
        const auto a = random_vector(rng, n, 10.0);
        const auto b = random_vector(rng, n, 10.0);
        const double sd = simd::scalar::dot(a.data(), b.data(), n);
        const double vd = simd::avx2::dot(a.data(), b.data(), n);
        double mag = 0.0;
        for (std::size_t i = 0; i < n; ++i) mag += std::abs(a[i] * b[i]);
        EXPECT_NEAR(sd, vd, 1e-14 * (mag + 1.0)) << "n=" << n;

        const double ss = simd::scalar::squared_distance(a.data(), b.data(), n);
        const double vs = simd::avx2::squared_distance(a.data(), b.data(), n);
        EXPECT_NEAR(ss, vs, 1e-14 * (ss + 1.0)) << "n=" << n;
    }
}
#endif

TEST_F(SimdTest, DispatchIsSelectableAndCommutative) {
    Rng rng(3);
    const auto a = random_vector(rng, 168, 1.0);
    const auto b = random_vector(rng, 168, 1.0);
    for (const auto backend : {simd::Backend::Scalar, simd::Backend::Avx2}) {
        const auto got = simd::select(backend);
        if (simd::available(backend)) {
            EXPECT_EQ(got, backend);
        } else {
            EXPECT_EQ(got, simd::Backend::Scalar);
        }
        EXPECT_EQ(simd::active(), got);
        EXPECT_EQ(simd::dot(a, b), simd::dot(b, a));
        EXPECT_EQ(simd::squared_distance(a, b), simd::squared_distance(b, a));
    }
}
