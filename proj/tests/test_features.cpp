#include "cryscreen/error.hpp"
#include "cryscreen/features.hpp"
#include "cryscreen/fft.hpp"
#include "cryscreen/random.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

using namespace cryscreen;

namespace {

std::vector<double> random_signal(Rng& rng, std::size_t n) {
    std::vector<double> v(n);
    for (double& e : v) e = rng.uniform(-1.0, 1.0);
    return v;
}

template <class F>
void expect_config_error(F&& f) {
    try {
        f();
        FAIL() << "expected a configuration error";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Configuration) << e.what();
    }
}

}  // namespace

TEST(PreEmphasize, Examples) {
    const auto y = pre_emphasize(SampleVector{{1, 1, 1}}, 0.97).values;
    ASSERT_EQ(y.size(), 3u);
    EXPECT_EQ(y[0], 1.0);
    EXPECT_NEAR(y[1], 0.03, 1e-15);
    EXPECT_NEAR(y[2], 0.03, 1e-15);

    const auto z = pre_emphasize(SampleVector{{1, 0, 0}}, 0.97).values;
    EXPECT_EQ(z[0], 1.0);
    EXPECT_EQ(z[1], -0.97);
    EXPECT_EQ(z[2], 0.0);

    Rng rng(1);
    const SampleVector x{random_signal(rng, 50)};
    EXPECT_EQ(pre_emphasize(x, 0.0).values, x.values);
    expect_config_error([] { pre_emphasize(SampleVector{}, 0.5); });
}

TEST(FrameSignal, Counts) {
    const std::vector<double> x(8000, 1.0);
    EXPECT_EQ(frame_signal(x, 1024, 512).frames.size(), 14u);
    EXPECT_EQ(frame_signal(x, 8000, 1).frames.size(), 1u);

    Rng rng(2);
    const auto y = random_signal(rng, 1024);
    const auto single = frame_signal(y, 1024, 512);
    ASSERT_EQ(single.frames.size(), 1u);
    EXPECT_EQ(single.frames[0], y);

    expect_config_error([&] { frame_signal(y, 2048, 512); });
    expect_config_error([&] { frame_signal(y, 512, 0); });
}

TEST(FrameSignal, FrameContentsAndCountFormula) {
    std::vector<double> x(3000);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = static_cast<double>(i);
    for (const auto [len, hop] : {std::pair{256u, 128u}, {1000u, 333u}, {64u, 64u}}) {
        const auto fs = frame_signal(x, len, hop);
        EXPECT_EQ(fs.frames.size(), (x.size() - len) / hop + 1);
        for (std::size_t j = 0; j < fs.frames.size(); ++j) {
            EXPECT_EQ(fs.frames[j].front(), static_cast<double>(j * hop));
            EXPECT_EQ(fs.frames[j].back(), static_cast<double>(j * hop + len - 1));
        }
    }
}

TEST(ApplyWindow, Hamming) {
    const auto w = apply_window(std::vector<double>{1, 1, 1});
    EXPECT_NEAR(w[0], 0.08, 1e-15);
    EXPECT_NEAR(w[1], 1.0, 1e-15);
    EXPECT_NEAR(w[2], 0.08, 1e-15);

    const auto zero = apply_window(std::vector<double>(16, 0.0));
    for (double v : zero) EXPECT_EQ(v, 0.0);

    Rng rng(3);
    const auto frame = random_signal(rng, 1024);
    double peak = 0.0;
    for (double v : frame) peak = std::max(peak, std::abs(v));
    const auto out = apply_window(frame);
    EXPECT_LE(std::abs(out.front()), 0.08 * peak + 1e-15);
    EXPECT_LE(std::abs(out.back()), 0.08 * peak + 1e-15);
}

TEST(FftMagnitude, ImpulseIsFlat) {
    std::vector<double> x(1024, 0.0);
    x[0] = 1.0;
    const auto mag = fft_magnitude(x);
    ASSERT_EQ(mag.size(), 513u);
    for (double m : mag) EXPECT_NEAR(m, 1.0, 1e-12);
}

TEST(FftMagnitude, CosineAtBin) {
    const std::size_t n = 1024;
    for (std::size_t k : {1u, 37u, 100u, 511u}) {
        std::vector<double> x(n);
        for (std::size_t t = 0; t < n; ++t) {
            x[t] = std::cos(2.0 * std::numbers::pi * static_cast<double>(k * t) / static_cast<double>(n));
        }
        const auto mag = fft_magnitude(x);
        for (std::size_t b = 0; b < mag.size(); ++b) {
            EXPECT_NEAR(mag[b], b == k ? n / 2.0 : 0.0, 1e-9) << "k=" << k << " bin=" << b;
        }
    }
}

TEST(FftMagnitude, MatchesNaiveDft) {
    Rng rng(4);
    for (std::size_t n : {2u, 8u, 64u, 1024u}) {
        for (int trial = 0; trial < 5; ++trial) {
            const auto x = random_signal(rng, n);
            const auto fast = fft_magnitude(x);
            const auto slow = oracle::naive_dft_magnitude(x);
            for (std::size_t k = 0; k < fast.size(); ++k) EXPECT_NEAR(fast[k], slow[k], 1e-9);
        }
    }
}

TEST(FftMagnitude, Parseval) {
    Rng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const auto x = random_signal(rng, 1024);
        const auto full = fft_real(x);
        double time = 0.0, freq = 0.0;
        for (double v : x) time += v * v;
        for (const auto& c : full) freq += std::norm(c);
        EXPECT_LE(std::abs(freq - 1024.0 * time) / (1024.0 * time), 1e-9);
    }
}

TEST(FftMagnitude, RejectsNonPowerOfTwo) {
    expect_config_error([] { fft_magnitude(std::vector<double>(1000, 0.0)); });
    expect_config_error([] { fft_magnitude(std::vector<double>{}); });
}

TEST(MelFilterbank, MelScale) {
    EXPECT_NEAR(hz_to_mel(700.0), 781.1728387480312, 1e-9);
    EXPECT_NEAR(mel_to_hz(hz_to_mel(1234.5)), 1234.5, 1e-9);
}

TEST(MelFilterbank, Geometry) {
    const auto bank = make_mel_filterbank(24, 1024, 8000.0);
    ASSERT_EQ(bank.weights.rows(), 24u);
    ASSERT_EQ(bank.weights.cols(), 513u);
    EXPECT_EQ(bank.f_high_hz, 4000.0);

    const double step = hz_to_mel(bank.centers_hz[1]) - hz_to_mel(bank.centers_hz[0]);
    EXPECT_NEAR(step, hz_to_mel(4000.0) / 25.0, 1e-9);
    for (std::size_t m = 0; m < 24; ++m) {
        if (m > 0) {
            EXPECT_NEAR(hz_to_mel(bank.centers_hz[m]) - hz_to_mel(bank.centers_hz[m - 1]), step, 1e-9);
        }
        const auto row = bank.weights.row(m);
        double best = -1.0;
        std::size_t best_bin = 0;
        for (std::size_t k = 0; k < row.size(); ++k) {
            EXPECT_GE(row[k], 0.0);
            EXPECT_LE(row[k], 1.0);
            if (row[k] > best) {
                best = row[k];
                best_bin = k;
            }
        }
        EXPECT_GT(best, 0.0);
        // the peak sits on the bin nearest the centre frequency
        const double bin_hz = 8000.0 / 1024.0;
        EXPECT_LE(std::abs(best_bin * bin_hz - bank.centers_hz[m]), bin_hz);
    }
}

TEST(MelEnergies, FloorAndExclusiveRegion) {
    const auto bank = make_mel_filterbank(24, 1024, 8000.0);
    const auto floor_only = mel_energies(std::vector<double>(513, 0.0), bank);
    for (double e : floor_only) EXPECT_EQ(e, 1e-10);

    // bin 1 (7.8 Hz) lies below the first centre, covered by filter 0 only
    ASSERT_LT(8000.0 / 1024.0, bank.centers_hz[0]);
    std::vector<double> spectrum(513, 0.0);
    spectrum[1] = 3.0;
    const auto e = mel_energies(spectrum, bank);
    EXPECT_GT(e[0], 1e-10);
    EXPECT_NEAR(e[0], bank.weights(0, 1) * 9.0, 1e-15);
    for (std::size_t m = 1; m < e.size(); ++m) EXPECT_EQ(e[m], 1e-10);

    expect_config_error([&] { mel_energies(std::vector<double>(100, 0.0), bank); });
}

TEST(DctCepstrum, ConstantGivesZero) {
    const auto c = dct_cepstrum(std::vector<double>(24, -23.025850929940457), 12);
    ASSERT_EQ(c.size(), 12u);
    for (double v : c) EXPECT_EQ(v, 0.0);
}

TEST(DctCepstrum, MatchesDirectSummation) {
    Rng rng(6);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<double> x(24);
        for (double& v : x) v = rng.uniform(-30.0, 5.0);
        const auto fast = dct_cepstrum(x, 12);
        const auto slow = oracle::direct_dct2(x, 12);
        for (std::size_t k = 0; k < 12; ++k) EXPECT_NEAR(fast[k], slow[k], 1e-9);
    }
}

TEST(DctCepstrum, AlternatingInput) {
    std::vector<double> x(24);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = i % 2 == 0 ? 1.0 : -1.0;
    auto argmax = [](const std::vector<double>& c) {
        std::size_t best = 0;
        for (std::size_t k = 1; k < c.size(); ++k) {
            if (std::abs(c[k]) > std::abs(c[best])) best = k;
        }
        return best + 1;  // coefficient order
    };
    // oracle values: over 1..23 the top order (23) dominates; within the
    // retained 1..12 the even orders vanish and order 11 is largest
    EXPECT_EQ(argmax(dct_cepstrum(x, 23)), 23u);
    EXPECT_EQ(argmax(dct_cepstrum(x, 12)), 11u);
    EXPECT_NEAR(dct_cepstrum(x, 23)[22], 4.413782, 1e-6);
}

TEST(DctCepstrum, RejectsTooManyCoefficients) {
    expect_config_error([] { dct_cepstrum(std::vector<double>(10, 1.0), 11); });
}

TEST(ExtractFeatures, ShapeChain) {
    const FeatureConfig config;
    EXPECT_EQ(config.frame_count(), 14u);
    EXPECT_EQ(config.dimension(), 168u);

    Rng rng(7);
    const SampleVector x{random_signal(rng, 8000)};
    const FeatureExtractor fx(config);
    const auto mfcc = fx.mfcc(x);
    EXPECT_EQ(mfcc.coefficients.rows(), 14u);
    EXPECT_EQ(mfcc.coefficients.cols(), 12u);
    const auto v = fx.extract(x);
    ASSERT_EQ(v.values.size(), 168u);
    // frame-major: element f*12 + k is frame f, coefficient k+1
    EXPECT_EQ(v.values[5 * 12 + 3], mfcc.coefficients(5, 3));
}

TEST(ExtractFeatures, ZeroSignalGivesZeroVector) {
    const auto v = extract_features(SampleVector{std::vector<double>(8000, 0.0)});
    ASSERT_EQ(v.values.size(), 168u);
    for (double e : v.values) EXPECT_EQ(e, 0.0);
}

TEST(ExtractFeatures, Deterministic) {
    Rng rng(8);
    const SampleVector x{random_signal(rng, 8000)};
    EXPECT_EQ(extract_features(x).values, extract_features(x).values);
}

TEST(ExtractFeatures, GainOnlyMovesDiscardedTerm) {
    Rng rng(9);
    const SampleVector x{random_signal(rng, 8000)};
    SampleVector scaled = x;
    for (double& v : scaled.values) v *= 0.25;
    const auto a = extract_features(x).values;
    const auto b = extract_features(scaled).values;
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], 1e-9);
}

TEST(ExtractFeatures, MatchesStagewiseComposition) {
    Rng rng(10);
    const SampleVector x{random_signal(rng, 8000)};
    const FeatureConfig config;
    const auto bank = make_mel_filterbank(config.n_filters, config.frame_len, config.sample_rate_hz);
    const auto frames = frame_signal(pre_emphasize(x, config.alpha).values, config.frame_len, config.hop);
    std::vector<double> expected;
    for (const auto& frame : frames.frames) {
        auto e = mel_energies(fft_magnitude(apply_window(frame)), bank, config.floor);
        for (double& v : e) v = std::log(v);
        const auto c = dct_cepstrum(e, config.n_coeffs);
        expected.insert(expected.end(), c.begin(), c.end());
    }
    const auto got = extract_features(x, config).values;
    ASSERT_EQ(got.size(), expected.size());
    for (std::size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], expected[i], 1e-12);
}

TEST(FeatureConfig, Validation) {
    FeatureConfig c;
    c.frame_len = 1000;
    expect_config_error([&] { c.validate(); });
    c = FeatureConfig{};
    c.n_coeffs = 30;
    expect_config_error([&] { c.validate(); });
    c = FeatureConfig{};
    c.alpha = 1.0;
    expect_config_error([&] { c.validate(); });
    c = FeatureConfig{};
    c.frame_len = 16384;
    expect_config_error([&] { c.validate(); });
}
