#pragma once

#include "cryscreen/audio.hpp"
#include "cryscreen/matrix.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace cryscreen {

/// Front-end parameters. Serialized into feature CSV headers and model
/// files so features are reproducible.
struct FeatureConfig {
    std::size_t window_length = kDefaultWindowLength;
    /// Effective analysis rate: window samples per clip-second. No
    /// resampling happens; this only places the mel filters.
    double sample_rate_hz = 8000.0;
    std::size_t frame_len = 1024;
    std::size_t hop = 512;
    std::size_t n_filters = 24;
    std::size_t n_coeffs = 12;
    double alpha = 0.97;
    double floor = 1e-10;
    double f_low_hz = 0.0;
    /// 0 means Nyquist.
    double f_high_hz = 0.0;

    [[nodiscard]] std::size_t frame_count() const;
    [[nodiscard]] std::size_t dimension() const { return frame_count() * n_coeffs; }

    /// Throws Error(Configuration) on inconsistent parameters.
    void validate() const;

    friend bool operator==(const FeatureConfig&, const FeatureConfig&) = default;
};

struct FrameSeries {
    std::vector<std::vector<double>> frames;
    std::size_t hop = 0;
};

struct MelFilterbank {
    std::size_t n_filters = 0;
    std::size_t n_bins = 0;
    double f_low_hz = 0.0;
    double f_high_hz = 0.0;
    std::vector<double> centers_hz;
    /// n_filters x n_bins triangle weights.
    Matrix weights;
};

/// A frame_count x n_coeffs cepstral matrix.
struct MfccMatrix {
    Matrix coefficients;

    /// Frame-major flattening.
    [[nodiscard]] std::vector<double> flatten() const { return coefficients.data(); }
};

struct FeatureVector {
    std::vector<double> values;
};

double hz_to_mel(double hz) noexcept;
double mel_to_hz(double mel) noexcept;

SampleVector pre_emphasize(const SampleVector& x, double alpha);

FrameSeries frame_signal(std::span<const double> x, std::size_t frame_len, std::size_t hop);

/// Hamming window, w[i] = 0.54 - 0.46 cos(2 pi i / (L - 1)).
std::vector<double> hamming_window(std::size_t length);
std::vector<double> apply_window(std::span<const double> frame);

/// One-sided magnitude spectrum, L/2 + 1 bins.
std::vector<double> fft_magnitude(std::span<const double> frame);

MelFilterbank make_mel_filterbank(std::size_t n_filters, std::size_t fft_len, double sample_rate_hz,
                                  double f_low_hz = 0.0, double f_high_hz = 0.0);

/// Weighted power per filter, floored at `floor`.
std::vector<double> mel_energies(std::span<const double> spectrum, const MelFilterbank& bank,
                                 double floor = 1e-10);

/// Orthonormal DCT-II coefficients 1..n_coeffs; the 0th (energy) term is dropped.
std::vector<double> dct_cepstrum(std::span<const double> log_energies, std::size_t n_coeffs = 12);

/// Reusable front end: filterbank, window and DCT table built once.
class FeatureExtractor {
public:
    explicit FeatureExtractor(FeatureConfig config);

    [[nodiscard]] const FeatureConfig& config() const noexcept { return config_; }
    [[nodiscard]] const MelFilterbank& filterbank() const noexcept { return bank_; }

    [[nodiscard]] MfccMatrix mfcc(const SampleVector& x) const;
    [[nodiscard]] FeatureVector extract(const SampleVector& x) const;

private:
    [[nodiscard]] std::vector<double> cepstrum(std::span<const double> log_energies) const;

    FeatureConfig config_;
    MelFilterbank bank_;
    std::vector<double> window_;
    Matrix dct_;  // n_coeffs x n_filters basis rows 1..n_coeffs
};

FeatureVector extract_features(const SampleVector& x, const FeatureConfig& config = {});

}  // namespace cryscreen
