#include "cryscreen/features.hpp"

#include "cryscreen/error.hpp"
#include "cryscreen/fft.hpp"
#include "cryscreen/simd.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <string>

namespace cryscreen {

namespace {

[[noreturn]] void config_error(const std::string& msg) {
    throw Error(ErrorKind::Configuration, msg);
}

// Rows k = 1..n_coeffs of the orthonormal DCT-II basis of size n.
Matrix dct_basis(std::size_t n, std::size_t n_coeffs) {
    Matrix basis(n_coeffs, n);
    const double scale = std::sqrt(2.0 / static_cast<double>(n));
    for (std::size_t k = 1; k <= n_coeffs; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            const double arg = std::numbers::pi * static_cast<double>(k) *
                               (2.0 * static_cast<double>(i) + 1.0) / (2.0 * static_cast<double>(n));
            basis(k - 1, i) = scale * std::cos(arg);
        }
    }
    return basis;
}

// Basis rows k >= 1 are orthogonal to constants, so the input is centered
// first. Any constant offset is a no-op for k >= 1; subtracting x[0] rather
// than the mean makes a flat log spectrum come out as exact zeros.
std::vector<double> project_centered(std::span<const double> x, const Matrix& basis) {
    const double pivot = x.front();
    std::vector<double> centered(x.begin(), x.end());
    for (double& v : centered) v -= pivot;
    std::vector<double> out(basis.rows());
    for (std::size_t k = 0; k < basis.rows(); ++k) {
        out[k] = simd::dot(basis.row(k), centered);
    }
    return out;
}

}  // namespace

std::size_t FeatureConfig::frame_count() const {
    if (frame_len == 0 || hop == 0 || frame_len > window_length) return 0;
    return (window_length - frame_len) / hop + 1;
}

void FeatureConfig::validate() const {
    if (window_length == 0) config_error("window length must be positive");
    if (!(sample_rate_hz > 0.0)) config_error("sample rate must be positive");
    if (frame_len < 2 || !is_power_of_two(frame_len)) {
        config_error("frame length " + std::to_string(frame_len) + " must be a power of two >= 2");
    }
    if (frame_len > window_length) config_error("frame length exceeds window length");
    if (hop == 0) config_error("hop must be positive");
    if (n_filters == 0) config_error("need at least one mel filter");
    if (n_coeffs == 0 || n_coeffs > n_filters) {
        config_error("n_coeffs must lie in [1, n_filters]");
    }
    if (!(alpha >= 0.0 && alpha < 1.0)) config_error("pre-emphasis alpha must lie in [0, 1)");
    if (!(floor > 0.0)) config_error("energy floor must be positive");
}

double hz_to_mel(double hz) noexcept { return 2595.0 * std::log10(1.0 + hz / 700.0); }

double mel_to_hz(double mel) noexcept { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

SampleVector pre_emphasize(const SampleVector& x, double alpha) {
    if (x.values.empty()) config_error("pre-emphasis of an empty signal");
    SampleVector y;
    y.values.resize(x.values.size());
    y.values[0] = x.values[0];
    for (std::size_t i = 1; i < x.values.size(); ++i) {
        y.values[i] = x.values[i] - alpha * x.values[i - 1];
    }
    return y;
}

FrameSeries frame_signal(std::span<const double> x, std::size_t frame_len, std::size_t hop) {
    if (hop == 0) config_error("hop must be positive");
    if (frame_len == 0 || frame_len > x.size()) {
        config_error("frame length " + std::to_string(frame_len) + " does not fit signal of length " +
                     std::to_string(x.size()));
    }
    FrameSeries out;
    out.hop = hop;
    for (std::size_t start = 0; start + frame_len <= x.size(); start += hop) {
        out.frames.emplace_back(x.begin() + static_cast<std::ptrdiff_t>(start),
                                x.begin() + static_cast<std::ptrdiff_t>(start + frame_len));
    }
    return out;
}

std::vector<double> hamming_window(std::size_t length) {
    if (length < 2) config_error("window length must be at least 2");
    std::vector<double> w(length);
    const double denom = static_cast<double>(length - 1);
    for (std::size_t i = 0; i < length; ++i) {
        w[i] = 0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) / denom);
    }
    return w;
}

std::vector<double> apply_window(std::span<const double> frame) {
    const auto w = hamming_window(frame.size());
    std::vector<double> out(frame.size());
    std::transform(frame.begin(), frame.end(), w.begin(), out.begin(), std::multiplies<>());
    return out;
}

std::vector<double> fft_magnitude(std::span<const double> frame) {
    const auto full = fft_real(frame);
    std::vector<double> mag(frame.size() / 2 + 1);
    for (std::size_t k = 0; k < mag.size(); ++k) mag[k] = std::abs(full[k]);
    return mag;
}

MelFilterbank make_mel_filterbank(std::size_t n_filters, std::size_t fft_len, double sample_rate_hz,
                                  double f_low_hz, double f_high_hz) {
    const double nyquist = sample_rate_hz / 2.0;
    if (f_high_hz <= 0.0) f_high_hz = nyquist;
    if (n_filters == 0) config_error("need at least one mel filter");
    if (!(f_low_hz >= 0.0 && f_low_hz < f_high_hz && f_high_hz <= nyquist)) {
        config_error("mel band edges must satisfy 0 <= f_low < f_high <= Nyquist");
    }

    MelFilterbank bank;
    bank.n_filters = n_filters;
    bank.n_bins = fft_len / 2 + 1;
    bank.f_low_hz = f_low_hz;
    bank.f_high_hz = f_high_hz;
    bank.weights = Matrix(n_filters, bank.n_bins);

    // n_filters + 2 edge points, uniform in mel
    const double mel_lo = hz_to_mel(f_low_hz);
    const double mel_hi = hz_to_mel(f_high_hz);
    std::vector<double> edges(n_filters + 2);
    for (std::size_t i = 0; i < edges.size(); ++i) {
        edges[i] = mel_to_hz(mel_lo + (mel_hi - mel_lo) * static_cast<double>(i) /
                                          static_cast<double>(n_filters + 1));
    }

    const double bin_hz = sample_rate_hz / static_cast<double>(fft_len);
    for (std::size_t m = 0; m < n_filters; ++m) {
        const double left = edges[m];
        const double center = edges[m + 1];
        const double right = edges[m + 2];
        bank.centers_hz.push_back(center);
        bool any = false;
        for (std::size_t k = 0; k < bank.n_bins; ++k) {
            const double f = static_cast<double>(k) * bin_hz;
            double w = 0.0;
            if (f > left && f <= center) {
                w = (f - left) / (center - left);
            } else if (f > center && f < right) {
                w = (right - f) / (right - center);
            }
            bank.weights(m, k) = w;
            any = any || w > 0.0;
        }
        if (!any) {
            config_error("mel filter " + std::to_string(m) +
                         " covers no spectrum bin; use fewer filters or longer frames");
        }
    }
    return bank;
}

std::vector<double> mel_energies(std::span<const double> spectrum, const MelFilterbank& bank,
                                 double floor) {
    if (spectrum.size() != bank.n_bins) {
        config_error("spectrum has " + std::to_string(spectrum.size()) + " bins, filterbank expects " +
                     std::to_string(bank.n_bins));
    }
    std::vector<double> power(spectrum.size());
    std::transform(spectrum.begin(), spectrum.end(), power.begin(), [](double m) { return m * m; });
    std::vector<double> energies(bank.n_filters);
    for (std::size_t m = 0; m < bank.n_filters; ++m) {
        energies[m] = std::max(simd::dot(bank.weights.row(m), power), floor);
    }
    return energies;
}

std::vector<double> dct_cepstrum(std::span<const double> log_energies, std::size_t n_coeffs) {
    if (log_energies.empty()) config_error("DCT of an empty vector");
    if (n_coeffs > log_energies.size()) {
        config_error("requested " + std::to_string(n_coeffs) + " cepstral coefficients from " +
                     std::to_string(log_energies.size()) + " filters");
    }
    return project_centered(log_energies, dct_basis(log_energies.size(), n_coeffs));
}

FeatureExtractor::FeatureExtractor(FeatureConfig config) : config_(config) {
    config_.validate();
    bank_ = make_mel_filterbank(config_.n_filters, config_.frame_len, config_.sample_rate_hz,
                                config_.f_low_hz, config_.f_high_hz);
    window_ = hamming_window(config_.frame_len);
    dct_ = dct_basis(config_.n_filters, config_.n_coeffs);
}

std::vector<double> FeatureExtractor::cepstrum(std::span<const double> log_energies) const {
    return project_centered(log_energies, dct_);
}

MfccMatrix FeatureExtractor::mfcc(const SampleVector& x) const {
    if (x.values.size() != config_.window_length) {
        config_error("sample vector has " + std::to_string(x.values.size()) +
                     " samples, configured window is " + std::to_string(config_.window_length));
    }
    const SampleVector emphasized = pre_emphasize(x, config_.alpha);
    const FrameSeries frames = frame_signal(emphasized.values, config_.frame_len, config_.hop);

    MfccMatrix out{Matrix(frames.frames.size(), config_.n_coeffs)};
    std::vector<double> windowed(config_.frame_len);
    for (std::size_t f = 0; f < frames.frames.size(); ++f) {
        const auto& frame = frames.frames[f];
        std::transform(frame.begin(), frame.end(), window_.begin(), windowed.begin(),
                       std::multiplies<>());
        auto energies = mel_energies(fft_magnitude(windowed), bank_, config_.floor);
        for (double& e : energies) e = std::log(e);
        const auto c = cepstrum(energies);
        std::copy(c.begin(), c.end(), out.coefficients.row(f).begin());
    }
    return out;
}

FeatureVector FeatureExtractor::extract(const SampleVector& x) const {
    return FeatureVector{mfcc(x).flatten()};
}

FeatureVector extract_features(const SampleVector& x, const FeatureConfig& config) {
    return FeatureExtractor(config).extract(x);
}

}  // namespace cryscreen
