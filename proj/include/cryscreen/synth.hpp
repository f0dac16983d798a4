#pragma once

#include "cryscreen/audio.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace cryscreen {

/// Acoustic profile of one synthetic class.
struct ClassProfile {
    double f0_min_hz = 400.0;
    double f0_max_hz = 500.0;
    std::size_t harmonics = 5;
    /// Per-sample relative frequency jitter, uniform in [-jitter, +jitter].
    double jitter = 0.01;
    /// Additive uniform noise amplitude, applied after peak normalization.
    double noise = 0.05;

    friend bool operator==(const ClassProfile&, const ClassProfile&) = default;
};

struct SynthSpec {
    std::size_t n_positive = 100;
    std::size_t n_negative = 100;
    std::uint64_t seed = 42;
    ClassProfile positive{600.0, 700.0, 5, 0.01, 0.05};
    ClassProfile negative{400.0, 500.0, 5, 0.01, 0.05};
    std::uint32_t sample_rate_hz = 8000;
    std::size_t length = kDefaultWindowLength;

    void validate() const;
};

inline constexpr double kSynthPeak = 0.8;

struct SynthClip {
    AudioClip clip;
    int label = 1;  // +1 asphyxia, -1 normal
    std::size_t index = 0;  // within its class
    double f0_hz = 0.0;

    [[nodiscard]] std::string filename() const;
};

/// Harmonic stack for one clip; deterministic in (seed, label, index).
SynthClip generate_clip(const SynthSpec& spec, int label, std::size_t index);

/// Negatives first, then positives, each in index order.
std::vector<SynthClip> generate_corpus(const SynthSpec& spec);

/// Writes {label}_{index}.wav files and manifest.csv (filename,label).
void write_corpus(const std::vector<SynthClip>& corpus, const std::filesystem::path& dir);

std::string label_name(int label);

}  // namespace cryscreen
