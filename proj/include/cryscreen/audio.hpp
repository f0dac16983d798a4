#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace cryscreen {

/// Decoded mono PCM audio, amplitudes in [-1, +1].
struct AudioClip {
    std::vector<double> samples;
    std::uint32_t sample_rate_hz = 0;
    std::uint16_t channels = 1;
};

/// The fixed-length analysis window fed to feature extraction.
struct SampleVector {
    std::vector<double> values;
};

inline constexpr std::size_t kDefaultWindowLength = 8000;

/// Decodes a RIFF/WAVE byte stream holding 8- or 16-bit integer PCM, mono
/// or stereo. Stereo frames are averaged to mono. Throws Error(Format) for
/// a malformed container and Error(UnsupportedEncoding) for anything other
/// than format tag 1 at 8/16 bits.
AudioClip decode_wav(std::span<const std::uint8_t> bytes);

AudioClip read_wav(const std::filesystem::path& path);

/// 16-bit mono PCM encoding. Amplitudes are clamped to [-1, 1] and
/// quantized with round-to-nearest on a 32768 scale.
std::vector<std::uint8_t> encode_wav(std::span<const double> samples, std::uint32_t sample_rate_hz);

void write_wav(const std::filesystem::path& path, std::span<const double> samples,
               std::uint32_t sample_rate_hz);

/// First `n` samples of the clip. With `pad_short` a shorter clip is
/// right-padded with zeros, otherwise it is rejected with
/// Error(InsufficientAudio).
SampleVector fixed_length_window(const AudioClip& clip, std::size_t n = kDefaultWindowLength,
                                 bool pad_short = false);

}  // namespace cryscreen
