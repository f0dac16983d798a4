#include "cryscreen/audio.hpp"

#include "cryscreen/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <optional>
#include <string>
#include <string_view>

namespace cryscreen {

namespace {

constexpr std::uint16_t kFormatPcm = 1;

std::uint16_t read_u16(std::span<const std::uint8_t> b, std::size_t at) {
    return static_cast<std::uint16_t>(b[at] | (b[at + 1] << 8));
}

std::uint32_t read_u32(std::span<const std::uint8_t> b, std::size_t at) {
    return static_cast<std::uint32_t>(b[at]) | (static_cast<std::uint32_t>(b[at + 1]) << 8) |
           (static_cast<std::uint32_t>(b[at + 2]) << 16) |
           (static_cast<std::uint32_t>(b[at + 3]) << 24);
}

bool tag_is(std::span<const std::uint8_t> b, std::size_t at, std::string_view tag) {
    return std::memcmp(b.data() + at, tag.data(), 4) == 0;
}

struct FmtChunk {
    std::uint16_t format_tag;
    std::uint16_t channels;
    std::uint32_t sample_rate;
    std::uint16_t bits_per_sample;
};

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v & 0xff));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int shift = 0; shift < 32; shift += 8) {
        out.push_back(static_cast<std::uint8_t>((v >> shift) & 0xff));
    }
}

void put_tag(std::vector<std::uint8_t>& out, std::string_view tag) {
    out.insert(out.end(), tag.begin(), tag.end());
}

}  // namespace

AudioClip decode_wav(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 12 || !tag_is(bytes, 0, "RIFF") || !tag_is(bytes, 8, "WAVE")) {
        throw Error(ErrorKind::Format, "not a RIFF/WAVE stream");
    }

    std::optional<FmtChunk> fmt;
    std::span<const std::uint8_t> payload;
    bool have_data = false;

    std::size_t pos = 12;
    while (pos + 8 <= bytes.size()) {
        const std::uint32_t size = read_u32(bytes, pos + 4);
        const std::size_t body = pos + 8;
        if (size > bytes.size() - body) {
            throw Error(ErrorKind::Format, "chunk extends past end of stream");
        }
        if (tag_is(bytes, pos, "fmt ")) {
            if (size < 16) throw Error(ErrorKind::Format, "fmt chunk too short");
            fmt = FmtChunk{read_u16(bytes, body), read_u16(bytes, body + 2),
                           read_u32(bytes, body + 4), read_u16(bytes, body + 14)};
        } else if (tag_is(bytes, pos, "data")) {
            payload = bytes.subspan(body, size);
            have_data = true;
        }
        // chunks are word aligned
        pos = body + size + (size & 1u);
    }

    if (!fmt) throw Error(ErrorKind::Format, "missing fmt chunk");
    if (!have_data) throw Error(ErrorKind::Format, "missing data chunk");
    if (fmt->format_tag != kFormatPcm) {
        throw Error(ErrorKind::UnsupportedEncoding,
                    "unsupported WAV format tag " + std::to_string(fmt->format_tag) +
                        " (only integer PCM is accepted)");
    }
    if (fmt->bits_per_sample != 8 && fmt->bits_per_sample != 16) {
        throw Error(ErrorKind::UnsupportedEncoding,
                    "unsupported PCM bit depth " + std::to_string(fmt->bits_per_sample));
    }
    if (fmt->channels != 1 && fmt->channels != 2) {
        throw Error(ErrorKind::UnsupportedEncoding,
                    "unsupported channel count " + std::to_string(fmt->channels));
    }
    if (fmt->sample_rate == 0) throw Error(ErrorKind::Format, "zero sample rate");

    const std::size_t bytes_per_sample = fmt->bits_per_sample / 8;
    const std::size_t frame_bytes = bytes_per_sample * fmt->channels;
    const std::size_t frames = payload.size() / frame_bytes;
    if (frames == 0) throw Error(ErrorKind::Format, "empty data chunk");

    // Integer-domain channel sum, then one scaling step.
    AudioClip clip;
    clip.sample_rate_hz = fmt->sample_rate;
    clip.channels = 1;
    clip.samples.resize(frames);
    for (std::size_t f = 0; f < frames; ++f) {
        double sum = 0.0;
        for (std::size_t c = 0; c < fmt->channels; ++c) {
            const std::size_t at = f * frame_bytes + c * bytes_per_sample;
            if (bytes_per_sample == 2) {
                sum += static_cast<std::int16_t>(read_u16(payload, at));
            } else {
                sum += static_cast<int>(payload[at]) - 128;
            }
        }
        const double scale = bytes_per_sample == 2 ? 32768.0 : 128.0;
        clip.samples[f] = sum / static_cast<double>(fmt->channels) / scale;
    }
    return clip;
}

AudioClip read_wav(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Format, "cannot open " + path.string());
    const std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                          std::istreambuf_iterator<char>());
    return decode_wav(bytes);
}

std::vector<std::uint8_t> encode_wav(std::span<const double> samples, std::uint32_t sample_rate_hz) {
    const auto data_bytes = static_cast<std::uint32_t>(samples.size() * 2);
    std::vector<std::uint8_t> out;
    out.reserve(44 + data_bytes);
    put_tag(out, "RIFF");
    put_u32(out, 36 + data_bytes);
    put_tag(out, "WAVE");
    put_tag(out, "fmt ");
    put_u32(out, 16);
    put_u16(out, kFormatPcm);
    put_u16(out, 1);
    put_u32(out, sample_rate_hz);
    put_u32(out, sample_rate_hz * 2);
    put_u16(out, 2);
    put_u16(out, 16);
    put_tag(out, "data");
    put_u32(out, data_bytes);
    for (const double s : samples) {
        const double q = std::round(std::clamp(s, -1.0, 1.0) * 32768.0);
        const auto v = static_cast<std::int16_t>(std::clamp(q, -32768.0, 32767.0));
        put_u16(out, static_cast<std::uint16_t>(v));
    }
    return out;
}

void write_wav(const std::filesystem::path& path, std::span<const double> samples,
               std::uint32_t sample_rate_hz) {
    const auto bytes = encode_wav(samples, sample_rate_hz);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::Format, "cannot write " + path.string());
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

SampleVector fixed_length_window(const AudioClip& clip, std::size_t n, bool pad_short) {
    if (n == 0) throw Error(ErrorKind::Configuration, "window length must be positive");
    if (clip.samples.size() < n && !pad_short) {
        throw Error(ErrorKind::InsufficientAudio,
                    "clip has " + std::to_string(clip.samples.size()) + " samples, window needs " +
                        std::to_string(n));
    }
    SampleVector out;
    out.values.assign(n, 0.0);
    const std::size_t take = std::min(n, clip.samples.size());
    std::copy_n(clip.samples.begin(), take, out.values.begin());
    return out;
}

}  // namespace cryscreen
