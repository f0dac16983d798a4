#include "cryscreen/audio.hpp"
#include "cryscreen/error.hpp"
#include "cryscreen/random.hpp"

#include <gtest/gtest.h>

#include <cstdint>
#include <string>
#include <vector>

using namespace cryscreen;

namespace {

void u16(std::vector<std::uint8_t>& b, std::uint16_t v) {
    b.push_back(v & 0xff);
    b.push_back(v >> 8);
}
void u32(std::vector<std::uint8_t>& b, std::uint32_t v) {
    for (int s = 0; s < 32; s += 8) b.push_back((v >> s) & 0xff);
}
void tag(std::vector<std::uint8_t>& b, const char* t) { b.insert(b.end(), t, t + 4); }

// Canonical 44-byte header written field by field from the RIFF layout.
std::vector<std::uint8_t> wav_bytes(std::uint16_t format, std::uint16_t channels, std::uint16_t bits,
                                    const std::vector<std::uint8_t>& payload, std::uint32_t rate = 8000) {
    std::vector<std::uint8_t> b;
    tag(b, "RIFF");
    u32(b, 36 + static_cast<std::uint32_t>(payload.size()));
    tag(b, "WAVE");
    tag(b, "fmt ");
    u32(b, 16);
    u16(b, format);
    u16(b, channels);
    u32(b, rate);
    u32(b, rate * channels * bits / 8);
    u16(b, static_cast<std::uint16_t>(channels * bits / 8));
    u16(b, bits);
    tag(b, "data");
    u32(b, static_cast<std::uint32_t>(payload.size()));
    b.insert(b.end(), payload.begin(), payload.end());
    return b;
}

std::vector<std::uint8_t> pcm16(const std::vector<std::int16_t>& samples) {
    std::vector<std::uint8_t> b;
    for (auto s : samples) u16(b, static_cast<std::uint16_t>(s));
    return b;
}

}  // namespace

TEST(DecodeWav, HandcraftedSixteenBitMono) {
    const auto bytes = wav_bytes(1, 1, 16, pcm16({0, 16384, -16384, 32767}));
    ASSERT_EQ(bytes.size(), 44u + 8u);
    const AudioClip clip = decode_wav(bytes);
    ASSERT_EQ(clip.samples.size(), 4u);
    EXPECT_EQ(clip.samples[0], 0.0);
    EXPECT_EQ(clip.samples[1], 0.5);
    EXPECT_EQ(clip.samples[2], -0.5);
    EXPECT_EQ(clip.samples[3], 32767.0 / 32768.0);
    EXPECT_EQ(clip.sample_rate_hz, 8000u);
    EXPECT_EQ(clip.channels, 1);
}

TEST(DecodeWav, ZeroPayload) {
    const auto clip = decode_wav(wav_bytes(1, 1, 16, pcm16(std::vector<std::int16_t>(8000, 0))));
    ASSERT_EQ(clip.samples.size(), 8000u);
    for (double s : clip.samples) EXPECT_EQ(s, 0.0);
}

TEST(DecodeWav, StereoIsAveraged) {
    const auto clip = decode_wav(wav_bytes(1, 2, 16, pcm16({16384, -16384, 16384, -16384})));
    ASSERT_EQ(clip.samples.size(), 2u);
    EXPECT_EQ(clip.samples[0], 0.0);
    EXPECT_EQ(clip.samples[1], 0.0);
}

TEST(DecodeWav, EightBitUnsigned) {
    const auto clip = decode_wav(wav_bytes(1, 1, 8, {128, 192, 64, 0}));
    ASSERT_EQ(clip.samples.size(), 4u);
    EXPECT_EQ(clip.samples[0], 0.0);
    EXPECT_EQ(clip.samples[1], 0.5);
    EXPECT_EQ(clip.samples[2], -0.5);
    EXPECT_EQ(clip.samples[3], -1.0);
}

TEST(DecodeWav, SkipsUnknownChunks) {
    auto bytes = wav_bytes(1, 1, 16, pcm16({100, 200}));
    // splice a LIST chunk with odd size (plus pad byte) between fmt and data
    std::vector<std::uint8_t> list;
    tag(list, "LIST");
    u32(list, 3);
    list.insert(list.end(), {'a', 'b', 'c', 0});
    bytes.insert(bytes.begin() + 36, list.begin(), list.end());
    const auto clip = decode_wav(bytes);
    ASSERT_EQ(clip.samples.size(), 2u);
    EXPECT_EQ(clip.samples[1], 200.0 / 32768.0);
}

TEST(DecodeWav, Errors) {
    auto expect_kind = [](const std::vector<std::uint8_t>& b, ErrorKind kind) {
        try {
            decode_wav(b);
            FAIL() << "expected an error";
        } catch (const Error& e) {
            EXPECT_EQ(e.kind(), kind) << e.what();
        }
    };
    expect_kind({'R', 'I', 'F', 'F'}, ErrorKind::Format);
    auto bad_magic = wav_bytes(1, 1, 16, pcm16({1}));
    bad_magic[8] = 'X';
    expect_kind(bad_magic, ErrorKind::Format);
    auto truncated = wav_bytes(1, 1, 16, pcm16({1, 2, 3}));
    truncated.resize(truncated.size() - 2);
    expect_kind(truncated, ErrorKind::Format);
    expect_kind(wav_bytes(3, 1, 32, std::vector<std::uint8_t>(16, 0)), ErrorKind::UnsupportedEncoding);
    expect_kind(wav_bytes(1, 1, 24, std::vector<std::uint8_t>(6, 0)), ErrorKind::UnsupportedEncoding);
    expect_kind(wav_bytes(0x11, 1, 4, std::vector<std::uint8_t>(6, 0)), ErrorKind::UnsupportedEncoding);
}

TEST(WavRoundTrip, SixteenBitWithinOneStep) {
    Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> signal(1 + rng.below(3000));
        for (double& s : signal) s = rng.uniform(-1.0, 1.0);
        signal[0] = 1.0;  // clamps to 32767
        const auto clip = decode_wav(encode_wav(signal, 16000));
        ASSERT_EQ(clip.samples.size(), signal.size());
        EXPECT_EQ(clip.sample_rate_hz, 16000u);
        for (std::size_t i = 0; i < signal.size(); ++i) {
            EXPECT_LE(std::abs(clip.samples[i] - signal[i]), 1.0 / 32768.0);
        }
    }
}

TEST(FixedLengthWindow, TakesPrefix) {
    AudioClip clip;
    clip.sample_rate_hz = 8000;
    for (int i = 0; i < 9000; ++i) clip.samples.push_back(i / 9000.0);
    const auto w = fixed_length_window(clip);
    ASSERT_EQ(w.values.size(), 8000u);
    for (std::size_t i = 0; i < 8000; ++i) EXPECT_EQ(w.values[i], clip.samples[i]);
}

TEST(FixedLengthWindow, ExactLengthIsIdentity) {
    AudioClip clip;
    clip.samples.assign(8000, 0.25);
    EXPECT_EQ(fixed_length_window(clip, 8000).values, clip.samples);
}

TEST(FixedLengthWindow, ShortClip) {
    AudioClip clip;
    clip.samples.assign(5000, 0.5);
    try {
        fixed_length_window(clip, 8000);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::InsufficientAudio);
    }
    const auto padded = fixed_length_window(clip, 8000, true);
    ASSERT_EQ(padded.values.size(), 8000u);
    EXPECT_EQ(padded.values[4999], 0.5);
    EXPECT_EQ(padded.values[5000], 0.0);
    EXPECT_EQ(padded.values[7999], 0.0);
}

TEST(FixedLengthWindow, PrefixPropertyOnRandomLengths) {
    Rng rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        AudioClip clip;
        clip.samples.resize(1 + rng.below(400));
        for (double& s : clip.samples) s = rng.uniform(-1.0, 1.0);
        const std::size_t n = 1 + rng.below(400);
        const bool pad = clip.samples.size() < n;
        const auto w = fixed_length_window(clip, n, pad);
        ASSERT_EQ(w.values.size(), n);
        for (std::size_t i = 0; i < std::min(n, clip.samples.size()); ++i) EXPECT_EQ(w.values[i], clip.samples[i]);
    }
}
