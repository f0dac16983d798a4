#include "cryscreen/synth.hpp"

#include "cryscreen/error.hpp"
#include "cryscreen/random.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

namespace cryscreen {

namespace {

void validate_profile(const ClassProfile& p, double nyquist, const char* which) {
    const std::string name(which);
    if (!(p.f0_min_hz > 0.0 && p.f0_min_hz <= p.f0_max_hz && p.f0_max_hz < nyquist)) {
        throw Error(ErrorKind::Configuration, name + " F0 range must lie within (0, Nyquist)");
    }
    if (p.harmonics == 0) throw Error(ErrorKind::Configuration, name + " needs at least one harmonic");
    if (!(p.jitter >= 0.0 && p.jitter < 1.0)) {
        throw Error(ErrorKind::Configuration, name + " jitter must lie in [0, 1)");
    }
    if (!(p.noise >= 0.0 && p.noise <= 1.0 - kSynthPeak)) {
        throw Error(ErrorKind::Configuration, name + " noise amplitude must lie in [0, 0.2]");
    }
}

}  // namespace

std::string label_name(int label) { return label > 0 ? "asphyxia" : "normal"; }

std::string SynthClip::filename() const {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s_%04zu.wav", label_name(label).c_str(), index);
    return buf;
}

void SynthSpec::validate() const {
    if (sample_rate_hz == 0 || length == 0) {
        throw Error(ErrorKind::Configuration, "sample rate and length must be positive");
    }
    const double nyquist = sample_rate_hz / 2.0;
    validate_profile(positive, nyquist, "positive");
    validate_profile(negative, nyquist, "negative");
    if (positive == negative) throw Error(ErrorKind::Configuration, "class profiles must differ");
}

SynthClip generate_clip(const SynthSpec& spec, int label, std::size_t index) {
    const ClassProfile& p = label > 0 ? spec.positive : spec.negative;
    Rng rng(spec.seed, label > 0 ? 1 : 0, index);

    SynthClip out;
    out.label = label;
    out.index = index;
    out.f0_hz = rng.uniform(p.f0_min_hz, p.f0_max_hz);

    const double nyquist = spec.sample_rate_hz / 2.0;
    std::vector<double> phase(p.harmonics);
    for (double& ph : phase) ph = rng.uniform(0.0, 2.0 * std::numbers::pi);

    std::vector<double> s(spec.length, 0.0);
    double base_phase = 0.0;
    for (std::size_t n = 0; n < spec.length; ++n) {
        double v = 0.0;
        for (std::size_t h = 1; h <= p.harmonics; ++h) {
            if (out.f0_hz * static_cast<double>(h) >= nyquist) break;  // no aliased partials
            v += std::sin(static_cast<double>(h) * base_phase + phase[h - 1]) / static_cast<double>(h);
        }
        s[n] = v;
        const double jitter = p.jitter > 0.0 ? p.jitter * rng.uniform(-1.0, 1.0) : 0.0;
        base_phase += 2.0 * std::numbers::pi * out.f0_hz * (1.0 + jitter) / spec.sample_rate_hz;
        base_phase = std::fmod(base_phase, 2.0 * std::numbers::pi);
    }

    double peak = 0.0;
    for (const double v : s) peak = std::max(peak, std::abs(v));
    const double gain = peak > 0.0 ? kSynthPeak / peak : 0.0;
    for (double& v : s) {
        v *= gain;
        if (p.noise > 0.0) v += p.noise * rng.uniform(-1.0, 1.0);
    }

    out.clip.samples = std::move(s);
    out.clip.sample_rate_hz = spec.sample_rate_hz;
    out.clip.channels = 1;
    return out;
}

std::vector<SynthClip> generate_corpus(const SynthSpec& spec) {
    spec.validate();
    std::vector<SynthClip> out;
    out.reserve(spec.n_negative + spec.n_positive);
    for (std::size_t i = 0; i < spec.n_negative; ++i) out.push_back(generate_clip(spec, -1, i));
    for (std::size_t i = 0; i < spec.n_positive; ++i) out.push_back(generate_clip(spec, 1, i));
    return out;
}

void write_corpus(const std::vector<SynthClip>& corpus, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    std::ofstream manifest(dir / "manifest.csv");
    if (!manifest) throw Error(ErrorKind::Format, "cannot write manifest in " + dir.string());
    manifest << "filename,label\n";
    for (const auto& c : corpus) {
        write_wav(dir / c.filename(), c.clip.samples, c.clip.sample_rate_hz);
        manifest << c.filename() << ',' << (c.label > 0 ? "1" : "-1") << '\n';
    }
}

}  // namespace cryscreen
