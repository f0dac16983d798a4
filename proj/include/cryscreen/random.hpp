#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace cryscreen {

/// mt19937_64 (whose output sequence is fixed by the standard) with
/// hand-rolled uniform mappings, so streams are identical across standard
/// libraries. std::*_distribution is implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Independent stream for a (seed, stream, index) triple.
    Rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index)
        : engine_(mix(seed, stream, index)) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n), rejection-sampled to avoid modulo bias.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
        std::uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return v % n;
    }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[below(i)]);
        }
    }

private:
    static std::uint64_t splitmix(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ull;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
        return x ^ (x >> 31);
    }
    static std::uint64_t mix(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
        return splitmix(splitmix(splitmix(seed) ^ stream) ^ index);
    }

    std::mt19937_64 engine_;
};

}  // namespace cryscreen
