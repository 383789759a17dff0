#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace encmine {

/// SplitMix64 step; used to derive independent stream seeds from one master seed.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Deterministic sub-seed for a named stream (stage index, pair index, ...).
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    std::uint64_t state = master ^ (0xa0761d6478bd642fULL * (stream + 1));
    return splitmix64(state);
}

/// Seeded generator with explicit transforms so draws are identical on every
/// platform (std::uniform_* distributions are implementation-defined).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform double in [0, 1).
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform index in [0, n). Modulo bias is negligible for the sizes used here.
    std::size_t index(std::size_t n) { return static_cast<std::size_t>(gen_() % n); }

    /// Zero-mean gaussian via Box-Muller; always consumes exactly two draws.
    double gaussian(double sigma) {
        double u1 = uniform();
        double u2 = uniform();
        if (u1 <= 0.0) u1 = 0x1.0p-53;
        return sigma * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace encmine
