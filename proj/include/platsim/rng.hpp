#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace platsim {

// Stream tags. Every consumer derives its own stream from the run seed so
// that adding a consumer never perturbs the draws seen by existing ones.
enum class Stream : std::uint64_t {
    GraphBuild = 0x6772617068ULL,
    AgentTraits = 0x6167656e74ULL,
    MessageTraits = 0x6d7367ULL,
    Engine = 0x656e67696eULL,
};

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Deterministic random source. The core generator is std::mt19937_64,
/// whose output sequence is pinned by the standard, so equal seeds give
/// identical draws on every platform. All distributions are implemented
/// on top of raw 64-bit output; std::* distributions are never used
/// because their algorithms are implementation-defined.
///
/// Per-purpose streams are derived as
///   state = mt19937_64(splitmix64(seed ^ splitmix64(tag)))
/// This derivation is part of the determinism contract; do not change it
/// without a version bump.
class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed) : seed_(seed), gen_(seed) {}

    RandomSource(std::uint64_t run_seed, Stream tag)
        : RandomSource(splitmix64(run_seed ^ splitmix64(static_cast<std::uint64_t>(tag)))) {}

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform double in [0, 1), 53 random bits.
    double next_unit() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) {
        if (!(lo < hi))
            throw std::invalid_argument("uniform: require lo < hi, got [" +
                                        std::to_string(lo) + ", " + std::to_string(hi) + ")");
        return lo + next_unit() * (hi - lo);
    }

    /// Triangular sample on [lo, hi] with peak at mode, via inverse CDF.
    /// Consumes exactly one uniform draw; u = 0 maps to lo, u -> 1 to hi.
    double triangular(double lo, double mode, double hi) {
        if (!(lo <= mode && mode <= hi && lo < hi))
            throw std::invalid_argument("triangular: require lo <= mode <= hi and lo < hi");
        const double u = next_unit();
        const double span = hi - lo;
        const double cut = (mode - lo) / span;
        if (u < cut)
            return lo + std::sqrt(u * span * (mode - lo));
        return hi - std::sqrt((1.0 - u) * span * (hi - mode));
    }

    /// Uniform index in [0, n). Fixed-point multiply keeps the mapping
    /// free of modulo bias at any n we use.
    std::size_t pick(std::size_t n) {
        if (n == 0)
            throw std::invalid_argument("pick: empty range");
        return static_cast<std::size_t>(
            (static_cast<unsigned __int128>(gen_()) * n) >> 64);
    }

    /// True with probability p.
    bool bernoulli(double p) {
        if (p < 0.0 || p > 1.0)
            throw std::invalid_argument("bernoulli: p outside [0, 1]");
        return next_unit() < p;
    }

private:
    std::uint64_t seed_;
    std::mt19937_64 gen_;
};

} // namespace platsim
