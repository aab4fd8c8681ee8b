#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <utility>

namespace mcnull {

using Seed = std::uint64_t;

/// SplitMix64 finalizer. Used to turn structured keys into well-mixed seeds.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// 64-bit FNV-1a hash of a label (bin ids, replicate tags).
std::uint64_t hash_label(std::string_view label) noexcept;

/// Child seed for stream `key` under `parent`. This mapping is part of the
/// reproducibility contract: (master seed, bin id, sample index) always
/// lands on the same generator stream, whatever the evaluation order.
Seed derive_seed(Seed parent, std::uint64_t key) noexcept;
Seed derive_seed(Seed parent, std::string_view label) noexcept;

/// Seeded generator with platform-independent variate generation.
/// The engine is std::mt19937_64; bounded integers, uniforms and geometric
/// variates are produced here rather than through <random> distributions,
/// whose output is implementation-defined.
class Rng {
public:
    explicit Rng(Seed seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [0, bound). bound must be > 0.
    std::uint64_t below(std::uint64_t bound);

    /// Uniform integer in [lo, hi].
    std::int64_t between(std::int64_t lo, std::int64_t hi);

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform();

    bool bernoulli(double p) { return uniform() < p; }

    /// Number of failures before the first success, success probability p in (0, 1].
    std::int64_t geometric(double p);

    template <typename T>
    void shuffle(std::span<T> items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            const auto j = static_cast<std::size_t>(below(i));
            using std::swap;
            swap(items[i - 1], items[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

} // namespace mcnull
