#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace hilbert {

/// SplitMix64 step; used for seeding and for deriving stream keys.
std::uint64_t splitmix64(std::uint64_t& state) noexcept;

/// Stream key for (master seed, tag, index). Distinct (tag, index) pairs give
/// unrelated keys, so each replicate owns its own generator.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t tag, std::uint64_t index) noexcept;

/// xoshiro256** with a small set of self-contained distributions, so that
/// sampled values do not depend on the standard library implementation.
class Rng {
public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed) noexcept;

    /// Generator for replicate `index` of the cell tagged `tag`.
    static Rng stream(std::uint64_t master, std::uint64_t tag, std::uint64_t index) noexcept {
        return Rng(derive_seed(master, tag, index));
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept { return next(); }
    result_type next() noexcept;

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    /// Uniform on (0, 1).
    double uniform_open() noexcept { return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53; }
    /// Standard normal (Marsaglia polar method).
    double normal() noexcept;
    bool bernoulli(double p) noexcept { return uniform() < p; }

private:
    std::array<std::uint64_t, 4> s_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace hilbert
