#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "duelbench/prefmat.hpp"

namespace duelbench {

inline constexpr std::string_view kRngFamily = "mt19937_64+splitmix64-fork";
inline constexpr int kRngVersion = 1;

/// Seedable random stream. The engine output is fixed by the C++ standard
/// and the variate transforms below use only integer arithmetic, so a seed
/// reproduces the same sequence on every conforming platform.
///
/// Single owner: never share one stream between workers, fork instead.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed = 0) : seed_(seed), engine_(seed) {}

    std::uint64_t seed() const noexcept { return seed_; }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform on {0, ..., bound - 1}; bound must be positive.
    std::uint64_t uniform_index(std::uint64_t bound);

    /// Independent child stream keyed by `label`. Depends only on this
    /// stream's seed, so forking never advances or perturbs the parent.
    RngStream fork(std::uint64_t label) const;

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

inline RngStream fork_stream(const RngStream& rng, std::uint64_t label) { return rng.fork(label); }

struct DuelOutcome {
    Arm winner;
    Arm loser;
    friend bool operator==(const DuelOutcome&, const DuelOutcome&) = default;
};

/// Arm i wins with probability p_ij. Consumes exactly one uniform variate.
/// Throws std::invalid_argument when i == j or an index is out of range.
DuelOutcome duel(const PreferenceMatrix& matrix, Arm i, Arm j, RngStream& rng);

}  // namespace duelbench
