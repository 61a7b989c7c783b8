#include "duelbench/env.hpp"

#include <stdexcept>
#include <string>

namespace duelbench {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

std::uint64_t RngStream::uniform_index(std::uint64_t bound) {
    if (bound == 0) {
        throw std::invalid_argument("uniform_index bound must be positive");
    }
    // Rejection on the low residue class keeps the result unbiased.
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
        const std::uint64_t x = engine_();
        if (x >= threshold) return x % bound;
    }
}

RngStream RngStream::fork(std::uint64_t label) const {
    return RngStream(splitmix64(seed_ ^ splitmix64(label ^ 0x6a09e667f3bcc909ULL)));
}

DuelOutcome duel(const PreferenceMatrix& matrix, Arm i, Arm j, RngStream& rng) {
    const std::size_t n = matrix.size();
    if (i >= n || j >= n) {
        throw std::invalid_argument("duel arm out of range (" + std::to_string(i + 1) + ", " + std::to_string(j + 1) +
                                    ") for " + std::to_string(n) + " arms");
    }
    if (i == j) {
        throw std::invalid_argument("an arm cannot duel itself (arm " + std::to_string(i + 1) + ")");
    }
    if (rng.uniform() < matrix(i, j)) return {i, j};
    return {j, i};
}

}  // namespace duelbench
