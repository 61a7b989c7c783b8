#include <doctest.h>

#include <cmath>
#include <random>
#include <set>
#include <stdexcept>

#include "duelbench/env.hpp"

using namespace duelbench;

TEST_CASE("stream output is fixed by the engine definition") {
    // The 10000th output of a default-seeded mt19937_64 is pinned by the C++ standard.
    std::mt19937_64 reference;
    reference.discard(9999);
    RngStream s(5489);
    for (int k = 0; k < 9999; ++k) s.next_u64();
    CHECK(s.next_u64() == 9981545732273789042ULL);
    CHECK(reference() == 9981545732273789042ULL);
}

TEST_CASE("uniform lies in [0, 1) and uniform_index in range") {
    RngStream s(1);
    for (int k = 0; k < 10000; ++k) {
        const double u = s.uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        CHECK(s.uniform_index(7) < 7);
    }
    CHECK(s.uniform_index(1) == 0);
    CHECK_THROWS_AS(s.uniform_index(0), std::invalid_argument);
}

TEST_CASE("uniform_index is roughly uniform") {
    RngStream s(3);
    std::vector<int> counts(5, 0);
    const int draws = 50000;
    for (int k = 0; k < draws; ++k) ++counts[s.uniform_index(5)];
    for (const int c : counts) CHECK(std::abs(c - draws / 5) < 5 * std::sqrt(draws * 0.2 * 0.8));
}

TEST_CASE("forks are deterministic, distinct and leave the parent untouched") {
    const RngStream parent(99);
    RngStream a = parent.fork(0);
    RngStream b = parent.fork(0);
    RngStream c = parent.fork(1);
    CHECK(a.seed() == b.seed());
    CHECK(a.seed() != c.seed());
    CHECK(a.next_u64() == b.next_u64());
    std::set<std::uint64_t> seeds;
    for (std::uint64_t r = 0; r < 1000; ++r) seeds.insert(fork_stream(parent, r).seed());
    CHECK(seeds.size() == 1000);
    CHECK(RngStream(99).next_u64() == RngStream(parent).next_u64());
}

TEST_CASE("duel consumes one variate and respects the matrix") {
    const auto m = uniform_matrix(3, 0.8);
    RngStream s(11);
    RngStream shadow(11);
    int wins = 0;
    const int n = 40000;
    for (int k = 0; k < n; ++k) {
        const auto o = duel(m, 0, 2, s);
        const bool expected_first = shadow.uniform() < 0.8;
        CHECK(o.winner == (expected_first ? 0u : 2u));
        CHECK(o.loser == (expected_first ? 2u : 0u));
        wins += o.winner == 0;
    }
    CHECK(std::abs(wins / double(n) - 0.8) < 5 * std::sqrt(0.16 / n));
    CHECK_THROWS_AS(duel(m, 1, 1, s), std::invalid_argument);
    CHECK_THROWS_AS(duel(m, 0, 3, s), std::invalid_argument);
}

TEST_CASE("certain duels") {
    const auto m = uniform_matrix(2, 1.0);
    RngStream s(0);
    for (int k = 0; k < 100; ++k) {
        CHECK(duel(m, 0, 1, s).winner == 0);
        CHECK(duel(m, 1, 0, s).winner == 0);
    }
}
