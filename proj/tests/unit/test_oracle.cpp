#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "../support/reference.hpp"
#include "duelbench/oracle.hpp"

using namespace duelbench;

TEST_CASE("ruin answers on small walks") {
    CHECK(ruin_hit_top_prob({0.8, 1, 2}) == doctest::Approx(0.8).epsilon(1e-15));
    CHECK(ruin_expected_steps({0.8, 1, 2}) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(ruin_hit_top_prob({0.8, 1, 3}) == doctest::Approx(0.75 / (1.0 - 0.25 * 0.25 * 0.25)).epsilon(1e-13));
    CHECK(ruin_hit_top_prob({0.8, 1, 3}) == doctest::Approx(0.7619047619).epsilon(1e-10));
    CHECK(ruin_expected_steps({0.8, 1, 3}) <= 2.0 / (2 * 0.8 - 1));
    CHECK(ruin_hit_top_prob({1.0 - 1e-12, 3, 9}) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("ruin solver matches brute-force absorbing chains") {
    for (const double w : {0.55, 0.6, 0.75, 0.8, 0.9, 0.3}) {
        for (int top = 2; top <= 20; ++top) {
            const auto [hit, steps] = reference::absorbing_chain(w, top);
            for (int s = 1; s < top; ++s) {
                const RuinQuery q{w, s, top};
                CHECK(std::abs(ruin_hit_top_prob(q) - hit[s - 1]) <= 1e-10);
                CHECK(std::abs(ruin_expected_steps(q) - steps[s - 1]) <= 1e-10);
                CHECK(std::abs(ruin_hit_top_prob_closed_form(q) - hit[s - 1]) <= 1e-10);
                CHECK(std::abs(ruin_expected_steps_closed_form(q) - steps[s - 1]) <= 1e-9);
            }
        }
    }
}

TEST_CASE("ruin rejects invalid walks") {
    CHECK_THROWS_AS(ruin_hit_top_prob({0.5, 1, 3}), std::invalid_argument);
    CHECK_THROWS_AS(ruin_hit_top_prob({0.8, 0, 3}), std::invalid_argument);
    CHECK_THROWS_AS(ruin_expected_steps({0.8, 3, 3}), std::invalid_argument);
    CHECK_THROWS_AS(ruin_expected_steps({1.5, 1, 3}), std::invalid_argument);
}

TEST_CASE("ruin Monte Carlo agrees with the exact solve") {
    RngStream rng(42);
    const RuinQuery q{0.6, 4, 9};
    const auto mc = ruin_monte_carlo(q, 20000, rng);
    CHECK(mc.walks == 20000);
    CHECK(std::abs(mc.hit_top_mean - ruin_hit_top_prob(q)) <= 4 * mc.hit_top_se);
    CHECK(std::abs(mc.steps_mean - ruin_expected_steps(q)) <= 4 * mc.steps_se);
}

TEST_CASE("p_star") {
    CHECK(p_star(0.8) == doctest::Approx(0.75));
    CHECK(p_star(1.0) == 1.0);
    CHECK(p_star(0.5 + 1e-9) < 1e-8);
    CHECK_THROWS_AS(p_star(0.5), std::invalid_argument);
}

TEST_CASE("g boundary values and m-independence") {
    for (const double ps : {0.25, 0.5, 0.75}) {
        for (int m = 0; m <= 12; ++m) {
            CHECK(g_recursion(0, m, ps) == 0.0);
            if (m >= 1) CHECK(g_recursion(1, m, ps) == 1.0);
        }
        for (int b = 1; b <= 12; ++b) {
            const double closed = g_closed_form(b, ps);
            CHECK(closed <= (std::log(b) + 1.0) / ps);
            for (int m = b; m <= 12; ++m) CHECK(std::abs(g_recursion(b, m, ps) - closed) <= 1e-12);
        }
    }
    CHECK(g_closed_form(3, 0.75) == doctest::Approx(2.0625));
    CHECK_THROWS_AS(g_recursion(3, 2, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(g_recursion(-1, 2, 0.5), std::invalid_argument);
}

TEST_CASE("regret bounds evaluate to the known values") {
    CHECK(bound({0.6, 4, {}, {}}, 2) == doctest::Approx(1300.0).epsilon(1e-13));
    CHECK(bound({0.8, 50, {}, {}}, 1) == doctest::Approx(5529.311940113188).epsilon(1e-12));
    CHECK(bound({0.6, 4, 1e5, 1.1}, 4) == doctest::Approx(2172.7086342477437).epsilon(1e-12));
    CHECK(bound({0.6, 4, 1e5, 1.1}, 3) == doctest::Approx(66362.656).epsilon(1e-7));
}

TEST_CASE("regret bound preconditions") {
    CHECK_THROWS_AS(bound({0.6, 4, 1e5, 1.5}, 4), std::invalid_argument);  // beta = p/(1-p)
    CHECK_THROWS_AS(bound({0.6, 4, 1e5, 1.0}, 3), std::invalid_argument);
    CHECK_THROWS_AS(bound({0.6, 4, {}, 1.1}, 3), std::invalid_argument);
    CHECK_THROWS_AS(bound({0.6, 4, {}, {}}, 5), std::invalid_argument);
    CHECK_THROWS_AS(bound({0.5, 4, {}, {}}, 1), std::invalid_argument);
}

TEST_CASE("regret bounds are monotone in p, N and T") {
    for (int theorem = 1; theorem <= 4; ++theorem) {
        for (const double p : {0.55, 0.6, 0.7, 0.8, 0.9}) {
            const double beta = 1.0 + 0.5 * (p / (1.0 - p) - 1.0) * 0.2;
            for (std::int64_t n = 2; n < 40; n += 3) {
                for (const double t : {1e3, 1e4, 1e5}) {
                    const BoundQuery base{p, n, t, beta};
                    const double v = bound(base, theorem);
                    CHECK(bound({p + 0.02, n, t, beta}, theorem) <= v);
                    CHECK(bound({p, n + 1, t, beta}, theorem) >= v);
                    CHECK(bound({p, n, t * 10, beta}, theorem) >= v);
                }
            }
        }
    }
}
