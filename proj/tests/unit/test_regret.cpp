#include <doctest.h>

#include <stdexcept>

#include "duelbench/regret.hpp"

using namespace duelbench;

TEST_CASE("binary regret") {
    CHECK(step_regret(RegretKind::binary_weak, 0, {}, {0, 3}) == 0.0);
    CHECK(step_regret(RegretKind::binary_weak, 0, {}, {2, 0}) == 0.0);
    CHECK(step_regret(RegretKind::binary_weak, 0, {}, {1, 2}) == 1.0);
    CHECK(step_regret(RegretKind::binary_strong, 0, {}, {0, 0}) == 0.0);
    CHECK(step_regret(RegretKind::binary_strong, 0, {}, {0, 1}) == 1.0);
    CHECK(step_regret(RegretKind::binary_strong, 0, {}, {2, 2}) == 1.0);
}

TEST_CASE("utility regret") {
    const std::vector<double> u = {1.0, 0.6, 0.2};
    CHECK(step_regret(RegretKind::utility_weak, 0, u, {1, 2}) == doctest::Approx(0.4));
    CHECK(step_regret(RegretKind::utility_weak, 0, u, {2, 0}) == 0.0);
    CHECK(step_regret(RegretKind::utility_strong, 0, u, {1, 2}) == doctest::Approx(0.6));
    CHECK(step_regret(RegretKind::utility_strong, 0, u, {0, 2}) == doctest::Approx(0.4));
    CHECK(step_regret(RegretKind::utility_strong, 0, u, {0, 0}) == 0.0);
    CHECK_THROWS_AS(step_regret(RegretKind::utility_weak, 0, {}, {1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(step_regret(RegretKind::utility_weak, 0, u, {1, 5}), std::invalid_argument);
}

TEST_CASE("strong regret dominates weak regret") {
    const std::vector<double> u = {1.0, 0.7, 0.5, 0.1};
    for (Arm i = 0; i < 4; ++i) {
        for (Arm j = 0; j < 4; ++j) {
            const ArmPair pr{i, j};
            CHECK(step_regret(RegretKind::binary_strong, 0, u, pr) >= step_regret(RegretKind::binary_weak, 0, u, pr));
            CHECK(step_regret(RegretKind::utility_strong, 0, u, pr) >=
                  step_regret(RegretKind::utility_weak, 0, u, pr));
            CHECK(step_regret(RegretKind::utility_weak, 0, u, pr) >= 0.0);
        }
    }
}

TEST_CASE("ledger accumulates") {
    RegretLedger ledger(RegretKind::binary_strong, 0);
    ledger.score({0, 1});
    ledger.score({0, 0});
    ledger.score({2, 1});
    CHECK(ledger.cumulative() == 2.0);
    CHECK(ledger.steps() == 3);
    CHECK_THROWS_AS(ledger.accumulate(-0.1), std::invalid_argument);
    CHECK_THROWS_AS(RegretLedger(RegretKind::utility_strong, 0), std::invalid_argument);

    RegretLedger util(RegretKind::utility_weak, 1, std::vector<double>{0.3, 0.9, 0.5});
    util.score({0, 2});
    CHECK(util.cumulative() == doctest::Approx(0.4));
}

TEST_CASE("regret kind names") {
    for (const auto kind : kAllRegretKinds) CHECK(parse_regret_kind(to_string(kind)) == kind);
    CHECK(to_string(RegretKind::binary_weak) == "binary-weak");
    CHECK(needs_utilities(RegretKind::utility_strong));
    CHECK_FALSE(needs_utilities(RegretKind::binary_strong));
    CHECK_THROWS_AS(parse_regret_kind("weak"), std::invalid_argument);
}
