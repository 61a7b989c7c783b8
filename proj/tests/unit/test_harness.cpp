#include <doctest.h>

#include <sstream>
#include <stdexcept>

#include "duelbench/config.hpp"
#include "duelbench/harness.hpp"

using namespace duelbench;

namespace {

ExperimentConfig small_config(PolicyKind kind) {
    ExperimentConfig cfg;
    cfg.matrix = parse_matrix_source("mslr");
    cfg.policy.kind = kind;
    cfg.horizon = 2000;
    cfg.replications = 12;
    cfg.seed = 5;
    cfg.regret = {RegretKind::binary_weak, RegretKind::binary_strong, RegretKind::utility_weak,
                  RegretKind::utility_strong};
    return cfg;
}

std::string csv_of(const RunRecord& r) {
    std::ostringstream out;
    write_csv(out, r);
    return out.str();
}

}  // namespace

TEST_CASE("running stats against a direct computation") {
    RunningStats a;
    RunningStats b;
    RunningStats all;
    const std::vector<double> xs = {3, 1, 4, 1, 5, 9, 2, 6, 5, 3, 5};
    for (std::size_t k = 0; k < xs.size(); ++k) {
        (k < 4 ? a : b).push(xs[k]);
        all.push(xs[k]);
    }
    a.merge(b);
    double mean = 0;
    for (const double x : xs) mean += x / xs.size();
    double ss = 0;
    for (const double x : xs) ss += (x - mean) * (x - mean);
    CHECK(a.count() == xs.size());
    CHECK(a.mean() == doctest::Approx(mean));
    CHECK(a.stddev() == doctest::Approx(std::sqrt(ss / (xs.size() - 1))));
    CHECK(all.stddev() == doctest::Approx(a.stddev()));
    CHECK(a.standard_error() == doctest::Approx(a.stddev() / std::sqrt(double(xs.size()))));
    RunningStats one;
    one.push(2.0);
    CHECK(one.stddev() == 0.0);
}

TEST_CASE("simulate records every step; self-pairs are not dueled") {
    const auto m = dataset("cyclic");
    const auto trace = simulate_trace(m, {PolicyKind::ws_s, 1.5}, 3000, RngStream(2));
    REQUIRE(trace.size() == 3000);
    std::uint64_t self = 0;
    for (std::size_t k = 0; k < trace.size(); ++k) {
        const auto& e = trace[k];
        CHECK(e.t == k + 1);
        if (e.i == e.j) {
            ++self;
            CHECK_FALSE(e.winner);
            CHECK(e.phase == Phase::exploitation);
        } else {
            REQUIRE(e.winner);
            CHECK((*e.winner == e.i || *e.winner == e.j));
            CHECK(e.phase == Phase::exploration);
        }
    }
    CHECK(self > 1500);
}

TEST_CASE("cumulative regret is monotone and bounded by t") {
    for (const auto kind : {PolicyKind::ws_w, PolicyKind::ws_s, PolicyKind::rucb, PolicyKind::random}) {
        const auto cfg = small_config(kind);
        const auto prepared = prepare_experiment(cfg);
        const auto rep = run_replication(cfg, prepared, 3);
        const auto points = cfg.effective_checkpoints();
        for (std::size_t k = 0; k < cfg.regret.size(); ++k) {
            for (std::size_t c = 0; c < points.size(); ++c) {
                CHECK(rep.cumulative[k][c] <= static_cast<double>(points[c]) * 2.0 + 1e-9);
                if (c) CHECK(rep.cumulative[k][c] >= rep.cumulative[k][c - 1]);
            }
        }
        // Strong regret dominates weak regret in both forms.
        for (std::size_t c = 0; c < points.size(); ++c) {
            CHECK(rep.cumulative[1][c] >= rep.cumulative[0][c]);
            CHECK(rep.cumulative[3][c] >= rep.cumulative[2][c] - 1e-9);
        }
        if (kind == PolicyKind::random) CHECK(rep.cumulative[1].back() == 2000.0);
    }
}

TEST_CASE("replication results do not depend on the thread count") {
    auto cfg = small_config(PolicyKind::ws_s);
    cfg.threads = 1;
    const auto one = run_experiment(cfg);
    cfg.threads = 3;
    const auto three = run_experiment(cfg);
    CHECK(csv_of(one) == csv_of(three));
    CHECK(one.config_digest == cfg.digest());
    CHECK(one.rng_family == "mt19937_64+splitmix64-fork");
    const auto prepared = prepare_experiment(cfg);
    const auto solo = run_replication(cfg, prepared, 7);
    CHECK(solo.cumulative == one.replications[7].cumulative);
}

TEST_CASE("csv layout") {
    auto cfg = small_config(PolicyKind::ws_w);
    cfg.checkpoints = std::vector<std::uint64_t>{100, 2000};
    cfg.regret = {RegretKind::binary_weak, RegretKind::utility_weak};
    const auto rec = run_experiment(cfg);
    std::istringstream in(csv_of(rec));
    std::string line;
    std::getline(in, line);
    CHECK(line == kCsvHeader);
    std::vector<std::string> rows;
    while (std::getline(in, line)) rows.push_back(line);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].rfind("100,ws-w,binary-weak,", 0) == 0);
    CHECK(rows[1].rfind("100,ws-w,utility-weak,", 0) == 0);
    CHECK(rows[3].rfind("2000,ws-w,utility-weak,", 0) == 0);
    CHECK(rows[3].find(",12,mslr,5") != std::string::npos);
    const auto& s = rec.at(2000, RegretKind::binary_weak);
    CHECK(s.replications == 12);
    CHECK_THROWS(rec.at(333, RegretKind::binary_weak));
    CHECK_THROWS_AS(emit_csv(rec, "/nonexistent/dir/out.csv"), std::runtime_error);
}

TEST_CASE("preparation rejects unusable matrices and warns on large beta") {
    ExperimentConfig tied;
    tied.matrix = parse_matrix_source("probit([0, 0], 1)");
    CHECK_THROWS_AS(prepare_experiment(tied), std::invalid_argument);

    auto cfg = small_config(PolicyKind::ws_s);
    cfg.policy.beta = 1.1;
    const auto prepared = prepare_experiment(cfg);
    REQUIRE(prepared.warnings.size() == 1);
    CHECK(prepared.warnings[0].find("beta") != std::string::npos);
    CHECK(prepared.best == 0);

    cfg.matrix = parse_matrix_source("uniform(4, 0.8)");
    CHECK(prepare_experiment(cfg).warnings.empty());
}

TEST_CASE("ws-w records when the best arm settles") {
    ExperimentConfig cfg;
    cfg.matrix = parse_matrix_source("uniform(2, 1.0)");
    cfg.horizon = 50;
    cfg.replications = 1;
    const auto rec = run_experiment(cfg);
    CHECK(rec.replications[0].last_weak_miss == 0);
    CHECK(rec.at(50, RegretKind::binary_weak).mean == 0.0);
}
