#include <doctest.h>

#include <stdexcept>

#include "duelbench/config.hpp"

using namespace duelbench;

TEST_CASE("matrix sources") {
    const auto ds = parse_matrix_source("mslr");
    CHECK(ds.kind == MatrixSource::Kind::dataset);
    CHECK(ds.label() == "mslr");

    const auto uni = parse_matrix_source("uniform(50, 0.8)");
    CHECK(uni.kind == MatrixSource::Kind::uniform);
    CHECK(uni.arms == 50);
    CHECK(uni.p == 0.8);
    CHECK(uni.label() == "uniform-50-0.8");
    CHECK(load_matrix(uni).size() == 50);

    const auto pr = parse_matrix_source("probit([1, 0.5, 0], 0.3)");
    CHECK(pr.kind == MatrixSource::Kind::probit);
    CHECK(pr.utilities == std::vector<double>{1.0, 0.5, 0.0});
    CHECK(pr.sigma == 0.3);
    CHECK(source_utilities(pr, load_matrix(pr)) == pr.utilities);

    const auto file = parse_matrix_source("data/matrix.txt");
    CHECK(file.kind == MatrixSource::Kind::file);

    for (const auto* text : {"sushi", "uniform(7, 0.65)", "probit([2, 1.5, -1], 0.75)"}) {
        const auto src = parse_matrix_source(text);
        const auto again = parse_matrix_source(src.to_text());
        CHECK(again.to_text() == src.to_text());
    }
    CHECK_THROWS_AS(parse_matrix_source(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_matrix_source("uniform(3)"), std::invalid_argument);
    CHECK_THROWS_AS(parse_matrix_source("probit(0.3)"), std::invalid_argument);
}

TEST_CASE("log checkpoints") {
    CHECK(log_checkpoints(1) == std::vector<std::uint64_t>{1});
    CHECK(log_checkpoints(10) == std::vector<std::uint64_t>{1, 2, 5, 10});
    CHECK(log_checkpoints(300) == std::vector<std::uint64_t>{1, 2, 5, 10, 20, 50, 100, 200, 300});
    CHECK(log_checkpoints(100000).back() == 100000);
}

TEST_CASE("config parsing") {
    const auto cfg = parse_config_text(R"(# comment
matrix = uniform(5, 0.9)
policy = ws-s
beta = 1.2
horizon = 500
replications = 20
seed = 9
regret = [binary-strong, "utility-strong"]
checkpoints = [10, 100, 500]
)");
    CHECK(cfg.matrix.arms == 5);
    CHECK(cfg.policy.kind == PolicyKind::ws_s);
    CHECK(cfg.policy.beta == 1.2);
    CHECK(cfg.horizon == 500);
    CHECK(cfg.replications == 20);
    CHECK(cfg.seed == 9);
    CHECK(cfg.regret == std::vector<RegretKind>{RegretKind::binary_strong, RegretKind::utility_strong});
    CHECK(cfg.effective_checkpoints() == std::vector<std::uint64_t>{10, 100, 500});

    // The canonical text parses back to the same digest.
    const auto again = parse_config_text(cfg.to_text());
    CHECK(again.digest() == cfg.digest());
    CHECK(cfg.digest().size() == 16);

    auto other = cfg;
    other.seed = 10;
    CHECK(other.digest() != cfg.digest());
    auto threaded = cfg;
    threaded.threads = 8;
    CHECK(threaded.digest() == cfg.digest());
}

TEST_CASE("config defaults") {
    const auto cfg = parse_config_text("matrix = cyclic\n");
    CHECK(cfg.policy.kind == PolicyKind::ws_w);
    CHECK(cfg.replications == 100);
    CHECK(cfg.regret == std::vector<RegretKind>{RegretKind::binary_weak});
    CHECK(cfg.effective_checkpoints() == log_checkpoints(cfg.horizon));
}

TEST_CASE("config errors") {
    CHECK_THROWS_AS(parse_config_text("policy = ws-w\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config_text("matrix = mslr\nmatrix = sushi\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config_text("matrix = mslr\ncolour = red\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config_text("matrix = mslr\nhorizon = 0\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config_text("matrix = mslr\nhorizon = -5\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config_text("matrix = mslr\nreplications = 0\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config_text("matrix = mslr\nregret = []\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config_text("matrix = mslr\nregret = [binary-weak, binary-weak]\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config_text("matrix = mslr\nhorizon = 100\ncheckpoints = [10, 5]\n"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_config_text("matrix = mslr\nhorizon = 100\ncheckpoints = [10, 200]\n"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_config_text("matrix = mslr\npolicy = ws-s\nbeta = 1\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config_text("matrix = mslr\nno equals sign\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config_file("/nonexistent/config.conf"), std::runtime_error);
    try {
        parse_config_text("matrix = mslr\n\nseed = x\n");
        FAIL("expected an error");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
}
