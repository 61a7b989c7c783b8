#include "duelbench/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "duelbench/config.hpp"
#include "duelbench/harness.hpp"
#include "duelbench/oracle.hpp"
#include "duelbench/prefmat.hpp"
#include "duelbench/round_structure.hpp"

namespace duelbench {
namespace {

struct ValidationFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

int cmd_validate(const std::string& source, std::ostream& out) {
    const auto matrix = load_matrix(parse_matrix_source(source));
    const auto report = validate(matrix);
    out << "arms = " << matrix.size() << '\n' << describe(report);
    if (!report.structurally_valid()) throw ValidationFailure("matrix violates preference-matrix constraints");
    return kExitOk;
}

int cmd_run(const std::string& config_path, const std::string& csv_path, unsigned threads, std::ostream& out,
            std::ostream& err) {
    auto config = parse_config_file(config_path);
    if (threads) config.threads = threads;
    const auto record = run_experiment(config);
    for (const auto& w : record.warnings) err << "warning: " << w << '\n';
    emit_csv(record, csv_path);
    out << "config_digest = " << record.config_digest << '\n'
        << "policy = " << record.policy << '\n'
        << "dataset = " << record.dataset << '\n'
        << "replications = " << config.replications << '\n'
        << "horizon = " << config.horizon << '\n'
        << "rng = " << record.rng_family << " v" << record.rng_version << '\n'
        << "wall_seconds = " << format_decimal(record.wall_seconds) << '\n';
    for (const auto kind : record.kinds) {
        const auto& s = record.at(config.horizon, kind);
        out << "R(" << config.horizon << ")[" << to_string(kind) << "] = " << format_decimal(s.mean) << " +/- "
            << format_decimal(s.stddev) << " (sd)\n";
    }
    out << "csv = " << csv_path << '\n';
    return kExitOk;
}

int cmd_rounds(const std::string& source, std::uint64_t steps, std::uint64_t seed, bool key_values,
               std::ostream& out) {
    const auto matrix = load_matrix(parse_matrix_source(source));
    const auto trace = simulate_trace(matrix, PolicySpec{PolicyKind::ws_w}, steps, RngStream(seed));
    const auto report = analyze_round_structure(trace, matrix.size(), &matrix);
    out << (key_values ? report.to_key_values() : report.to_text());
    if (!report.ok()) throw ValidationFailure("round structure violated");
    return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Dueling-bandit simulation and regret-bound toolkit"};
    app.name("duelbench");
    app.require_subcommand(1);

    std::string matrix_source;
    auto* validate_cmd = app.add_subcommand("validate", "Check a preference matrix and print its report");
    validate_cmd->add_option("--matrix", matrix_source, "Matrix file, dataset name, uniform(n, p) or probit(...)")
        ->required();

    std::string config_path;
    std::string csv_path;
    unsigned threads = 0;
    auto* run_cmd = app.add_subcommand("run", "Run an experiment config and write the CSV summary");
    run_cmd->add_option("--config", config_path, "Experiment config file")->required();
    run_cmd->add_option("--out", csv_path, "Output CSV path")->required();
    run_cmd->add_option("--threads", threads, "Worker threads (overrides the config; results are unaffected)");

    int theorem = 0;
    double p = 0.0;
    std::int64_t arms = 0;
    std::optional<double> horizon;
    std::optional<double> beta;
    auto* bounds_cmd = app.add_subcommand("bounds", "Evaluate a regret bound");
    bounds_cmd->add_option("--theorem", theorem, "1, 2 (WS-W weak regret) or 3, 4 (WS-S strong regret)")
        ->required()
        ->check(CLI::Range(1, 4));
    bounds_cmd->add_option("--p", p, "Minimum winning probability p")->required();
    bounds_cmd->add_option("--n", arms, "Number of arms")->required();
    bounds_cmd->add_option("--t", horizon, "Horizon T (theorems 3, 4)");
    bounds_cmd->add_option("--beta", beta, "Exploitation growth factor (theorems 3, 4)");

    auto* oracle_cmd = app.add_subcommand("oracle", "Analytical checks");
    oracle_cmd->require_subcommand(1);
    double win_prob = 0.0;
    std::int64_t start = 0;
    std::int64_t top = 0;
    std::uint64_t walks = 0;
    std::uint64_t seed = 0;
    auto* ruin_cmd = oracle_cmd->add_subcommand("ruin", "Gambler's ruin hitting probability and duration");
    ruin_cmd->add_option("--p", win_prob, "Probability of stepping up")->required();
    ruin_cmd->add_option("--start", start, "Starting position k")->required();
    ruin_cmd->add_option("--top", top, "Upper absorbing boundary")->required();
    ruin_cmd->add_option("--walks", walks, "Also run this many Monte Carlo walks");
    ruin_cmd->add_option("--seed", seed, "Seed for the Monte Carlo walks");

    std::int64_t g_b = 0;
    std::int64_t g_m = 0;
    double g_pstar = 0.0;
    auto* g_cmd = oracle_cmd->add_subcommand("g", "Evaluate g(b, m) by recursion and closed form");
    g_cmd->add_option("--b", g_b, "b")->required();
    g_cmd->add_option("--m", g_m, "m")->required();
    g_cmd->add_option("--pstar", g_pstar, "p* in (0, 1]")->required();

    std::string rounds_source;
    std::uint64_t rounds_steps = 10000;
    std::uint64_t rounds_seed = 0;
    bool key_values = false;
    auto* rounds_cmd = oracle_cmd->add_subcommand("rounds", "Simulate WS-W and print its round structure");
    rounds_cmd->add_option("--matrix", rounds_source, "Matrix source")->required();
    rounds_cmd->add_option("--steps", rounds_steps, "Trace length");
    rounds_cmd->add_option("--seed", rounds_seed, "Seed");
    rounds_cmd->add_flag("--kv", key_values, "Print key=value lines instead of text");

    auto* datasets_cmd = app.add_subcommand("datasets", "Embedded preference matrices");
    datasets_cmd->require_subcommand(1);
    auto* list_cmd = datasets_cmd->add_subcommand("list", "List embedded datasets");
    std::string dataset_name;
    auto* export_cmd = datasets_cmd->add_subcommand("export", "Print an embedded dataset as a matrix file");
    export_cmd->add_option("--name", dataset_name, "Dataset name")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*validate_cmd) return cmd_validate(matrix_source, out);
        if (*run_cmd) return cmd_run(config_path, csv_path, threads, out, err);
        if (*bounds_cmd) {
            out << format_decimal(bound(BoundQuery{p, arms, horizon, beta}, theorem)) << '\n';
            return kExitOk;
        }
        if (*ruin_cmd) {
            const RuinQuery q{win_prob, start, top};
            out << "hit_top_prob = " << format_decimal(ruin_hit_top_prob(q)) << '\n'
                << "expected_steps = " << format_decimal(ruin_expected_steps(q)) << '\n'
                << "hit_top_prob_closed_form = " << format_decimal(ruin_hit_top_prob_closed_form(q)) << '\n'
                << "expected_steps_closed_form = " << format_decimal(ruin_expected_steps_closed_form(q)) << '\n';
            if (walks > 0) {
                RngStream rng(seed);
                const auto mc = ruin_monte_carlo(q, walks, rng);
                out << "mc_walks = " << mc.walks << '\n'
                    << "mc_hit_top_prob = " << format_decimal(mc.hit_top_mean) << " +/- "
                    << format_decimal(mc.hit_top_se) << '\n'
                    << "mc_expected_steps = " << format_decimal(mc.steps_mean) << " +/- "
                    << format_decimal(mc.steps_se) << '\n';
            }
            return kExitOk;
        }
        if (*g_cmd) {
            out << "g_recursion = " << format_decimal(g_recursion(g_b, g_m, g_pstar)) << '\n'
                << "g_closed_form = " << format_decimal(g_closed_form(g_b, g_pstar)) << '\n';
            return kExitOk;
        }
        if (*rounds_cmd) return cmd_rounds(rounds_source, rounds_steps, rounds_seed, key_values, out);
        if (*list_cmd) {
            for (const auto& name : dataset_names()) {
                out << name << "  " << dataset_description(name) << '\n';
            }
            return kExitOk;
        }
        if (*export_cmd) {
            write_matrix(out, dataset(dataset_name));
            return kExitOk;
        }
    } catch (const ValidationFailure& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    err << app.help();
    return kExitUsage;
}

}  // namespace duelbench
