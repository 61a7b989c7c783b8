#include "duelbench/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace duelbench {

void simulate(const PreferenceMatrix& matrix, Policy& policy, std::uint64_t horizon, RngStream& rng,
              const StepObserver& on_step) {
    for (std::uint64_t t = 1; t <= horizon; ++t) {
        const ArmPair pair = policy.propose(rng);
        const Phase phase = policy.phase();
        std::optional<DuelOutcome> outcome;
        if (!pair.is_self()) outcome = duel(matrix, pair.first, pair.second, rng);
        policy.observe(outcome);
        if (on_step) {
            on_step(RoundTraceEvent{t, pair.first, pair.second,
                                    outcome ? std::optional<Arm>(outcome->winner) : std::nullopt, phase});
        }
    }
}

Trace simulate_trace(const PreferenceMatrix& matrix, const PolicySpec& spec, std::uint64_t horizon, RngStream rng) {
    auto policy = make_policy(spec, matrix.size());
    Trace trace;
    trace.reserve(horizon);
    simulate(matrix, *policy, horizon, rng, [&](const RoundTraceEvent& e) { trace.push_back(e); });
    return trace;
}

void RunningStats::push(double x) noexcept {
    ++n_;
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(n_);
    m2_ += delta * (x - mean_);
}

void RunningStats::merge(const RunningStats& other) noexcept {
    if (other.n_ == 0) return;
    if (n_ == 0) {
        *this = other;
        return;
    }
    const double na = static_cast<double>(n_);
    const double nb = static_cast<double>(other.n_);
    const double delta = other.mean_ - mean_;
    const double total = na + nb;
    mean_ += delta * nb / total;
    m2_ += other.m2_ + delta * delta * na * nb / total;
    n_ += other.n_;
}

double RunningStats::stddev() const noexcept {
    if (n_ < 2) return 0.0;
    return std::sqrt(std::max(0.0, m2_ / static_cast<double>(n_ - 1)));
}

double RunningStats::standard_error() const noexcept {
    if (n_ < 2) return 0.0;
    return stddev() / std::sqrt(static_cast<double>(n_));
}

const CheckpointSummary& RunRecord::at(std::uint64_t t, RegretKind kind) const {
    for (const auto& s : summaries) {
        if (s.t == t && s.kind == kind) return s;
    }
    throw std::out_of_range("no summary for t = " + std::to_string(t) + ", kind " + std::string(to_string(kind)));
}

PreparedExperiment prepare_experiment(const ExperimentConfig& config) {
    check_config(config);
    PreparedExperiment prep{load_matrix(config.matrix), {}, 0, std::nullopt, config.effective_checkpoints(), {}};
    prep.report = validate(prep.matrix);
    if (!prep.report.structurally_valid()) {
        throw std::invalid_argument("preference matrix is invalid: " + prep.report.violations.front());
    }
    if (!prep.report.condorcet_winner) {
        throw std::invalid_argument("preference matrix has no Condorcet winner, so regret is undefined");
    }
    prep.best = *prep.report.condorcet_winner;
    const bool utility = std::any_of(config.regret.begin(), config.regret.end(), needs_utilities);
    if (utility) prep.utilities = source_utilities(config.matrix, prep.matrix);
    if (prep.utilities && prep.utilities->size() != prep.matrix.size()) {
        throw std::invalid_argument("utility vector length does not match the arm count");
    }
    if (config.policy.kind == PolicyKind::ws_s && prep.report.min_gap_p && *prep.report.min_gap_p < 1.0) {
        const double p = *prep.report.min_gap_p;
        const double ceiling = p / (1.0 - p);
        if (config.policy.beta >= ceiling) {
            prep.warnings.push_back("beta = " + format_decimal(config.policy.beta) + " is not below p/(1-p) = " +
                                    format_decimal(ceiling) + " (p = " + format_decimal(p) +
                                    "); the strong-regret guarantee assumes 1 < beta < p/(1-p)");
        }
    }
    return prep;
}

ReplicationResult run_replication(const ExperimentConfig& config, const PreparedExperiment& prepared,
                                  std::uint64_t r) {
    RngStream rng = fork_stream(RngStream(config.seed), r);
    auto policy = make_policy(config.policy, prepared.matrix.size());

    std::vector<RegretLedger> ledgers;
    ledgers.reserve(config.regret.size());
    for (const auto kind : config.regret) {
        ledgers.emplace_back(kind, prepared.best, needs_utilities(kind) ? prepared.utilities : std::nullopt);
    }

    ReplicationResult result;
    result.cumulative.assign(config.regret.size(), std::vector<double>(prepared.checkpoints.size(), 0.0));
    std::size_t next_checkpoint = 0;
    const Arm best = prepared.best;

    simulate(prepared.matrix, *policy, config.horizon, rng, [&](const RoundTraceEvent& e) {
        const ArmPair pair{e.i, e.j};
        for (auto& ledger : ledgers) ledger.score(pair);
        if (!pair.contains(best)) result.last_weak_miss = e.t;
        if (next_checkpoint < prepared.checkpoints.size() && e.t == prepared.checkpoints[next_checkpoint]) {
            for (std::size_t k = 0; k < ledgers.size(); ++k) {
                result.cumulative[k][next_checkpoint] = ledgers[k].cumulative();
            }
            ++next_checkpoint;
        }
    });

    if (const auto* wss = dynamic_cast<const WsSPolicy*>(policy.get())) {
        result.champions = wss->state().champions;
        result.exploitation_steps = wss->state().exploitation_steps;
    }
    return result;
}

RunRecord run_experiment(const ExperimentConfig& config) {
    const auto start = std::chrono::steady_clock::now();
    const PreparedExperiment prepared = prepare_experiment(config);

    std::vector<ReplicationResult> results(config.replications);
    unsigned workers = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, config.replications));

    std::atomic<std::uint64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        for (;;) {
            const std::uint64_t r = next.fetch_add(1);
            if (r >= config.replications) return;
            try {
                results[r] = run_replication(config, prepared, r);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next.store(config.replications);
                return;
            }
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    }
    if (failure) std::rethrow_exception(failure);

    RunRecord record;
    record.config_digest = config.digest();
    record.policy = std::string(to_string(config.policy.kind));
    record.dataset = config.matrix.label();
    record.seed = config.seed;
    record.checkpoints = prepared.checkpoints;
    record.kinds = config.regret;
    record.rng_family = std::string(kRngFamily);
    record.rng_version = kRngVersion;
    record.warnings = prepared.warnings;

    // Merge in replication order so the floating-point result never depends
    // on scheduling.
    for (std::size_t c = 0; c < prepared.checkpoints.size(); ++c) {
        for (std::size_t k = 0; k < config.regret.size(); ++k) {
            RunningStats stats;
            for (const auto& rep : results) {
                RunningStats one;
                one.push(rep.cumulative[k][c]);
                stats.merge(one);
            }
            record.summaries.push_back(
                {prepared.checkpoints[c], config.regret[k], stats.mean(), stats.stddev(), stats.count()});
        }
    }
    record.replications = std::move(results);
    record.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return record;
}

}  // namespace duelbench
