#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "duelbench/config.hpp"
#include "duelbench/env.hpp"
#include "duelbench/policy.hpp"
#include "duelbench/prefmat.hpp"
#include "duelbench/regret.hpp"

namespace duelbench {

/// One simulated time step. `winner` is empty for self-pairs, which are
/// scored but never dueled.
struct RoundTraceEvent {
    std::uint64_t t;
    Arm i;
    Arm j;
    std::optional<Arm> winner;
    Phase phase;
};

using Trace = std::vector<RoundTraceEvent>;

using StepObserver = std::function<void(const RoundTraceEvent&)>;

/// Drives `policy` against the matrix for `horizon` steps.
void simulate(const PreferenceMatrix& matrix, Policy& policy, std::uint64_t horizon, RngStream& rng,
              const StepObserver& on_step);

/// Convenience wrapper that records every step.
Trace simulate_trace(const PreferenceMatrix& matrix, const PolicySpec& spec, std::uint64_t horizon, RngStream rng);

/// Welford accumulator with Chan's merge.
class RunningStats {
public:
    void push(double x) noexcept;
    void merge(const RunningStats& other) noexcept;

    std::uint64_t count() const noexcept { return n_; }
    double mean() const noexcept { return mean_; }
    /// Sample standard deviation; 0 for fewer than two values.
    double stddev() const noexcept;
    double standard_error() const noexcept;

private:
    std::uint64_t n_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

struct ReplicationResult {
    /// cumulative[k][c]: regret of config.regret[k] at checkpoint c.
    std::vector<std::vector<double>> cumulative;
    /// Last step at which the best arm was absent from the pair (0 if never).
    std::uint64_t last_weak_miss = 0;
    /// ws-s only: Z(1), Z(2), ... for every completed exploration round.
    std::vector<Arm> champions;
    std::uint64_t exploitation_steps = 0;
};

struct CheckpointSummary {
    std::uint64_t t;
    RegretKind kind;
    double mean;
    double stddev;
    std::uint64_t replications;
};

struct RunRecord {
    std::string config_digest;
    std::string policy;
    std::string dataset;
    std::uint64_t seed = 0;
    std::vector<std::uint64_t> checkpoints;
    std::vector<RegretKind> kinds;
    /// Checkpoint-major, then kind in config order.
    std::vector<CheckpointSummary> summaries;
    std::vector<ReplicationResult> replications;
    std::string rng_family;
    int rng_version = 0;
    double wall_seconds = 0.0;
    std::vector<std::string> warnings;

    const CheckpointSummary& at(std::uint64_t t, RegretKind kind) const;
};

/// Everything a replication needs that does not depend on the replication.
struct PreparedExperiment {
    PreferenceMatrix matrix;
    ValidationReport report;
    Arm best;
    std::optional<std::vector<double>> utilities;
    std::vector<std::uint64_t> checkpoints;
    std::vector<std::string> warnings;
};

/// Loads and validates the matrix, derives utilities when a utility regret
/// kind is requested and checks policy parameters. Throws
/// std::invalid_argument before any simulation takes place.
PreparedExperiment prepare_experiment(const ExperimentConfig& config);

/// Replication r uses fork_stream(RngStream(seed), r), so its result does
/// not depend on which other replications run.
ReplicationResult run_replication(const ExperimentConfig& config, const PreparedExperiment& prepared,
                                  std::uint64_t r);

RunRecord run_experiment(const ExperimentConfig& config);

inline constexpr const char* kCsvHeader = "t,policy,regret_kind,mean_cum_regret,std_cum_regret,n_reps,dataset,seed";

void write_csv(std::ostream& out, const RunRecord& record);
/// Throws std::runtime_error when the file cannot be written.
void emit_csv(const RunRecord& record, const std::string& path);

}  // namespace duelbench
