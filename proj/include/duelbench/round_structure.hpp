#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "duelbench/harness.hpp"
#include "duelbench/prefmat.hpp"

namespace duelbench {

/// A maximal run of one unordered pair inside a round.
struct IterationRecord {
    std::int64_t round = 0;
    std::size_t index = 0;  // k, one-based within the round
    std::uint64_t start_t = 0;
    std::uint64_t length = 0;
    Arm incumbent = 0;
    Arm challenger = 0;
    bool completed = false;
    std::optional<Arm> winner;  // set once completed
    /// Needs the ground-truth matrix.
    std::optional<bool> incumbent_worse;

    bool incumbent_lost() const noexcept { return winner && *winner != incumbent; }
};

struct RoundRecord {
    std::int64_t round = 0;
    std::uint64_t start_t = 0;
    std::uint64_t end_t = 0;
    bool completed = false;
    std::optional<Arm> winner;  // Z(round)
    std::vector<IterationRecord> iterations;
};

struct StructureReport {
    std::size_t arms = 0;
    std::uint64_t steps = 0;
    std::vector<RoundRecord> rounds;
    std::vector<std::string> violations;

    bool ok() const noexcept { return violations.empty(); }
    std::size_t completed_rounds() const noexcept;

    std::string to_text() const;
    /// Flat `key=value` lines for scripts.
    std::string to_key_values() const;
};

/// Replays a WS-W trace, rebuilds the counters and splits the run into
/// rounds (closed by the counter signature) and iterations (maximal runs of
/// one unordered pair within a round). Flags every step that Winner Stays
/// could not have produced, every completed round without exactly n-1
/// iterations, revisits of an arm that already lost in the current round,
/// and iterations whose final counters are off their expected levels.
/// Pass `matrix` to label incumbents as better or worse.
StructureReport analyze_round_structure(std::span<const RoundTraceEvent> trace, std::size_t arms,
                                        const PreferenceMatrix* matrix = nullptr);

/// Aggregates over completed iterations of several reports.
struct IterationStats {
    RunningStats better_incumbent_length;
    std::uint64_t worse_incumbent_iterations = 0;
    std::uint64_t worse_incumbent_losses = 0;
};

void accumulate_iteration_stats(const StructureReport& report, IterationStats& stats);

struct TailBoundRow {
    std::int64_t level = 0;  // counter of the best arm reaching -level
    std::uint64_t traces = 0;
    std::uint64_t hits = 0;
    double empirical = 0.0;
    double bound = 0.0;       // ((1-p)/p)^level
    double standard_error = 0.0;  // binomial, at the bound
    bool pass = false;
};

struct TailBoundReport {
    std::vector<TailBoundRow> rows;
    bool all_pass() const noexcept;
};

/// For each level 1..max_level, the fraction of traces in which the best
/// arm's replayed counter ever reaches -level, against ((1-p)/p)^level plus
/// three binomial standard errors.
TailBoundReport tail_bound_check(std::span<const Trace> traces, std::size_t arms, double p, std::int64_t max_level,
                                 Arm best = 0);

}  // namespace duelbench
