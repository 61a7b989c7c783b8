#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "duelbench/env.hpp"
#include "duelbench/prefmat.hpp"

namespace duelbench {

struct ArmPair {
    Arm first;
    Arm second;

    bool is_self() const noexcept { return first == second; }
    bool contains(Arm a) const noexcept { return first == a || second == a; }
    bool same_unordered(const ArmPair& o) const noexcept {
        return (first == o.first && second == o.second) || (first == o.second && second == o.first);
    }
    friend bool operator==(const ArmPair&, const ArmPair&) = default;
};

/// wins(i, j): number of duels in which arm i beat arm j.
class DuelTally {
public:
    explicit DuelTally(std::size_t n) : n_(n), wins_(n * n, 0) {}

    std::size_t size() const noexcept { return n_; }
    std::uint64_t wins(Arm i, Arm j) const noexcept { return wins_[i * n_ + j]; }
    std::uint64_t duels(Arm i, Arm j) const noexcept { return wins(i, j) + wins(j, i); }
    void record(const DuelOutcome& o) noexcept { ++wins_[o.winner * n_ + o.loser]; }

private:
    std::size_t n_;
    std::vector<std::uint64_t> wins_;
};

/// Winner Stays bookkeeping. c[i] is duels won minus duels lost by arm i.
struct WsState {
    explicit WsState(std::size_t n);

    std::vector<std::int64_t> c;
    std::optional<ArmPair> last_pair;
    /// Pair handed out by the latest propose and not yet observed.
    std::optional<ArmPair> pending;
    std::uint64_t t = 0;
    DuelTally tally;
};

/// Picks (i_t, j_t): i_t from argmax c, j_t from argmax c over arms != i_t.
/// Ties go to i_{t-1}, then j_{t-1}, then uniformly at random; a variate is
/// drawn only when the cascade reaches the random case.
ArmPair wsw_propose(WsState& state, RngStream& rng);

/// Applies the duel result to the counters; the outcome must involve exactly
/// the pending pair. Throws std::logic_error otherwise.
void wsw_observe(WsState& state, const DuelOutcome& outcome);

/// If the counters carry the end-of-round signature for `round` (one arm at
/// (n-1)*round, every other arm at -round), returns that arm.
std::optional<Arm> round_signature_winner(std::span<const std::int64_t> c, std::int64_t round);

enum class Phase { exploration, exploitation };

std::string_view to_string(Phase phase);

/// Sequential pair-selection policy. Every propose is followed by exactly
/// one observe; a self-pair is observed with std::nullopt because no duel
/// takes place.
class Policy {
public:
    virtual ~Policy() = default;

    virtual ArmPair propose(RngStream& rng) = 0;
    virtual void observe(const std::optional<DuelOutcome>& outcome) = 0;
    virtual std::string_view name() const = 0;
    /// Phase that produced the most recent proposal.
    virtual Phase phase() const { return Phase::exploration; }
};

class WsWPolicy final : public Policy {
public:
    explicit WsWPolicy(std::size_t n);

    ArmPair propose(RngStream& rng) override;
    void observe(const std::optional<DuelOutcome>& outcome) override;
    std::string_view name() const override { return "ws-w"; }

    const WsState& state() const noexcept { return state_; }

private:
    WsState state_;
};

struct WssState {
    WssState(std::size_t n, double beta);

    WsState inner;
    double beta;
    Phase phase = Phase::exploration;
    std::int64_t round = 1;
    std::optional<Arm> champion;
    std::uint64_t exploit_remaining = 0;
    std::uint64_t exploitation_steps = 0;
    /// champions[l - 1] is Z(l).
    std::vector<Arm> champions;
};

/// floor(beta^round), saturating at 2^62.
std::uint64_t exploitation_length(double beta, std::int64_t round);

class WsSPolicy final : public Policy {
public:
    /// Throws std::invalid_argument unless beta > 1.
    WsSPolicy(std::size_t n, double beta);

    ArmPair propose(RngStream& rng) override;
    void observe(const std::optional<DuelOutcome>& outcome) override;
    std::string_view name() const override { return "ws-s"; }
    Phase phase() const override { return last_phase_; }

    const WssState& state() const noexcept { return state_; }

private:
    WssState state_;
    Phase last_phase_ = Phase::exploration;
};

/// Relative upper confidence bound selection. u_ij is the empirical win
/// rate of i over j plus sqrt(alpha ln t / n_ij), 1 for unplayed pairs and
/// 0.5 on the diagonal. The first arm is uniform over arms whose bounds are
/// all >= 0.5 (all arms if none qualify); the second arm maximises u_jc over
/// every j, including c itself, ties uniform.
ArmPair rucb_propose(const DuelTally& tally, std::uint64_t t, double alpha, RngStream& rng);

class RucbPolicy final : public Policy {
public:
    /// Throws std::invalid_argument unless alpha > 0.5.
    RucbPolicy(std::size_t n, double alpha);

    ArmPair propose(RngStream& rng) override;
    void observe(const std::optional<DuelOutcome>& outcome) override;
    std::string_view name() const override { return "rucb"; }

    const DuelTally& tally() const noexcept { return tally_; }

private:
    DuelTally tally_;
    double alpha_;
    std::uint64_t t_ = 0;
    std::optional<ArmPair> pending_;
};

ArmPair random_pair_propose(std::size_t n, RngStream& rng);

class RandomPairPolicy final : public Policy {
public:
    explicit RandomPairPolicy(std::size_t n);

    ArmPair propose(RngStream& rng) override;
    void observe(const std::optional<DuelOutcome>&) override {}
    std::string_view name() const override { return "random"; }

private:
    std::size_t n_;
};

enum class PolicyKind { ws_w, ws_s, rucb, random };

struct PolicySpec {
    PolicyKind kind = PolicyKind::ws_w;
    double beta = 1.1;
    double alpha = 0.51;
};

PolicyKind parse_policy_kind(std::string_view name);
std::string_view to_string(PolicyKind kind);

/// Checks parameter ranges; throws std::invalid_argument.
void check_policy_spec(const PolicySpec& spec);
std::unique_ptr<Policy> make_policy(const PolicySpec& spec, std::size_t n);

}  // namespace duelbench
