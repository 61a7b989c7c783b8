#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "duelbench/policy.hpp"

namespace duelbench {
namespace {

constexpr Arm kNoArm = std::numeric_limits<Arm>::max();

// Chooses from argmax { c[a] : a != excluded } with the Winner Stays
// cascade: previous first arm, then previous second arm, then uniform.
Arm pick_argmax(const std::vector<std::int64_t>& c, Arm excluded, const std::optional<ArmPair>& last,
                RngStream& rng) {
    std::int64_t best = std::numeric_limits<std::int64_t>::min();
    std::uint64_t ties = 0;
    for (Arm a = 0; a < c.size(); ++a) {
        if (a == excluded) continue;
        if (c[a] > best) {
            best = c[a];
            ties = 1;
        } else if (c[a] == best) {
            ++ties;
        }
    }
    if (last) {
        if (last->first != excluded && c[last->first] == best) return last->first;
        if (last->second != excluded && c[last->second] == best) return last->second;
    }
    std::uint64_t r = ties == 1 ? 0 : rng.uniform_index(ties);
    for (Arm a = 0; a < c.size(); ++a) {
        if (a == excluded || c[a] != best) continue;
        if (r == 0) return a;
        --r;
    }
    throw std::logic_error("argmax enumeration fell through");
}

}  // namespace

WsState::WsState(std::size_t n) : c(n, 0), tally(n) {
    if (n < 2) {
        throw std::invalid_argument("Winner Stays needs at least 2 arms");
    }
}

ArmPair wsw_propose(WsState& state, RngStream& rng) {
    if (state.c.size() < 2) {
        throw std::invalid_argument("Winner Stays needs at least 2 arms");
    }
    const Arm i = pick_argmax(state.c, kNoArm, state.last_pair, rng);
    const Arm j = pick_argmax(state.c, i, state.last_pair, rng);
    state.pending = ArmPair{i, j};
    return *state.pending;
}

void wsw_observe(WsState& state, const DuelOutcome& outcome) {
    if (!state.pending) {
        throw std::logic_error("wsw_observe called without a pending proposal");
    }
    const ArmPair pulled{outcome.winner, outcome.loser};
    if (!pulled.same_unordered(*state.pending) || outcome.winner == outcome.loser) {
        throw std::logic_error("duel outcome (" + std::to_string(outcome.winner + 1) + " beats " +
                               std::to_string(outcome.loser + 1) + ") does not match the proposed pair (" +
                               std::to_string(state.pending->first + 1) + ", " +
                               std::to_string(state.pending->second + 1) + ")");
    }
    ++state.c[outcome.winner];
    --state.c[outcome.loser];
    state.tally.record(outcome);
    state.last_pair = state.pending;
    state.pending.reset();
    ++state.t;
}

std::optional<Arm> round_signature_winner(std::span<const std::int64_t> c, std::int64_t round) {
    const auto n = static_cast<std::int64_t>(c.size());
    std::optional<Arm> top;
    for (Arm a = 0; a < c.size(); ++a) {
        if (c[a] == (n - 1) * round) {
            if (top) return std::nullopt;
            top = a;
        } else if (c[a] != -round) {
            return std::nullopt;
        }
    }
    return top;
}

std::string_view to_string(Phase phase) {
    return phase == Phase::exploration ? "exploration" : "exploitation";
}

WsWPolicy::WsWPolicy(std::size_t n) : state_(n) {}

ArmPair WsWPolicy::propose(RngStream& rng) { return wsw_propose(state_, rng); }

void WsWPolicy::observe(const std::optional<DuelOutcome>& outcome) {
    if (!outcome) {
        throw std::logic_error("ws-w never proposes a self-pair, so every step needs a duel outcome");
    }
    wsw_observe(state_, *outcome);
}

WssState::WssState(std::size_t n, double beta_) : inner(n), beta(beta_) {}

std::uint64_t exploitation_length(double beta, std::int64_t round) {
    const double len = std::floor(std::pow(beta, static_cast<double>(round)));
    constexpr double cap = 4611686018427387904.0;  // 2^62
    if (!(len < cap)) return static_cast<std::uint64_t>(cap);
    return static_cast<std::uint64_t>(len);
}

WsSPolicy::WsSPolicy(std::size_t n, double beta) : state_(n, beta) {
    if (!(beta > 1.0) || !std::isfinite(beta)) {
        throw std::invalid_argument("ws-s requires beta > 1");
    }
}

ArmPair WsSPolicy::propose(RngStream& rng) {
    if (state_.phase == Phase::exploitation) {
        last_phase_ = Phase::exploitation;
        return {*state_.champion, *state_.champion};
    }
    last_phase_ = Phase::exploration;
    return wsw_propose(state_.inner, rng);
}

void WsSPolicy::observe(const std::optional<DuelOutcome>& outcome) {
    if (last_phase_ == Phase::exploitation) {
        // Feedback during exploitation is ignored.
        ++state_.exploitation_steps;
        if (--state_.exploit_remaining == 0) {
            state_.phase = Phase::exploration;
            ++state_.round;
        }
        return;
    }
    if (!outcome) {
        throw std::logic_error("ws-s exploration step needs a duel outcome");
    }
    wsw_observe(state_.inner, *outcome);
    if (const auto z = round_signature_winner(state_.inner.c, state_.round)) {
        state_.champion = *z;
        state_.champions.push_back(*z);
        state_.phase = Phase::exploitation;
        state_.exploit_remaining = exploitation_length(state_.beta, state_.round);
    }
}

}  // namespace duelbench
