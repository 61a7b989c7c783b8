#include <cmath>
#include <stdexcept>
#include <string>

#include "duelbench/policy.hpp"

namespace duelbench {

ArmPair rucb_propose(const DuelTally& tally, std::uint64_t t, double alpha, RngStream& rng) {
    const std::size_t n = tally.size();
    if (t < 1) {
        throw std::invalid_argument("rucb step counter starts at 1");
    }
    const double log_t = std::log(static_cast<double>(t));
    std::vector<double> u(n * n, 0.5);
    for (Arm i = 0; i < n; ++i) {
        for (Arm j = 0; j < n; ++j) {
            if (i == j) continue;
            const auto total = tally.duels(i, j);
            if (total == 0) {
                u[i * n + j] = 1.0;
                continue;
            }
            const double m = static_cast<double>(total);
            u[i * n + j] = static_cast<double>(tally.wins(i, j)) / m + std::sqrt(alpha * log_t / m);
        }
    }

    std::vector<Arm> candidates;
    for (Arm i = 0; i < n; ++i) {
        bool optimistic = true;
        for (Arm j = 0; j < n && optimistic; ++j) {
            if (j != i && u[i * n + j] < 0.5) optimistic = false;
        }
        if (optimistic) candidates.push_back(i);
    }
    const Arm c = candidates.empty() ? static_cast<Arm>(rng.uniform_index(n))
                                     : candidates[rng.uniform_index(candidates.size())];

    double best = -1.0;
    std::vector<Arm> ties;
    for (Arm j = 0; j < n; ++j) {
        const double v = u[j * n + c];
        if (v > best) {
            best = v;
            ties.assign(1, j);
        } else if (v == best) {
            ties.push_back(j);
        }
    }
    const Arm d = ties.size() == 1 ? ties.front() : ties[rng.uniform_index(ties.size())];
    return {c, d};
}

RucbPolicy::RucbPolicy(std::size_t n, double alpha) : tally_(n), alpha_(alpha) {
    if (n < 2) {
        throw std::invalid_argument("rucb needs at least 2 arms");
    }
    if (!(alpha > 0.5) || !std::isfinite(alpha)) {
        throw std::invalid_argument("rucb requires alpha > 0.5");
    }
}

ArmPair RucbPolicy::propose(RngStream& rng) {
    pending_ = rucb_propose(tally_, t_ + 1, alpha_, rng);
    return *pending_;
}

void RucbPolicy::observe(const std::optional<DuelOutcome>& outcome) {
    if (!pending_) {
        throw std::logic_error("rucb observe without a pending proposal");
    }
    if (outcome) {
        if (!ArmPair{outcome->winner, outcome->loser}.same_unordered(*pending_)) {
            throw std::logic_error("rucb outcome does not match the proposed pair");
        }
        tally_.record(*outcome);
    }
    pending_.reset();
    ++t_;
}

ArmPair random_pair_propose(std::size_t n, RngStream& rng) {
    if (n < 2) {
        throw std::invalid_argument("random pairing needs at least 2 arms");
    }
    const Arm i = rng.uniform_index(n);
    Arm j = rng.uniform_index(n - 1);
    if (j >= i) ++j;
    return {i, j};
}

RandomPairPolicy::RandomPairPolicy(std::size_t n) : n_(n) {
    if (n < 2) {
        throw std::invalid_argument("random pairing needs at least 2 arms");
    }
}

ArmPair RandomPairPolicy::propose(RngStream& rng) { return random_pair_propose(n_, rng); }

PolicyKind parse_policy_kind(std::string_view name) {
    if (name == "ws-w") return PolicyKind::ws_w;
    if (name == "ws-s") return PolicyKind::ws_s;
    if (name == "rucb") return PolicyKind::rucb;
    if (name == "random") return PolicyKind::random;
    throw std::invalid_argument("unknown policy '" + std::string(name) + "' (expected ws-w, ws-s, rucb or random)");
}

std::string_view to_string(PolicyKind kind) {
    switch (kind) {
        case PolicyKind::ws_w: return "ws-w";
        case PolicyKind::ws_s: return "ws-s";
        case PolicyKind::rucb: return "rucb";
        case PolicyKind::random: return "random";
    }
    return "unknown";
}

void check_policy_spec(const PolicySpec& spec) {
    if (spec.kind == PolicyKind::ws_s && !(spec.beta > 1.0 && std::isfinite(spec.beta))) {
        throw std::invalid_argument("ws-s requires beta > 1");
    }
    if (spec.kind == PolicyKind::rucb && !(spec.alpha > 0.5 && std::isfinite(spec.alpha))) {
        throw std::invalid_argument("rucb requires alpha > 0.5");
    }
}

std::unique_ptr<Policy> make_policy(const PolicySpec& spec, std::size_t n) {
    check_policy_spec(spec);
    switch (spec.kind) {
        case PolicyKind::ws_w: return std::make_unique<WsWPolicy>(n);
        case PolicyKind::ws_s: return std::make_unique<WsSPolicy>(n, spec.beta);
        case PolicyKind::rucb: return std::make_unique<RucbPolicy>(n, spec.alpha);
        case PolicyKind::random: return std::make_unique<RandomPairPolicy>(n);
    }
    throw std::invalid_argument("unknown policy kind");
}

}  // namespace duelbench
