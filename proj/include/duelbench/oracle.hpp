#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "duelbench/env.hpp"

namespace duelbench {

// ---------------------------------------------------------------------------
// Gambler's ruin

/// A +/-1 walk on {0, ..., top} that steps up with probability win_prob and
/// stops at either end. Requires 0 < win_prob < 1, win_prob != 0.5 and
/// 0 < start < top.
struct RuinQuery {
    double win_prob;
    std::int64_t start;
    std::int64_t top;
};

/// Throws std::invalid_argument when the query is outside its domain.
void check_ruin_query(const RuinQuery& q);

/// P(hit top before 0), from the first-step recurrence
///   h(k) = w h(k+1) + (1-w) h(k-1),  h(0) = 0, h(top) = 1
/// solved directly as a tridiagonal system.
double ruin_hit_top_prob(const RuinQuery& q);

/// Expected absorption time, from
///   E(k) = 1 + w E(k+1) + (1-w) E(k-1),  E(0) = E(top) = 0.
double ruin_expected_steps(const RuinQuery& q);

// Closed forms of the same quantities, rho = (1-w)/w:
//   h(k) = (1 - rho^k) / (1 - rho^top)
//   E(k) = k/(1-2w) - top/(1-2w) * h(k)
// Kept separate from the linear solves so each can check the other.
double ruin_hit_top_prob_closed_form(const RuinQuery& q);
double ruin_expected_steps_closed_form(const RuinQuery& q);

struct RuinSimulation {
    std::uint64_t walks = 0;
    double hit_top_mean = 0.0;
    double hit_top_se = 0.0;
    double steps_mean = 0.0;
    double steps_se = 0.0;
};

/// Monte Carlo estimate of both ruin quantities.
RuinSimulation ruin_monte_carlo(const RuinQuery& q, std::uint64_t walks, RngStream& rng);

// ---------------------------------------------------------------------------
// Iteration-count recursion

/// (2p - 1) / p, the floor on the probability that a worse incumbent loses
/// its iteration. Requires 0.5 < p <= 1.
double p_star(double p);

/// g(b, m) from the recursion
///   g(0, m) = 0
///   g(b, m) = b/m + (p*/m) sum_{b'<b} g(b', m-1) + ((m-b)/m) g(b, m-1)
///             + (b/m)(1-p*) g(b-1, m-1)
/// Requires 0 <= b <= m and 0 < p* <= 1.
double g_recursion(std::int64_t b, std::int64_t m, double p_star_value);

/// Full table t[m][b] for 0 <= b <= m <= max_m.
std::vector<std::vector<double>> g_table(std::int64_t max_m, double p_star_value);

/// g(b, b) = sum_{k=1}^{b} (1/k) sum_{j=0}^{k-1} (1-p*)^j.
double g_closed_form(std::int64_t b, double p_star_value);

// ---------------------------------------------------------------------------
// Regret bounds. Logarithms are natural.

struct BoundQuery {
    double p;
    std::int64_t arms;
    std::optional<double> horizon;
    std::optional<double> beta;
};

/// theorem 1: WS-W weak regret, total order
///   2p^3/(2p-1)^6 N (ln N + 1) + N/(2p-1)^2
/// theorem 2: WS-W weak regret, Condorcet winner
///   N/(2p-1)^2 + p N^2/(2p-1)^3
/// theorem 3: WS-S strong regret, total order
///   2p^3/(2p-1)^6 N (ln N + 1) + N log_beta(T(beta-1))/(2p-1)
/// theorem 4: WS-S strong regret, Condorcet winner
///   N^2 p/(2p-1)^2 + N ln(T(beta-1)) / ((2p-1) ln beta)
///
/// Bounds are for binary regret; utility regret bounds scale by
/// R = u_best - u_worst. Theorems 3 and 4 need horizon and
/// 1 < beta < p/(1-p). Throws std::invalid_argument.
double bound(const BoundQuery& query, int theorem);

}  // namespace duelbench
