#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "duelbench/harness.hpp"
#include "duelbench/oracle.hpp"

namespace duelbench {
namespace {

// Solves the interior system for k = 1..top-1:
//   -(1-w) x(k-1) + x(k) - w x(k+1) = rhs
// with x(0) = 0 and x(top) = top_value (Thomas algorithm; the matrix is
// weakly diagonally dominant and irreducible, so no pivoting is needed).
std::vector<double> solve_walk(double w, std::int64_t top, double rhs, double top_value) {
    const auto m = static_cast<std::size_t>(top - 1);
    const double lower = -(1.0 - w);
    const double upper = -w;
    std::vector<double> c_prime(m), d_prime(m), x(m);
    for (std::size_t k = 0; k < m; ++k) {
        double d = rhs;
        if (k + 1 == m) d += w * top_value;
        const double denom = 1.0 - (k ? lower * c_prime[k - 1] : 0.0);
        c_prime[k] = upper / denom;
        d_prime[k] = (d - (k ? lower * d_prime[k - 1] : 0.0)) / denom;
    }
    for (std::size_t k = m; k-- > 0;) {
        x[k] = d_prime[k] - (k + 1 < m ? c_prime[k] * x[k + 1] : 0.0);
    }
    return x;
}

}  // namespace

void check_ruin_query(const RuinQuery& q) {
    if (!(q.win_prob > 0.0 && q.win_prob < 1.0)) {
        throw std::invalid_argument("ruin walk win probability must lie in (0, 1)");
    }
    if (q.win_prob == 0.5) {
        throw std::invalid_argument("ruin walk win probability must differ from 0.5");
    }
    if (!(q.start > 0 && q.start < q.top)) {
        throw std::invalid_argument("ruin walk needs 0 < start < top, got start = " + std::to_string(q.start) +
                                    ", top = " + std::to_string(q.top));
    }
}

double ruin_hit_top_prob(const RuinQuery& q) {
    check_ruin_query(q);
    return solve_walk(q.win_prob, q.top, 0.0, 1.0)[static_cast<std::size_t>(q.start - 1)];
}

double ruin_expected_steps(const RuinQuery& q) {
    check_ruin_query(q);
    return solve_walk(q.win_prob, q.top, 1.0, 0.0)[static_cast<std::size_t>(q.start - 1)];
}

double ruin_hit_top_prob_closed_form(const RuinQuery& q) {
    check_ruin_query(q);
    const double rho = (1.0 - q.win_prob) / q.win_prob;
    return (1.0 - std::pow(rho, static_cast<double>(q.start))) / (1.0 - std::pow(rho, static_cast<double>(q.top)));
}

double ruin_expected_steps_closed_form(const RuinQuery& q) {
    check_ruin_query(q);
    const double drift = 1.0 - 2.0 * q.win_prob;
    return static_cast<double>(q.start) / drift -
           static_cast<double>(q.top) / drift * ruin_hit_top_prob_closed_form(q);
}

RuinSimulation ruin_monte_carlo(const RuinQuery& q, std::uint64_t walks, RngStream& rng) {
    check_ruin_query(q);
    RunningStats hits;
    RunningStats steps;
    for (std::uint64_t w = 0; w < walks; ++w) {
        std::int64_t pos = q.start;
        std::uint64_t n = 0;
        while (pos > 0 && pos < q.top) {
            pos += rng.uniform() < q.win_prob ? 1 : -1;
            ++n;
        }
        hits.push(pos == q.top ? 1.0 : 0.0);
        steps.push(static_cast<double>(n));
    }
    return {walks, hits.mean(), hits.standard_error(), steps.mean(), steps.standard_error()};
}

}  // namespace duelbench
