#include <cmath>
#include <stdexcept>
#include <string>

#include "duelbench/oracle.hpp"
#include "duelbench/prefmat.hpp"

namespace duelbench {
namespace {

void check_p_star(double value) {
    if (!(value > 0.0 && value <= 1.0)) {
        throw std::invalid_argument("p* must lie in (0, 1], got " + format_decimal(value));
    }
}

}  // namespace

double p_star(double p) {
    if (!(p > 0.5 && p <= 1.0)) {
        throw std::invalid_argument("p* needs 0.5 < p <= 1, got p = " + format_decimal(p));
    }
    return (2.0 * p - 1.0) / p;
}

std::vector<std::vector<double>> g_table(std::int64_t max_m, double p_star_value) {
    if (max_m < 0) {
        throw std::invalid_argument("g table size must be non-negative");
    }
    check_p_star(p_star_value);
    const auto size = static_cast<std::size_t>(max_m) + 1;
    std::vector<std::vector<double>> g(size);
    g[0] = {0.0};
    for (std::size_t m = 1; m < size; ++m) {
        g[m].assign(m + 1, 0.0);
        const auto& prev = g[m - 1];
        const double md = static_cast<double>(m);
        double prefix = 0.0;  // sum_{b' < b} g(b', m-1)
        for (std::size_t b = 1; b <= m; ++b) {
            prefix += prev[b - 1];
            const double bd = static_cast<double>(b);
            const double same_b = b < m ? prev[b] : 0.0;
            g[m][b] = bd / md + p_star_value / md * prefix + (md - bd) / md * same_b +
                      bd / md * (1.0 - p_star_value) * prev[b - 1];
        }
    }
    return g;
}

double g_recursion(std::int64_t b, std::int64_t m, double p_star_value) {
    if (b < 0 || m < 0 || b > m) {
        throw std::invalid_argument("g(b, m) needs 0 <= b <= m, got b = " + std::to_string(b) +
                                    ", m = " + std::to_string(m));
    }
    check_p_star(p_star_value);
    if (b == 0) return 0.0;
    return g_table(m, p_star_value)[static_cast<std::size_t>(m)][static_cast<std::size_t>(b)];
}

double g_closed_form(std::int64_t b, double p_star_value) {
    if (b < 0) {
        throw std::invalid_argument("g(b, b) needs b >= 0");
    }
    check_p_star(p_star_value);
    const double keep = 1.0 - p_star_value;
    double total = 0.0;
    double geometric = 0.0;  // sum_{j<k} keep^j
    double power = 1.0;
    for (std::int64_t k = 1; k <= b; ++k) {
        geometric += power;
        power *= keep;
        total += geometric / static_cast<double>(k);
    }
    return total;
}

double bound(const BoundQuery& query, int theorem) {
    const double p = query.p;
    if (!(p > 0.5 && p <= 1.0)) {
        throw std::invalid_argument("bounds need 0.5 < p <= 1, got p = " + format_decimal(p));
    }
    if (query.arms < 2) {
        throw std::invalid_argument("bounds need at least 2 arms");
    }
    if (theorem < 1 || theorem > 4) {
        throw std::invalid_argument("theorem must be 1, 2, 3 or 4");
    }
    const double n = static_cast<double>(query.arms);
    const double gap = 2.0 * p - 1.0;
    const double worse_incumbent = 2.0 * p * p * p / std::pow(gap, 6) * n * (std::log(n) + 1.0);

    if (theorem == 1) return worse_incumbent + n / (gap * gap);
    if (theorem == 2) return n / (gap * gap) + p * n * n / (gap * gap * gap);

    if (!query.horizon || !query.beta) {
        throw std::invalid_argument("theorem " + std::to_string(theorem) + " needs both a horizon and beta");
    }
    const double t = *query.horizon;
    const double beta = *query.beta;
    if (!(t >= 1.0)) {
        throw std::invalid_argument("horizon must be >= 1");
    }
    const double ceiling = p < 1.0 ? p / (1.0 - p) : INFINITY;
    if (!(beta > 1.0 && beta < ceiling)) {
        throw std::invalid_argument("theorem " + std::to_string(theorem) + " requires 1 < beta < p/(1-p) = " +
                                    format_decimal(ceiling) + ", got beta = " + format_decimal(beta));
    }
    const double rounds = std::log(t * (beta - 1.0)) / std::log(beta);
    if (theorem == 3) return worse_incumbent + n * rounds / gap;
    return n * n * p / (gap * gap) + n * rounds / gap;
}

}  // namespace duelbench
