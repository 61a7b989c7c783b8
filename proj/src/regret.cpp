#include "duelbench/regret.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace duelbench {

RegretKind parse_regret_kind(std::string_view name) {
    for (const auto kind : kAllRegretKinds) {
        if (to_string(kind) == name) return kind;
    }
    throw std::invalid_argument("unknown regret kind '" + std::string(name) +
                                "' (expected binary-weak, binary-strong, utility-weak or utility-strong)");
}

std::string_view to_string(RegretKind kind) {
    switch (kind) {
        case RegretKind::binary_weak: return "binary-weak";
        case RegretKind::binary_strong: return "binary-strong";
        case RegretKind::utility_weak: return "utility-weak";
        case RegretKind::utility_strong: return "utility-strong";
    }
    return "unknown";
}

bool needs_utilities(RegretKind kind) noexcept {
    return kind == RegretKind::utility_weak || kind == RegretKind::utility_strong;
}

double step_regret(RegretKind kind, Arm best, std::span<const double> utilities, ArmPair pair) {
    switch (kind) {
        case RegretKind::binary_weak: return pair.contains(best) ? 0.0 : 1.0;
        case RegretKind::binary_strong: return (pair.first == best && pair.second == best) ? 0.0 : 1.0;
        case RegretKind::utility_weak:
        case RegretKind::utility_strong: break;
    }
    if (utilities.empty()) {
        throw std::invalid_argument(std::string(to_string(kind)) + " regret needs a utility vector");
    }
    const std::size_t n = utilities.size();
    if (best >= n || pair.first >= n || pair.second >= n) {
        throw std::invalid_argument("arm index outside the utility vector");
    }
    const double ui = utilities[pair.first];
    const double uj = utilities[pair.second];
    if (kind == RegretKind::utility_weak) return utilities[best] - std::max(ui, uj);
    return utilities[best] - 0.5 * (ui + uj);
}

RegretLedger::RegretLedger(RegretKind kind, Arm best, std::optional<std::vector<double>> utilities)
    : kind_(kind), best_(best), utilities_(std::move(utilities)) {
    if (needs_utilities(kind_) && !utilities_) {
        throw std::invalid_argument(std::string(to_string(kind_)) + " regret needs a utility vector");
    }
}

void RegretLedger::accumulate(double r) {
    if (!(r >= 0.0)) {
        throw std::invalid_argument("negative single-period regret " + std::to_string(r));
    }
    cumulative_ += r;
    ++steps_;
}

double RegretLedger::score(ArmPair pair) {
    const std::span<const double> u = utilities_ ? std::span<const double>(*utilities_) : std::span<const double>{};
    const double r = step_regret(kind_, best_, u, pair);
    accumulate(r);
    return r;
}

}  // namespace duelbench
