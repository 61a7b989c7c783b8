#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "duelbench/policy.hpp"

namespace duelbench {

enum class RegretKind { binary_weak, binary_strong, utility_weak, utility_strong };

inline constexpr RegretKind kAllRegretKinds[] = {RegretKind::binary_weak, RegretKind::binary_strong,
                                                 RegretKind::utility_weak, RegretKind::utility_strong};

RegretKind parse_regret_kind(std::string_view name);
std::string_view to_string(RegretKind kind);
bool needs_utilities(RegretKind kind) noexcept;

/// Single-period regret of pulling `pair` when `best` is the Condorcet
/// winner. Utility kinds measure against utilities[best] and throw
/// std::invalid_argument when no utilities are supplied. Self-pairs are
/// allowed.
double step_regret(RegretKind kind, Arm best, std::span<const double> utilities, ArmPair pair);

class RegretLedger {
public:
    RegretLedger(RegretKind kind, Arm best, std::optional<std::vector<double>> utilities = std::nullopt);

    RegretKind kind() const noexcept { return kind_; }
    Arm best_arm() const noexcept { return best_; }
    double cumulative() const noexcept { return cumulative_; }
    std::uint64_t steps() const noexcept { return steps_; }

    /// Throws std::invalid_argument on negative r.
    void accumulate(double r);
    /// step_regret + accumulate; returns the increment.
    double score(ArmPair pair);

private:
    RegretKind kind_;
    Arm best_;
    std::optional<std::vector<double>> utilities_;
    double cumulative_ = 0.0;
    std::uint64_t steps_ = 0;
};

}  // namespace duelbench
