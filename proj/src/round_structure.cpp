#include "duelbench/round_structure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "duelbench/prefmat.hpp"

namespace duelbench {
namespace {

constexpr std::size_t kMaxViolations = 64;

std::string one_based(Arm a) { return std::to_string(a + 1); }

// Arm that Winner Stays must (or may) put in a slot, given the counters.
// Returns true when `chosen` is a legal pick.
bool legal_pick(const std::vector<std::int64_t>& c, Arm chosen, std::optional<Arm> excluded,
                const std::optional<ArmPair>& last) {
    std::int64_t best = std::numeric_limits<std::int64_t>::min();
    for (Arm a = 0; a < c.size(); ++a) {
        if (excluded && a == *excluded) continue;
        best = std::max(best, c[a]);
    }
    auto in_argmax = [&](Arm a) { return !(excluded && a == *excluded) && c[a] == best; };
    if (last) {
        if (in_argmax(last->first)) return chosen == last->first;
        if (in_argmax(last->second)) return chosen == last->second;
    }
    return in_argmax(chosen);
}

class Analyzer {
public:
    Analyzer(std::size_t arms, const PreferenceMatrix* matrix) : n_(arms), matrix_(matrix), c_(arms, 0), lost_(arms, false) {
        report_.arms = arms;
        open_round(1);
    }

    void step(std::size_t index, const RoundTraceEvent& e) {
        report_.steps = index + 1;
        if (e.t != index + 1) {
            flag("event " + std::to_string(index + 1) + " carries t = " + std::to_string(e.t) +
                 "; steps must be consecutive from 1");
        }
        if (e.phase != Phase::exploration) {
            flag("t = " + std::to_string(e.t) + ": exploitation event in a Winner Stays exploration trace");
            return;
        }
        if (e.i >= n_ || e.j >= n_ || e.i == e.j || !e.winner || (*e.winner != e.i && *e.winner != e.j)) {
            flag("t = " + std::to_string(e.t) + ": malformed event");
            return;
        }
        const ArmPair pair{e.i, e.j};
        if (!legal_pick(c_, e.i, std::nullopt, last_) || !legal_pick(c_, e.j, e.i, last_)) {
            flag("t = " + std::to_string(e.t) + ": pair (" + one_based(e.i) + ", " + one_based(e.j) +
                 ") is not a Winner Stays choice for the replayed counters");
        }

        auto& its = round_.iterations;
        const bool continues = !its.empty() && !its.back().completed &&
                               ArmPair{its.back().incumbent, its.back().challenger}.same_unordered(pair);
        if (!continues) {
            if (!its.empty() && !its.back().completed) close_iteration(std::nullopt);
            open_iteration(e.t, pair);
        }

        const Arm winner = *e.winner;
        const Arm loser = winner == e.i ? e.j : e.i;
        ++c_[winner];
        --c_[loser];
        ++round_.iterations.back().length;
        last_ = pair;

        if (const auto z = round_signature_winner(c_, ell_)) {
            close_iteration(*z);
            close_round(e.t, *z);
        }
    }

    StructureReport finish() {
        if (!round_.iterations.empty()) report_.rounds.push_back(round_);
        if (dropped_ > 0) {
            report_.violations.push_back("... and " + std::to_string(dropped_) + " more violations");
        }
        return std::move(report_);
    }

private:
    void flag(std::string message) {
        if (report_.violations.size() < kMaxViolations) {
            report_.violations.push_back(std::move(message));
        } else {
            ++dropped_;
        }
    }

    void open_round(std::int64_t ell) {
        ell_ = ell;
        round_ = RoundRecord{};
        round_.round = ell;
        std::fill(lost_.begin(), lost_.end(), false);
    }

    void open_iteration(std::uint64_t t, ArmPair pair) {
        IterationRecord it;
        it.round = ell_;
        it.index = round_.iterations.size() + 1;
        it.start_t = t;
        if (round_.iterations.empty()) round_.start_t = t;

        for (const Arm a : {pair.first, pair.second}) {
            if (lost_[a]) {
                flag("t = " + std::to_string(t) + ": arm " + one_based(a) + " lost earlier in round " +
                     std::to_string(ell_) + " and is pulled again");
            }
        }
        const bool first_positive = c_[pair.first] > 0;
        const bool second_positive = c_[pair.second] > 0;
        if (first_positive != second_positive) {
            it.incumbent = first_positive ? pair.first : pair.second;
        } else if (!first_positive && ell_ == 1 && it.index == 1) {
            // Opening iteration: both counters are 0, the incumbent is the better arm.
            it.incumbent = (matrix_ && (*matrix_)(pair.second, pair.first) > 0.5) ? pair.second : pair.first;
        } else {
            flag("t = " + std::to_string(t) + ": iteration " + std::to_string(it.index) + " of round " +
                 std::to_string(ell_) + " has no unique incumbent");
            it.incumbent = pair.first;
        }
        it.challenger = it.incumbent == pair.first ? pair.second : pair.first;
        if (matrix_) it.incumbent_worse = (*matrix_)(it.incumbent, it.challenger) < 0.5;
        round_.iterations.push_back(it);
    }

    void close_iteration(std::optional<Arm> known_winner) {
        auto& it = round_.iterations.back();
        const Arm a = it.incumbent;
        const Arm b = it.challenger;
        const Arm winner = known_winner ? *known_winner : (c_[a] >= c_[b] ? a : b);
        const Arm loser = winner == a ? b : a;
        it.completed = true;
        it.winner = winner;
        lost_[loser] = true;

        const auto n = static_cast<std::int64_t>(n_);
        const std::int64_t winner_level = (n - 1) * (ell_ - 1) + static_cast<std::int64_t>(it.index);
        if (c_[winner] != winner_level || c_[loser] != -ell_) {
            flag("iteration " + std::to_string(it.index) + " of round " + std::to_string(ell_) + " ends with C(" +
                 one_based(winner) + ") = " + std::to_string(c_[winner]) + ", C(" + one_based(loser) +
                 ") = " + std::to_string(c_[loser]) + "; expected " + std::to_string(winner_level) + " and " +
                 std::to_string(-ell_));
        }
    }

    void close_round(std::uint64_t t, Arm champion) {
        round_.completed = true;
        round_.end_t = t;
        round_.winner = champion;
        if (round_.iterations.size() != n_ - 1) {
            flag("round " + std::to_string(ell_) + " completed with " + std::to_string(round_.iterations.size()) +
                 " iterations; expected " + std::to_string(n_ - 1));
        }
        report_.rounds.push_back(std::move(round_));
        open_round(ell_ + 1);
    }

    std::size_t n_;
    const PreferenceMatrix* matrix_;
    std::vector<std::int64_t> c_;
    std::vector<bool> lost_;
    std::optional<ArmPair> last_;
    std::int64_t ell_ = 1;
    RoundRecord round_;
    StructureReport report_;
    std::size_t dropped_ = 0;
};

}  // namespace

std::size_t StructureReport::completed_rounds() const noexcept {
    return static_cast<std::size_t>(
        std::count_if(rounds.begin(), rounds.end(), [](const RoundRecord& r) { return r.completed; }));
}

StructureReport analyze_round_structure(std::span<const RoundTraceEvent> trace, std::size_t arms,
                                        const PreferenceMatrix* matrix) {
    if (arms < 2) {
        throw std::invalid_argument("round structure needs at least 2 arms");
    }
    if (matrix && matrix->size() != arms) {
        throw std::invalid_argument("matrix size does not match the arm count");
    }
    Analyzer analyzer(arms, matrix);
    for (std::size_t k = 0; k < trace.size(); ++k) analyzer.step(k, trace[k]);
    return analyzer.finish();
}

std::string StructureReport::to_text() const {
    std::ostringstream out;
    out << "arms: " << arms << ", steps: " << steps << ", completed rounds: " << completed_rounds() << '\n';
    for (const auto& r : rounds) {
        out << "round " << r.round << (r.completed ? "" : " (incomplete)") << ": t " << r.start_t;
        if (r.completed) out << ".." << r.end_t << ", winner " << one_based(*r.winner);
        out << ", " << r.iterations.size() << " iterations\n";
        for (const auto& it : r.iterations) {
            out << "  k=" << it.index << " t=" << it.start_t << " len=" << it.length << " incumbent "
                << one_based(it.incumbent) << " vs " << one_based(it.challenger);
            if (it.incumbent_worse) out << (*it.incumbent_worse ? " (worse)" : " (better)");
            if (it.winner) out << " -> " << one_based(*it.winner);
            out << '\n';
        }
    }
    out << (violations.empty() ? "structure: ok\n" : "structure: VIOLATIONS\n");
    for (const auto& v : violations) out << "  - " << v << '\n';
    return out.str();
}

std::string StructureReport::to_key_values() const {
    std::ostringstream out;
    out << "arms=" << arms << '\n';
    out << "steps=" << steps << '\n';
    out << "completed_rounds=" << completed_rounds() << '\n';
    out << "violations=" << violations.size() << '\n';
    for (const auto& r : rounds) {
        if (!r.completed) continue;
        out << "round." << r.round << ".winner=" << one_based(*r.winner) << '\n';
        out << "round." << r.round << ".iterations=" << r.iterations.size() << '\n';
        out << "round." << r.round << ".end_t=" << r.end_t << '\n';
    }
    return out.str();
}

void accumulate_iteration_stats(const StructureReport& report, IterationStats& stats) {
    for (const auto& r : report.rounds) {
        for (const auto& it : r.iterations) {
            if (!it.completed || !it.incumbent_worse) continue;
            if (*it.incumbent_worse) {
                ++stats.worse_incumbent_iterations;
                if (it.incumbent_lost()) ++stats.worse_incumbent_losses;
            } else {
                stats.better_incumbent_length.push(static_cast<double>(it.length));
            }
        }
    }
}

bool TailBoundReport::all_pass() const noexcept {
    return std::all_of(rows.begin(), rows.end(), [](const TailBoundRow& r) { return r.pass; });
}

TailBoundReport tail_bound_check(std::span<const Trace> traces, std::size_t arms, double p, std::int64_t max_level,
                                 Arm best) {
    if (!(p > 0.5 && p <= 1.0)) {
        throw std::invalid_argument("tail bound needs 0.5 < p <= 1");
    }
    if (best >= arms) {
        throw std::invalid_argument("best arm outside the arm range");
    }
    std::vector<std::int64_t> lowest;
    lowest.reserve(traces.size());
    for (const auto& trace : traces) {
        std::int64_t c = 0;
        std::int64_t low = 0;
        for (const auto& e : trace) {
            if (!e.winner || (e.i != best && e.j != best) || e.i == e.j) continue;
            c += *e.winner == best ? 1 : -1;
            low = std::min(low, c);
        }
        lowest.push_back(low);
    }

    TailBoundReport report;
    const double ratio = (1.0 - p) / p;
    const double count = static_cast<double>(traces.size());
    for (std::int64_t level = 1; level <= max_level; ++level) {
        TailBoundRow row;
        row.level = level;
        row.traces = traces.size();
        row.hits = static_cast<std::uint64_t>(
            std::count_if(lowest.begin(), lowest.end(), [&](std::int64_t low) { return low <= -level; }));
        row.empirical = count > 0 ? static_cast<double>(row.hits) / count : 0.0;
        row.bound = std::pow(ratio, static_cast<double>(level));
        row.standard_error = count > 0 ? std::sqrt(row.bound * (1.0 - row.bound) / count) : 0.0;
        row.pass = row.empirical <= row.bound + 3.0 * row.standard_error;
        report.rows.push_back(row);
    }
    return report;
}

}  // namespace duelbench
