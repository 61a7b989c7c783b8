#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace duelbench {

/// Arm index. Zero-based everywhere inside the library; user-facing text
/// (CLI output, reports, CSV) is one-based.
using Arm = std::size_t;

inline constexpr double kProbabilityTolerance = 1e-9;

/// Square table of duel-win probabilities: entry (i, j) is the probability
/// that arm i beats arm j. The container itself only enforces shape
/// (square, n >= 2); probabilistic structure is checked by validate().
class PreferenceMatrix {
public:
    PreferenceMatrix() = default;

    /// Throws std::invalid_argument on a non-square table or n < 2.
    explicit PreferenceMatrix(const std::vector<std::vector<double>>& rows);

    /// Builds a matrix that is symmetric by construction: `upper` holds the
    /// strictly-upper-triangular entries in row-major order
    /// (n(n-1)/2 values); the lower triangle is filled as 1 - p_ij and the
    /// diagonal with 0.5.
    static PreferenceMatrix from_upper_triangle(std::size_t n, std::span<const double> upper);

    std::size_t size() const noexcept { return n_; }
    double operator()(Arm i, Arm j) const noexcept { return p_[i * n_ + j]; }
    std::span<const double> row(Arm i) const noexcept { return {p_.data() + i * n_, n_}; }

    friend bool operator==(const PreferenceMatrix&, const PreferenceMatrix&) = default;

private:
    std::size_t n_ = 0;
    std::vector<double> p_;
};

struct ValidationReport {
    std::optional<Arm> condorcet_winner;
    bool total_order = false;
    /// min { p_ij : p_ij > 0.5 }; absent when no entry exceeds 0.5.
    std::optional<double> min_gap_p;
    std::vector<std::string> violations;

    bool structurally_valid() const noexcept { return violations.empty(); }
};

ValidationReport validate(const PreferenceMatrix& matrix);

/// p_ij = p for i < j. Requires 0.5 < p <= 1 and n >= 2.
PreferenceMatrix uniform_matrix(std::size_t n, double p);

/// u_i = 2 (1 - p_{1,i}). Requires arm 0 to be the Condorcet winner.
std::vector<double> utilities_from_matrix(const PreferenceMatrix& matrix);

/// Probit model: p_ij = Phi((u_i - u_j) / (sigma * sqrt 2)).
PreferenceMatrix probit_matrix(std::span<const double> utilities, double sigma);

/// Embedded matrices: "mslr" (5 arms), "sushi" (16 arms), "cyclic" (4 arms).
PreferenceMatrix dataset(std::string_view name);
std::vector<std::string> dataset_names();
std::string dataset_description(std::string_view name);

// Plain-text matrix files. First non-comment line is N, followed by N rows
// of N decimal values separated by single spaces. Lines starting with '#'
// are comments.
PreferenceMatrix read_matrix(std::istream& in);
PreferenceMatrix read_matrix_file(const std::string& path);
void write_matrix(std::ostream& out, const PreferenceMatrix& matrix);

/// Formats a probability with up to 10 significant digits, shortest form
/// ("0.5", "0.465"). Shared by the matrix writer and CSV output.
std::string format_decimal(double value);

/// Human-readable report, arms printed one-based.
std::string describe(const ValidationReport& report);

}  // namespace duelbench
