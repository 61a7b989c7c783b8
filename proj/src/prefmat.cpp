#include "duelbench/prefmat.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace duelbench {

PreferenceMatrix::PreferenceMatrix(const std::vector<std::vector<double>>& rows) : n_(rows.size()) {
    if (n_ < 2) {
        throw std::invalid_argument("preference matrix needs at least 2 arms, got " + std::to_string(n_));
    }
    p_.reserve(n_ * n_);
    for (std::size_t i = 0; i < n_; ++i) {
        if (rows[i].size() != n_) {
            throw std::invalid_argument("preference matrix is not square: row " + std::to_string(i + 1) +
                                        " has " + std::to_string(rows[i].size()) + " entries, expected " +
                                        std::to_string(n_));
        }
        p_.insert(p_.end(), rows[i].begin(), rows[i].end());
    }
}

PreferenceMatrix PreferenceMatrix::from_upper_triangle(std::size_t n, std::span<const double> upper) {
    if (n < 2) {
        throw std::invalid_argument("preference matrix needs at least 2 arms");
    }
    if (upper.size() != n * (n - 1) / 2) {
        throw std::invalid_argument("upper triangle for " + std::to_string(n) + " arms needs " +
                                    std::to_string(n * (n - 1) / 2) + " entries, got " +
                                    std::to_string(upper.size()));
    }
    PreferenceMatrix m;
    m.n_ = n;
    m.p_.assign(n * n, 0.5);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            m.p_[i * n + j] = upper[k];
            m.p_[j * n + i] = 1.0 - upper[k];
            ++k;
        }
    }
    return m;
}

namespace {

bool favours(double p) { return p > 0.5 + kProbabilityTolerance; }

std::string arm_label(Arm a) { return std::to_string(a + 1); }

}  // namespace

ValidationReport validate(const PreferenceMatrix& matrix) {
    const std::size_t n = matrix.size();
    if (n < 2) {
        throw std::invalid_argument("cannot validate a matrix with fewer than 2 arms");
    }
    ValidationReport report;

    for (Arm i = 0; i < n; ++i) {
        for (Arm j = 0; j < n; ++j) {
            const double p = matrix(i, j);
            const std::string cell = "p(" + arm_label(i) + "," + arm_label(j) + ")";
            if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
                report.violations.push_back(cell + " = " + format_decimal(p) + " is outside [0,1]");
                continue;
            }
            if (i == j) {
                if (std::abs(p - 0.5) > kProbabilityTolerance) {
                    report.violations.push_back(cell + " = " + format_decimal(p) + " but the diagonal must be 0.5");
                }
                continue;
            }
            if (i < j) {
                const double sum = p + matrix(j, i);
                if (std::abs(sum - 1.0) > kProbabilityTolerance) {
                    report.violations.push_back(cell + " + p(" + arm_label(j) + "," + arm_label(i) +
                                                ") = " + format_decimal(sum) + ", expected 1");
                }
                if (std::abs(p - 0.5) <= kProbabilityTolerance) {
                    report.violations.push_back(cell + " = 0.5: arms " + arm_label(i) + " and " + arm_label(j) +
                                                " are indistinguishable");
                }
            }
            if (favours(p)) {
                report.min_gap_p = report.min_gap_p ? std::min(*report.min_gap_p, p) : p;
            }
        }
    }

    std::vector<std::size_t> wins(n, 0);
    for (Arm i = 0; i < n; ++i) {
        for (Arm j = 0; j < n; ++j) {
            if (i != j && favours(matrix(i, j))) ++wins[i];
        }
    }
    for (Arm i = 0; i < n; ++i) {
        if (wins[i] == n - 1) {
            report.condorcet_winner = i;
            break;
        }
    }

    // A strict total order forces win counts n-1, n-2, ..., 0, so sorting by
    // win count and checking every ordered pair is enough.
    std::vector<Arm> order(n);
    std::iota(order.begin(), order.end(), Arm{0});
    std::stable_sort(order.begin(), order.end(), [&](Arm a, Arm b) { return wins[a] > wins[b]; });
    bool consistent = true;
    for (std::size_t a = 0; a < n && consistent; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            if (!favours(matrix(order[a], order[b]))) {
                consistent = false;
                break;
            }
        }
    }
    report.total_order = consistent;
    return report;
}

PreferenceMatrix uniform_matrix(std::size_t n, double p) {
    if (n < 2) {
        throw std::invalid_argument("uniform matrix needs at least 2 arms");
    }
    if (!(p > 0.5 && p <= 1.0)) {
        throw std::invalid_argument("uniform matrix probability must lie in (0.5, 1], got " + format_decimal(p));
    }
    std::vector<double> upper(n * (n - 1) / 2, p);
    return PreferenceMatrix::from_upper_triangle(n, upper);
}

std::vector<double> utilities_from_matrix(const PreferenceMatrix& matrix) {
    const auto report = validate(matrix);
    if (report.condorcet_winner != Arm{0}) {
        throw std::invalid_argument("utility model requires arm 1 to be the Condorcet winner");
    }
    std::vector<double> u(matrix.size());
    u[0] = 1.0;
    for (Arm i = 1; i < matrix.size(); ++i) {
        u[i] = 2.0 * (1.0 - matrix(0, i));
    }
    return u;
}

PreferenceMatrix probit_matrix(std::span<const double> utilities, double sigma) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw std::invalid_argument("probit sigma must be positive, got " + format_decimal(sigma));
    }
    const std::size_t n = utilities.size();
    if (n < 2) {
        throw std::invalid_argument("probit model needs at least 2 utilities");
    }
    const double scale = sigma * std::sqrt(2.0);
    std::vector<double> upper;
    upper.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double z = (utilities[i] - utilities[j]) / scale;
            upper.push_back(0.5 * std::erfc(-z / std::sqrt(2.0)));
        }
    }
    return PreferenceMatrix::from_upper_triangle(n, upper);
}

PreferenceMatrix read_matrix(std::istream& in) {
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        lines.push_back(line);
    }
    if (lines.empty()) {
        throw std::invalid_argument("matrix file is empty");
    }
    std::size_t n = 0;
    {
        std::istringstream header(lines[0]);
        long long declared = 0;
        std::string extra;
        if (!(header >> declared) || (header >> extra) || declared < 2) {
            throw std::invalid_argument("matrix file must start with the arm count N >= 2, got '" + lines[0] + "'");
        }
        n = static_cast<std::size_t>(declared);
    }
    if (lines.size() - 1 != n) {
        throw std::invalid_argument("matrix file declares N = " + std::to_string(n) + " but has " +
                                    std::to_string(lines.size() - 1) + " rows");
    }
    std::vector<std::vector<double>> rows(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::istringstream row(lines[i + 1]);
        std::string token;
        while (row >> token) {
            double value = 0.0;
            const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
            if (ec != std::errc{} || ptr != token.data() + token.size()) {
                throw std::invalid_argument("matrix row " + std::to_string(i + 1) + ": '" + token +
                                            "' is not a number");
            }
            rows[i].push_back(value);
        }
    }
    return PreferenceMatrix(rows);
}

PreferenceMatrix read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open matrix file '" + path + "'");
    }
    return read_matrix(in);
}

void write_matrix(std::ostream& out, const PreferenceMatrix& matrix) {
    // Shortest round-trip form, so a written matrix reads back bit for bit.
    out << matrix.size() << '\n';
    char buf[64];
    for (Arm i = 0; i < matrix.size(); ++i) {
        for (Arm j = 0; j < matrix.size(); ++j) {
            if (j) out << ' ';
            const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, matrix(i, j));
            out << std::string_view(buf, ec == std::errc{} ? static_cast<std::size_t>(ptr - buf) : 0);
        }
        out << '\n';
    }
}

std::string format_decimal(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 10);
    if (ec != std::errc{}) {
        return "nan";
    }
    return std::string(buf, ptr);
}

std::string describe(const ValidationReport& report) {
    std::ostringstream out;
    out << "condorcet_winner = " << (report.condorcet_winner ? arm_label(*report.condorcet_winner) : "none") << '\n';
    out << "total_order = " << (report.total_order ? "true" : "false") << '\n';
    out << "min_gap_p = " << (report.min_gap_p ? format_decimal(*report.min_gap_p) : "none") << '\n';
    out << "violations = " << report.violations.size() << '\n';
    for (const auto& v : report.violations) {
        out << "  - " << v << '\n';
    }
    return out.str();
}

}  // namespace duelbench
