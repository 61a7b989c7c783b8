#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "duelbench/policy.hpp"
#include "duelbench/prefmat.hpp"
#include "duelbench/regret.hpp"

namespace duelbench {

/// Where an experiment's preference matrix comes from. Textual forms:
///   mslr | sushi | cyclic          embedded dataset
///   uniform(50, 0.8)               uniform_matrix
///   probit([1, 0.5, 0.2], 0.7)     probit_matrix(utilities, sigma)
///   anything else                  path to a matrix file
struct MatrixSource {
    enum class Kind { dataset, file, uniform, probit };

    Kind kind = Kind::dataset;
    std::string name;  // dataset name or file path
    std::size_t arms = 0;
    double p = 0.0;
    std::vector<double> utilities;
    double sigma = 0.0;

    /// Canonical textual form; parse_matrix_source(to_text()) round-trips.
    std::string to_text() const;
    /// Short comma-free label for CSV output.
    std::string label() const;
};

MatrixSource parse_matrix_source(std::string_view text);
PreferenceMatrix load_matrix(const MatrixSource& source);
/// Probit sources use their own utilities; everything else derives them
/// from row 1 of the matrix.
std::vector<double> source_utilities(const MatrixSource& source, const PreferenceMatrix& matrix);

/// Declarative experiment description, read from a flat `key = value` file.
/// See configs/README.md for the schema.
struct ExperimentConfig {
    MatrixSource matrix;
    PolicySpec policy;
    std::uint64_t horizon = 1000;
    std::uint64_t replications = 100;
    std::uint64_t seed = 0;
    std::vector<RegretKind> regret{RegretKind::binary_weak};
    /// Absent means log-spaced defaults (see log_checkpoints).
    std::optional<std::vector<std::uint64_t>> checkpoints;
    /// Worker threads; 0 picks the hardware concurrency. Never affects results.
    unsigned threads = 0;

    std::vector<std::uint64_t> effective_checkpoints() const;
    /// Canonical `key = value` rendering, excluding `threads`.
    std::string to_text() const;
    /// FNV-1a 64 of to_text(), as 16 hex digits.
    std::string digest() const;
};

/// 1, 2, 5, 10, 20, 50, ... up to and including the horizon.
std::vector<std::uint64_t> log_checkpoints(std::uint64_t horizon);

/// Parse errors carry the offending line number. Throws std::invalid_argument.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig parse_config_text(std::string_view text);
ExperimentConfig parse_config_file(const std::string& path);

/// Range and consistency checks that need no matrix. Throws std::invalid_argument.
void check_config(const ExperimentConfig& config);

}  // namespace duelbench
