#pragma once

#include "scpd/types.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace scpd {

/// Independent Gaussian coordinates whose mean and standard deviation switch
/// after observation `tau`.
struct SyntheticSpec {
    int example = 0;  // 1..4, or 0 for a custom stream
    Vector pre_mean;
    Vector pre_std;
    Vector post_mean;
    Vector post_std;
    std::size_t tau = 150;
    std::size_t length = 300;

    Index dim() const { return pre_mean.size(); }
};

void validate(const SyntheticSpec& spec);

/// Examples 1..4: T = 300, change after 150.
SyntheticSpec synthetic_example(int id);

/// Deterministic for a given seed. Row t (0-based) follows the post-change law iff t >= tau.
std::vector<Vector> generate(const SyntheticSpec& spec, std::uint64_t seed);

/// `length` draws from the pre-change law only.
std::vector<Vector> generate_null(const SyntheticSpec& spec, std::uint64_t seed,
                                  std::size_t length);

/// Tuned constant-eta hyperparameters for the synthetic examples.
struct ExampleParams {
    double lambda = 1.0;
    double alpha = 0.0;
    double eta = 1.0;
    double threshold = 0.0;
};

ExampleParams example_params(int id);

enum class Normalize { None, MaxAbs };

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t row, std::size_t column)
        : std::runtime_error(what), row_(row), column_(column) {}

    /// 1-based line number and column in the file.
    std::size_t row() const { return row_; }
    std::size_t column() const { return column_; }

private:
    std::size_t row_;
    std::size_t column_;
};

/// Reads a comma-separated numeric table, one observation per line. A first line
/// that does not parse as numbers is treated as a header. Blank lines are skipped.
/// Throws std::runtime_error when the file cannot be opened and ParseError for
/// ragged rows or non-numeric cells.
std::vector<Vector> ingest_csv(const std::string& path, Normalize normalize = Normalize::None);

/// Divides every column by its largest absolute value; all-zero columns are kept.
void normalize_max_abs(std::vector<Vector>& rows);

/// Sorted positive integers, one or more per line (commas or whitespace).
std::vector<std::size_t> read_annotations(const std::string& path);

}  // namespace scpd
