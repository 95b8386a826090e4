#pragma once

#include <Eigen/Core>

#include <stdexcept>
#include <string>
#include <vector>

namespace ttw {

// Dense row-major matrix; rows are series / warp rows and are contiguous.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Index = Eigen::Index;

// Thrown for malformed inputs (shape, finiteness, label, config violations).
struct ValidationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Thrown for filesystem-level failures (open/read/write).
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A set of equal-length series with optional integer class labels.
/// Sample positions are 1-based in all formulas and diagnostics: series n
/// covers positions 1..T.
struct Dataset {
  std::vector<std::vector<double>> series;
  std::vector<int> labels;  // empty, or one label per series

  std::size_t size() const { return series.size(); }
  std::size_t length() const { return series.empty() ? 0 : series.front().size(); }
  bool has_labels() const { return !labels.empty(); }
};

/// Checks N >= 1, equal lengths >= 2, finiteness and label count.
/// Throws ValidationError naming the first violation with 1-based indices.
void validate_dataset(const Dataset& dataset);

/// Distinct labels in ascending order (empty for unlabeled datasets).
std::vector<int> class_labels(const Dataset& dataset);

/// Subset of the dataset holding only series labeled `label`.
Dataset series_of_class(const Dataset& dataset, int label);

}  // namespace ttw
