#pragma once

#include "ttw/types.hpp"

#include <span>
#include <utility>
#include <vector>

namespace ttw {

/// DTW outcome: minimal total squared-difference cost along a monotone path
/// with steps {(1,0),(0,1),(1,1)}, plus one optimal path in 1-based index
/// pairs from (1,1) to (Tx,Ty). Ties prefer diagonal, then vertical
/// (x-advancing) steps; the distance itself is tie-independent.
struct DtwResult {
  double distance = 0.0;
  std::vector<std::pair<Index, Index>> path;
};

/// Unconstrained DTW over the squared-difference cost matrix, no window, no
/// normalization. Lengths may differ; series must be nonempty and finite.
DtwResult dtw_distance(std::span<const double> x, std::span<const double> y);

/// Distance only, O(min(Tx,Ty)) memory; identical value to dtw_distance.
double dtw_cost(std::span<const double> x, std::span<const double> y);

/// Sum of DTW distances from the candidate to every series in the dataset.
double dtw_sum(std::span<const double> candidate, const Dataset& dataset);

}  // namespace ttw
