#include "ttw/types.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace ttw {

void validate_dataset(const Dataset& dataset) {
  if (dataset.series.empty()) throw ValidationError("dataset contains no series");
  const std::size_t length = dataset.series.front().size();
  if (length < 2) throw ValidationError("series 1 has length " + std::to_string(length) +
                                        "; at least 2 samples required");
  for (std::size_t n = 0; n < dataset.series.size(); ++n) {
    const auto& row = dataset.series[n];
    if (row.size() != length) {
      throw ValidationError("series " + std::to_string(n + 1) + " has length " +
                            std::to_string(row.size()) + ", expected " + std::to_string(length));
    }
    for (std::size_t t = 0; t < row.size(); ++t) {
      if (!std::isfinite(row[t])) {
        throw ValidationError("non-finite value at (n=" + std::to_string(n + 1) +
                              ", t=" + std::to_string(t + 1) + ")");
      }
    }
  }
  if (!dataset.labels.empty() && dataset.labels.size() != dataset.series.size()) {
    throw ValidationError("label count " + std::to_string(dataset.labels.size()) +
                          " does not match series count " + std::to_string(dataset.series.size()));
  }
}

std::vector<int> class_labels(const Dataset& dataset) {
  std::set<int> distinct(dataset.labels.begin(), dataset.labels.end());
  return {distinct.begin(), distinct.end()};
}

Dataset series_of_class(const Dataset& dataset, int label) {
  Dataset subset;
  for (std::size_t n = 0; n < dataset.series.size(); ++n) {
    if (n < dataset.labels.size() && dataset.labels[n] == label) {
      subset.series.push_back(dataset.series[n]);
      subset.labels.push_back(label);
    }
  }
  return subset;
}

}  // namespace ttw
