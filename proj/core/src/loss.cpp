#include "ttw/loss.hpp"

#include <cmath>

namespace ttw {

GroupLoss within_group_loss(const Matrix& synchronized) {
  const Index n_series = synchronized.rows();
  const Index length = synchronized.cols();
  if (n_series < 1 || length < 1) {
    throw ValidationError("within_group_loss requires a nonempty matrix");
  }
  for (Index n = 0; n < n_series; ++n) {
    for (Index t = 0; t < length; ++t) {
      if (!std::isfinite(synchronized(n, t))) {
        throw ValidationError("non-finite value at (n=" + std::to_string(n + 1) +
                              ", t=" + std::to_string(t + 1) + ")");
      }
    }
  }

  GroupLoss result;
  result.centroid.assign(static_cast<std::size_t>(length), 0.0);
  for (Index n = 0; n < n_series; ++n) {
    const double* row = synchronized.row(n).data();
    for (Index t = 0; t < length; ++t) result.centroid[static_cast<std::size_t>(t)] += row[t];
  }
  const double inv_n = 1.0 / static_cast<double>(n_series);
  for (double& v : result.centroid) v *= inv_n;

  double total = 0.0;
  for (Index n = 0; n < n_series; ++n) {
    const double* row = synchronized.row(n).data();
    for (Index t = 0; t < length; ++t) {
      const double r = row[t] - result.centroid[static_cast<std::size_t>(t)];
      total += r * r;
    }
  }
  result.value = total / static_cast<double>(n_series * length);
  return result;
}

}  // namespace ttw
