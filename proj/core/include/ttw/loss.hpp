#pragma once

#include "ttw/types.hpp"

namespace ttw {

struct GroupLoss {
  double value = 0.0;             // within-group MSE
  std::vector<double> centroid;   // pointwise mean, length T
};

/// Within-group mean square error of synchronized signals (N x T):
/// loss = (1/NT) sum_n sum_t (x[n][t] - y[t])^2 with y the pointwise mean.
/// Throws ValidationError naming (n, t), 1-based, for non-finite entries.
GroupLoss within_group_loss(const Matrix& synchronized);

}  // namespace ttw
