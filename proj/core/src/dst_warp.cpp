#include "ttw/dst_warp.hpp"

#include <cmath>
#include <numbers>

namespace ttw {

DstBasis::DstBasis(Index length, Index components) {
  if (length < 2) throw ValidationError("DST basis requires series length >= 2");
  if (components < 1) throw ValidationError("DST basis requires at least one component");
  values_.resize(length, components);
  const double denom = static_cast<double>(length - 1);
  for (Index t = 0; t < length; ++t) {
    for (Index k = 0; k < components; ++k) {
      values_(t, k) =
          std::sin(std::numbers::pi * static_cast<double>(k + 1) * static_cast<double>(t) / denom);
    }
  }
  // sin(0) and sin(pi k) are exactly zero in real arithmetic; make the fp
  // basis honor that so boundary warps are exact.
  values_.row(0).setZero();
  values_.row(length - 1).setZero();
}

Matrix coefficients_to_warps(const Matrix& coefficients, const DstBasis& basis) {
  if (coefficients.cols() != basis.components()) {
    throw ValidationError("coefficient columns (" + std::to_string(coefficients.cols()) +
                          ") do not match basis components (" +
                          std::to_string(basis.components()) + ")");
  }
  Matrix tau = coefficients * basis.values().transpose();  // N x T
  tau.rowwise() += Eigen::RowVectorXd::LinSpaced(basis.length(), 1.0,
                                                 static_cast<double>(basis.length()));
  return tau;
}

Matrix project_monotone(const Matrix& tau, ProjectionStats* stats) {
  Matrix out = tau;
  std::size_t clamped = 0;
  std::size_t violations = 0;
  const Index t_count = out.cols();
  for (Index n = 0; n < out.rows(); ++n) {
    double* row = out.row(n).data();
    for (Index t = 1; t < t_count; ++t) {
      if (row[t] < row[t - 1]) {
        row[t] = row[t - 1];
        ++clamped;
      }
    }
    if (t_count > 0 && row[t_count - 1] != static_cast<double>(t_count)) ++violations;
  }
  if (stats) {
    stats->clamped_samples = clamped;
    stats->boundary_violations = violations;
  }
  return out;
}

}  // namespace ttw
