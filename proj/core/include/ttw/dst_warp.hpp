#pragma once

#include "ttw/types.hpp"

namespace ttw {

/// Cached sine basis B[t][k] = sin(pi k (t-1) / (T-1)) for t in 1..T,
/// k in 1..K. Rows t = 1 and t = T are exactly zero, which pins every
/// generated warp to tau[1] = 1 and tau[T] = T.
class DstBasis {
 public:
  DstBasis(Index length, Index components);

  Index length() const { return values_.rows(); }
  Index components() const { return values_.cols(); }
  const Matrix& values() const { return values_; }

 private:
  Matrix values_;  // T x K
};

/// The Jacobian d tau[t] / d a[k]; identical for every series, equal to the
/// basis matrix itself.
inline const Matrix& warp_jacobian(const DstBasis& basis) { return basis.values(); }

/// tau[n][t] = t + sum_k A[n][k] B[t][k] (pre-projection). A is N x K.
Matrix coefficients_to_warps(const Matrix& coefficients, const DstBasis& basis);

struct ProjectionStats {
  std::size_t clamped_samples = 0;    // entries raised by the monotone clamp
  std::size_t boundary_violations = 0;  // rows whose clamped tau[T] != T
};

/// Left-to-right monotone clamp per row: tau[t] < tau[t-1] => tau[t] = tau[t-1].
/// The clamp can push a row's final value above T; such rows are counted in
/// stats rather than re-normalized.
Matrix project_monotone(const Matrix& tau, ProjectionStats* stats = nullptr);

}  // namespace ttw
