#pragma once

#include "ttw/dst_warp.hpp"
#include "ttw/loss.hpp"
#include "ttw/sinc.hpp"
#include "ttw/types.hpp"

#include <cstdint>
#include <functional>

namespace ttw {

struct TrainConfig {
  Index k = 8;                  // DST components per series
  int iterations = 100;         // fixed iteration count I
  double step_size = 0.01;      // Adam step size
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  int window_half_width = 10;   // sinc truncation window
  std::uint64_t seed = 0;       // reserved for randomized tie-breaking
  bool exact_gradient = false;  // differentiate through the centroid too
  double stop_tolerance = 0.0;  // optional relative loss-change stop, 0 = off

  SincWindow window() const { return {window_half_width}; }

  /// Throws ValidationError on any out-of-range field.
  void validate() const;
};

struct AdamState {
  Matrix first_moment;   // N x K
  Matrix second_moment;  // N x K
  long step_count = 0;
};

struct ForwardResult {
  Matrix synchronized;           // N x T
  std::vector<double> centroid;  // T
  double loss = 0.0;
  Matrix tau;                    // N x T, post-projection
  ProjectionStats projection;
};

struct AlignmentResult {
  Matrix synchronized;            // N x T, under the final coefficients
  std::vector<double> centroid;   // T
  std::vector<double> loss_trace; // loss before each update, one per iteration
  Matrix warps;                   // N x T, final projected warps
  Matrix coefficients;            // N x K, final DST coefficients
  ProjectionStats projection;     // stats of the final forward pass
};

/// Generates warps from the coefficients, projects them monotone, warps every
/// series and evaluates the within-group loss.
ForwardResult forward(const Matrix& signals, const Matrix& coefficients, const DstBasis& basis,
                      const TrainConfig& config);

/// Gradient of the within-group loss with respect to the coefficients:
/// dD/dtau[n][t] = (2/NT)(x~[n][t] - y[t]) * d x~[n][t]/d tau[n][t],
/// then gradient = dD/dtau * B. The projection is treated as identity in the
/// backward pass. With exact_gradient the residual column means (identically
/// zero in real arithmetic) are subtracted, differentiating through y.
Matrix backward(const Matrix& signals, const ForwardResult& fwd, const DstBasis& basis,
                const TrainConfig& config);

/// One Adam step with bias correction; updates coefficients and state in place.
void adam_update(Matrix& coefficients, const Matrix& gradient, AdamState& state,
                 const TrainConfig& config);

using IterationCallback = std::function<void(int iteration, double loss)>;

/// Full optimization: zero-initialized coefficients, `iterations` rounds of
/// forward/backward/adam_update, then a final forward so the returned signals
/// match the final coefficients. Aborts with a diagnostic naming the
/// iteration if the loss turns non-finite.
AlignmentResult train(const Dataset& dataset, const TrainConfig& config,
                      const IterationCallback& on_iteration = {});

/// Dataset rows as a matrix (validates first).
Matrix dataset_matrix(const Dataset& dataset);

}  // namespace ttw
