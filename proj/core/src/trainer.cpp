#include "ttw/trainer.hpp"

#include "ttw/parallel.hpp"

#include <cmath>
#include <string>

namespace ttw {

void TrainConfig::validate() const {
  if (k < 1) throw ValidationError("k must be >= 1");
  if (iterations < 1) throw ValidationError("iterations must be >= 1");
  if (!(step_size > 0.0)) throw ValidationError("step size must be positive");
  if (!(beta1 > 0.0 && beta1 < 1.0)) throw ValidationError("beta1 must lie in (0, 1)");
  if (!(beta2 > 0.0 && beta2 < 1.0)) throw ValidationError("beta2 must lie in (0, 1)");
  if (!(epsilon > 0.0)) throw ValidationError("epsilon must be positive");
  if (window_half_width < 1) throw ValidationError("window half-width must be >= 1");
  if (stop_tolerance < 0.0) throw ValidationError("stop tolerance must be >= 0");
}

Matrix dataset_matrix(const Dataset& dataset) {
  validate_dataset(dataset);
  const Index n = static_cast<Index>(dataset.size());
  const Index t = static_cast<Index>(dataset.length());
  Matrix m(n, t);
  for (Index i = 0; i < n; ++i) {
    const auto& row = dataset.series[static_cast<std::size_t>(i)];
    for (Index j = 0; j < t; ++j) m(i, j) = row[static_cast<std::size_t>(j)];
  }
  return m;
}

ForwardResult forward(const Matrix& signals, const Matrix& coefficients, const DstBasis& basis,
                      const TrainConfig& config) {
  if (signals.rows() != coefficients.rows()) {
    throw ValidationError("coefficient rows do not match series count");
  }
  if (signals.cols() != basis.length()) {
    throw ValidationError("basis length does not match series length");
  }
  ForwardResult out;
  out.tau = project_monotone(coefficients_to_warps(coefficients, basis), &out.projection);
  out.synchronized.resize(signals.rows(), signals.cols());

  const std::size_t length = static_cast<std::size_t>(signals.cols());
  const SincWindow window = config.window();
  parallel::for_each_index(static_cast<std::size_t>(signals.rows()), [&](std::size_t n) {
    const Index ni = static_cast<Index>(n);
    warp_signal({signals.row(ni).data(), length}, {out.tau.row(ni).data(), length}, window,
                {out.synchronized.row(ni).data(), length});
  });

  GroupLoss loss = within_group_loss(out.synchronized);
  out.loss = loss.value;
  out.centroid = std::move(loss.centroid);
  return out;
}

Matrix backward(const Matrix& signals, const ForwardResult& fwd, const DstBasis& basis,
                const TrainConfig& config) {
  const Index n_series = signals.rows();
  const Index length = signals.cols();
  const std::size_t len = static_cast<std::size_t>(length);
  const double scale = 2.0 / static_cast<double>(n_series * length);
  const SincWindow window = config.window();

  Matrix warp_deriv(n_series, length);  // d x~[n][t] / d tau[n][t]
  parallel::for_each_index(static_cast<std::size_t>(n_series), [&](std::size_t n) {
    const Index ni = static_cast<Index>(n);
    warp_signal_derivative({signals.row(ni).data(), len}, {fwd.tau.row(ni).data(), len}, window,
                           {warp_deriv.row(ni).data(), len});
  });

  Matrix residual = fwd.synchronized;
  for (Index n = 0; n < n_series; ++n) {
    for (Index t = 0; t < length; ++t) residual(n, t) -= fwd.centroid[static_cast<std::size_t>(t)];
  }
  if (config.exact_gradient) {
    // Total derivative through y[t]: subtract the residual column mean, which
    // is identically zero in real arithmetic and rounding noise in fp.
    for (Index t = 0; t < length; ++t) {
      double mean = 0.0;
      for (Index n = 0; n < n_series; ++n) mean += residual(n, t);
      mean /= static_cast<double>(n_series);
      for (Index n = 0; n < n_series; ++n) residual(n, t) -= mean;
    }
  }

  const Matrix loss_by_tau = scale * residual.cwiseProduct(warp_deriv);  // dD / dtau
  return loss_by_tau * basis.values();                                   // N x K
}

void adam_update(Matrix& coefficients, const Matrix& gradient, AdamState& state,
                 const TrainConfig& config) {
  if (state.first_moment.rows() != coefficients.rows() ||
      state.first_moment.cols() != coefficients.cols()) {
    state.first_moment = Matrix::Zero(coefficients.rows(), coefficients.cols());
    state.second_moment = Matrix::Zero(coefficients.rows(), coefficients.cols());
    state.step_count = 0;
  }
  state.step_count += 1;
  const double b1 = config.beta1;
  const double b2 = config.beta2;
  state.first_moment = b1 * state.first_moment + (1.0 - b1) * gradient;
  state.second_moment.array() =
      b2 * state.second_moment.array() + (1.0 - b2) * gradient.array().square();
  const double correction1 = 1.0 - std::pow(b1, static_cast<double>(state.step_count));
  const double correction2 = 1.0 - std::pow(b2, static_cast<double>(state.step_count));
  coefficients.array() -=
      config.step_size * (state.first_moment.array() / correction1) /
      ((state.second_moment.array() / correction2).sqrt() + config.epsilon);
}

AlignmentResult train(const Dataset& dataset, const TrainConfig& config,
                      const IterationCallback& on_iteration) {
  config.validate();
  const Matrix signals = dataset_matrix(dataset);
  const DstBasis basis(signals.cols(), config.k);

  Matrix coefficients = Matrix::Zero(signals.rows(), config.k);
  AdamState state;
  std::vector<double> trace;
  trace.reserve(static_cast<std::size_t>(config.iterations));

  for (int i = 1; i <= config.iterations; ++i) {
    ForwardResult fwd = forward(signals, coefficients, basis, config);
    if (!std::isfinite(fwd.loss)) {
      throw std::runtime_error("iteration " + std::to_string(i) + ": loss is not finite");
    }
    trace.push_back(fwd.loss);
    if (on_iteration) on_iteration(i, fwd.loss);
    if (config.stop_tolerance > 0.0 && trace.size() >= 2) {
      const double prev = trace[trace.size() - 2];
      if (std::abs(prev - fwd.loss) <= config.stop_tolerance * std::max(std::abs(prev), 1e-300)) {
        break;
      }
    }
    const Matrix gradient = backward(signals, fwd, basis, config);
    adam_update(coefficients, gradient, state, config);
  }

  ForwardResult final_pass = forward(signals, coefficients, basis, config);
  AlignmentResult result;
  result.synchronized = std::move(final_pass.synchronized);
  result.centroid = std::move(final_pass.centroid);
  result.loss_trace = std::move(trace);
  result.warps = std::move(final_pass.tau);
  result.coefficients = std::move(coefficients);
  result.projection = final_pass.projection;
  return result;
}

}  // namespace ttw
