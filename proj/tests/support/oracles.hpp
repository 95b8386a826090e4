// Test-only oracles and data generators. Everything here is independent of
// the library's computation paths: the DTW oracle enumerates paths, the warp
// oracle evaluates the untruncated interpolation sum, gradients come from
// central differences.
#pragma once

#include "ttw/dst_warp.hpp"
#include "ttw/sinc.hpp"
#include "ttw/types.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <span>
#include <vector>

namespace ttw::testing {

// ---------------------------------------------------------------------------
// DTW oracle: exhaustive enumeration of monotone paths, lengths <= 10.

inline double dtw_brute_force(std::span<const double> x, std::span<const double> y) {
  if (x.size() > 10 || y.size() > 10) {
    throw std::invalid_argument("brute-force DTW is limited to lengths <= 10");
  }
  const std::function<double(std::size_t, std::size_t)> best = [&](std::size_t i,
                                                                   std::size_t j) -> double {
    const double cost = (x[i] - y[j]) * (x[i] - y[j]);
    if (i == 0 && j == 0) return cost;
    double prev = std::numeric_limits<double>::infinity();
    if (i > 0 && j > 0) prev = std::min(prev, best(i - 1, j - 1));
    if (i > 0) prev = std::min(prev, best(i - 1, j));
    if (j > 0) prev = std::min(prev, best(i, j - 1));
    return cost + prev;
  };
  return best(x.size() - 1, y.size() - 1);
}

// ---------------------------------------------------------------------------
// Warp oracle: the full interpolation sum over m = 1..T, no truncation.

inline std::vector<double> warp_signal_untruncated(std::span<const double> x,
                                                   std::span<const double> tau) {
  std::vector<double> out(tau.size(), 0.0);
  for (std::size_t t = 0; t < tau.size(); ++t) {
    double acc = 0.0;
    for (std::size_t m = 1; m <= x.size(); ++m) {
      acc += x[m - 1] * sinc(tau[t] - static_cast<double>(m));
    }
    out[t] = acc;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Central finite differences.

inline double central_difference(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

inline double relative_error(double actual, double reference, double floor = 1e-5) {
  return std::abs(actual - reference) / std::max(std::abs(reference), floor);
}

// ---------------------------------------------------------------------------
// Deterministic generators.

using Rng = std::mt19937_64;

inline std::vector<double> gaussian_series(Rng& rng, std::size_t length, double sigma = 1.0) {
  std::normal_distribution<double> normal(0.0, sigma);
  std::vector<double> out(length);
  for (double& v : out) v = normal(rng);
  return out;
}

// Smooth low-frequency mixture with peak amplitude `amplitude`; the family
// used by the truncation-fidelity checks (window-edge terms scale with the
// signal amplitude, so the family pins it).
inline std::vector<double> smooth_series(Rng& rng, std::size_t length, double amplitude = 0.35) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double coeff[3], freq[3], phase[3];
  double total = 0.0;
  for (int j = 0; j < 3; ++j) {
    coeff[j] = 0.1 + 0.9 * unit(rng);
    freq[j] = 0.5 + 2.5 * unit(rng);
    phase[j] = 2.0 * std::numbers::pi * unit(rng);
    total += coeff[j];
  }
  for (int j = 0; j < 3; ++j) coeff[j] *= amplitude / total;
  std::vector<double> out(length);
  for (std::size_t t = 0; t < length; ++t) {
    const double u = static_cast<double>(t) / static_cast<double>(length - 1);
    double v = 0.0;
    for (int j = 0; j < 3; ++j) {
      v += coeff[j] * std::sin(2.0 * std::numbers::pi * freq[j] * u + phase[j]);
    }
    out[t] = v;
  }
  return out;
}

// Two-bump template over positions 1..T (continuous argument).
inline std::function<double(double)> bump_template(double length) {
  return [length](double u) {
    const double a = (u - 0.35 * length) / (0.06 * length);
    const double b = (u - 0.68 * length) / (0.05 * length);
    return std::exp(-0.5 * a * a) + 0.6 * std::exp(-0.5 * b * b);
  };
}

// Narrower bumps; sharper features make sub-sample warp jitter visible.
inline std::function<double(double)> narrow_bump_template(double length) {
  return [length](double u) {
    const double a = (u - 0.30 * length) / (0.035 * length);
    const double b = (u - 0.62 * length) / (0.03 * length);
    return std::exp(-0.5 * a * a) + 0.7 * std::exp(-0.5 * b * b);
  };
}

inline std::function<double(double)> sine_template(double length) {
  return [length](double u) {
    return std::sin(4.0 * std::numbers::pi * (u - 1.0) / (length - 1.0));
  };
}

inline std::function<double(double)> square_template(double length) {
  return [length](double u) {
    const double s = std::sin(4.0 * std::numbers::pi * (u - 1.0) / (length - 1.0));
    return s >= 0.0 ? 1.0 : -1.0;
  };
}

// One template instance warped by a k_true-component DST warp (coefficients
// drawn from `draw_coefficients`), then noise added.
inline std::vector<double> warped_instance(Rng& rng, std::size_t length,
                                           const std::function<double(double)>& shape,
                                           const std::vector<double>& coefficients,
                                           double noise_sigma) {
  const std::size_t k_true = coefficients.size();
  const DstBasis basis(static_cast<Index>(length), static_cast<Index>(k_true));
  std::normal_distribution<double> normal(0.0, noise_sigma);
  std::vector<double> out(length);
  double running = -std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < length; ++t) {
    double tau = static_cast<double>(t + 1);
    for (std::size_t k = 0; k < k_true; ++k) {
      tau += coefficients[k] * basis.values()(static_cast<Index>(t), static_cast<Index>(k));
    }
    running = std::max(running, tau);  // generate monotone warps
    out[t] = shape(running) + (noise_sigma > 0.0 ? normal(rng) : 0.0);
  }
  return out;
}

// A set of warped copies of a template, coefficients ~ U(-amplitude, amplitude).
inline Dataset warped_set(Rng& rng, std::size_t length, std::size_t n_series,
                          const std::function<double(double)>& shape, std::size_t k_true,
                          double amplitude, double noise_sigma, int label = 0) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  Dataset out;
  for (std::size_t n = 0; n < n_series; ++n) {
    std::vector<double> coefficients(k_true);
    for (double& a : coefficients) a = amplitude * unit(rng);
    out.series.push_back(warped_instance(rng, length, shape, coefficients, noise_sigma));
    out.labels.push_back(label);
  }
  return out;
}

// Variant for the K-tuning construction: |a2| is forced into the upper half
// of the range so a single-component model cannot represent the warp.
inline Dataset warped_set_k2(Rng& rng, std::size_t length, std::size_t n_series,
                             const std::function<double(double)>& shape, double amplitude,
                             double noise_sigma) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Dataset out;
  for (std::size_t n = 0; n < n_series; ++n) {
    const double a1 = amplitude * (2.0 * unit(rng) - 1.0);
    const double magnitude = amplitude * (0.5 + 0.5 * unit(rng));
    const double a2 = unit(rng) < 0.5 ? magnitude : -magnitude;
    out.series.push_back(warped_instance(rng, length, shape, {a1, a2}, noise_sigma));
    out.labels.push_back(0);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Timing.

inline double median_seconds(std::vector<double> samples) {
  std::sort(samples.begin(), samples.end());
  return samples[samples.size() / 2];
}

template <typename F>
double time_seconds(F&& f) {
  const auto start = std::chrono::steady_clock::now();
  f();
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  return elapsed.count();
}

}  // namespace ttw::testing
