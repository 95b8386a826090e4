#include "ttw/dtw.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ttw {

namespace {

void check_series(std::span<const double> s, const char* name) {
  if (s.empty()) throw ValidationError(std::string(name) + " series is empty");
  for (std::size_t t = 0; t < s.size(); ++t) {
    if (!std::isfinite(s[t])) {
      throw ValidationError(std::string(name) + " series has a non-finite value at t=" +
                            std::to_string(t + 1));
    }
  }
}

inline double sq(double a) { return a * a; }

}  // namespace

DtwResult dtw_distance(std::span<const double> x, std::span<const double> y) {
  check_series(x, "first");
  check_series(y, "second");
  const std::size_t nx = x.size();
  const std::size_t ny = y.size();
  constexpr double kInf = std::numeric_limits<double>::infinity();

  // (nx+1) x (ny+1) accumulated-cost table with an infinite border.
  std::vector<double> table((nx + 1) * (ny + 1), kInf);
  auto cell = [&](std::size_t i, std::size_t j) -> double& { return table[i * (ny + 1) + j]; };
  cell(0, 0) = 0.0;
  for (std::size_t i = 1; i <= nx; ++i) {
    for (std::size_t j = 1; j <= ny; ++j) {
      const double best = std::min(cell(i - 1, j - 1), std::min(cell(i - 1, j), cell(i, j - 1)));
      cell(i, j) = sq(x[i - 1] - y[j - 1]) + best;
    }
  }

  DtwResult result;
  result.distance = cell(nx, ny);

  // Backtrack, preferring diagonal then vertical (x-advancing) predecessors.
  std::size_t i = nx;
  std::size_t j = ny;
  result.path.emplace_back(static_cast<Index>(i), static_cast<Index>(j));
  while (i > 1 || j > 1) {
    const double diag = cell(i - 1, j - 1);
    const double vert = cell(i - 1, j);
    const double horz = cell(i, j - 1);
    if (diag <= vert && diag <= horz) {
      --i;
      --j;
    } else if (vert <= horz) {
      --i;
    } else {
      --j;
    }
    result.path.emplace_back(static_cast<Index>(i), static_cast<Index>(j));
  }
  std::reverse(result.path.begin(), result.path.end());
  return result;
}

double dtw_cost(std::span<const double> x, std::span<const double> y) {
  check_series(x, "first");
  check_series(y, "second");
  const std::size_t nx = x.size();
  const std::size_t ny = y.size();
  constexpr double kInf = std::numeric_limits<double>::infinity();

  std::vector<double> prev(ny + 1, kInf);
  std::vector<double> curr(ny + 1, kInf);
  prev[0] = 0.0;
  for (std::size_t i = 1; i <= nx; ++i) {
    curr[0] = kInf;
    for (std::size_t j = 1; j <= ny; ++j) {
      const double best = std::min(prev[j - 1], std::min(prev[j], curr[j - 1]));
      curr[j] = sq(x[i - 1] - y[j - 1]) + best;
    }
    std::swap(prev, curr);
  }
  return prev[ny];
}

double dtw_sum(std::span<const double> candidate, const Dataset& dataset) {
  validate_dataset(dataset);
  double total = 0.0;
  for (const auto& series : dataset.series) {
    total += dtw_cost(candidate, series);
  }
  return total;
}

}  // namespace ttw
