#include "ttw/sinc.hpp"

#include <cassert>
#include <cmath>
#include <numbers>

namespace ttw {

namespace {

constexpr double kPi = std::numbers::pi;

// Integer snapping is only meaningful where llround is exact.
constexpr double kSnapLimit = 1e15;

inline bool is_exact_integer(double t) {
  return std::floor(t) == t && std::abs(t) < kSnapLimit;
}

}  // namespace

double sinc(double t) {
  if (is_exact_integer(t)) {
    return t == 0.0 ? 1.0 : 0.0;
  }
  const double pt = kPi * t;
  return std::sin(pt) / pt;
}

double sinc_derivative(double t) {
  if (is_exact_integer(t)) {
    if (t == 0.0) return 0.0;
    const long long j = std::llround(t);
    return ((j & 1LL) ? -1.0 : 1.0) / t;  // (-1)^j / j
  }
  const double pt = kPi * t;
  return (pt * std::cos(pt) - std::sin(pt)) / (pt * t);
}

void warp_signal_with_derivative(std::span<const double> x, std::span<const double> tau,
                                 SincWindow window, std::span<double> warped,
                                 std::span<double> derivative) {
  const long long n = static_cast<long long>(x.size());
  const long long w = window.half_width;
  assert(w >= 1);
  assert(warped.empty() || warped.size() == tau.size());
  assert(derivative.empty() || derivative.size() == tau.size());

  for (std::size_t t = 0; t < tau.size(); ++t) {
    const double pos = tau[t];
    const double fl = std::floor(pos);
    // Window in 1-based sample positions, clipped to the signal.
    long long lo = static_cast<long long>(fl) - w;
    long long hi = static_cast<long long>(fl) + w;
    if (lo < 1) lo = 1;
    if (hi > n) hi = n;

    double acc = 0.0;
    double dacc = 0.0;
    if (fl == pos && std::abs(pos) < kSnapLimit) {
      // Integer position: the kernel is an exact unit impulse at m = pos.
      const long long m = static_cast<long long>(fl);
      if (m >= 1 && m <= n) acc = x[static_cast<std::size_t>(m - 1)];
      if (!derivative.empty()) {
        for (long long mm = lo; mm <= hi; ++mm) {
          if (mm == m) continue;
          const double d = pos - static_cast<double>(mm);
          dacc += x[static_cast<std::size_t>(mm - 1)] * (((m - mm) & 1LL) ? -1.0 : 1.0) / d;
        }
      }
    } else if (lo <= hi) {
      // sin(pi(pos - m)) = (-1)^m sin(pi pos); one sin/cos serves the window.
      const double s = std::sin(kPi * pos);
      const double c = std::cos(kPi * pos);
      double sign = (lo & 1LL) ? -1.0 : 1.0;
      for (long long m = lo; m <= hi; ++m) {
        const double d = pos - static_cast<double>(m);
        const double pd = kPi * d;
        const double xm = x[static_cast<std::size_t>(m - 1)];
        acc += xm * sign * s / pd;
        if (!derivative.empty()) dacc += xm * sign * (pd * c - s) / (pd * d);
        sign = -sign;
      }
    }
    if (!warped.empty()) warped[t] = acc;
    if (!derivative.empty()) derivative[t] = dacc;
  }
}

void warp_signal(std::span<const double> x, std::span<const double> tau,
                 SincWindow window, std::span<double> out) {
  warp_signal_with_derivative(x, tau, window, out, {});
}

void warp_signal_derivative(std::span<const double> x, std::span<const double> tau,
                            SincWindow window, std::span<double> out) {
  warp_signal_with_derivative(x, tau, window, {}, out);
}

std::vector<double> warp_signal(std::span<const double> x, std::span<const double> tau,
                                SincWindow window) {
  std::vector<double> out(tau.size());
  warp_signal(x, tau, window, out);
  return out;
}

std::vector<double> warp_signal_derivative(std::span<const double> x,
                                           std::span<const double> tau, SincWindow window) {
  std::vector<double> out(tau.size());
  warp_signal_derivative(x, tau, window, out);
  return out;
}

}  // namespace ttw
