#pragma once

#include <span>
#include <vector>

namespace ttw {

/// Truncation window of the warping kernel: the sum runs over
/// floor(tau) - half_width .. floor(tau) + half_width.
struct SincWindow {
  int half_width = 10;
};

/// sin(pi t) / (pi t), with sinc(0) = 1.
/// Exact-integer arguments return the exact limit values 0/1 (fp sin(pi*j)
/// is not zero), so integer-position warps reproduce samples bit-for-bit.
double sinc(double t);

/// d/dt sinc(t) = (pi t cos(pi t) - sin(pi t)) / (pi t^2), 0 at t = 0.
/// Exact-integer arguments return the exact value (-1)^j / j.
double sinc_derivative(double t);

/// Warps one signal: out[t] = sum_m x[m] sinc(tau[t] - m) over the truncated
/// window, positions 1-based, samples outside 1..T contributing zero.
/// Out-of-range tau values are legal and only shrink the in-range support.
void warp_signal(std::span<const double> x, std::span<const double> tau,
                 SincWindow window, std::span<double> out);

/// Derivative of each warped sample with respect to its warp position:
/// out[t] = sum_m x[m] sinc'(tau[t] - m) over the same window.
void warp_signal_derivative(std::span<const double> x, std::span<const double> tau,
                            SincWindow window, std::span<double> out);

/// Computes the warped signal and its tau-derivative in one pass
/// (shares the per-position sin/cos evaluation). Either output may be empty.
void warp_signal_with_derivative(std::span<const double> x, std::span<const double> tau,
                                 SincWindow window, std::span<double> warped,
                                 std::span<double> derivative);

std::vector<double> warp_signal(std::span<const double> x, std::span<const double> tau,
                                SincWindow window = {});
std::vector<double> warp_signal_derivative(std::span<const double> x,
                                           std::span<const double> tau,
                                           SincWindow window = {});

}  // namespace ttw
