#pragma once

#include <array>
#include <cstddef>

namespace nlscheck {

// Finite-difference stencils shared by the residual operators. All of them
// accept real- or complex-valued callables.

namespace detail {

// Richardson tableau for an estimate whose error expands in even powers of h,
// built from estimates at h, h/2, ..., h/2^(levels−1).
template <typename Estimate>
auto richardson_even(Estimate&& estimate, double h, int levels) {
  using T = decltype(estimate(h));
  std::array<T, 4> row{};
  std::array<T, 4> prev{};
  double step = h;
  for (int j = 0; j < levels; ++j) {
    row[0] = estimate(step);
    double factor = 4.0;
    for (int k = 1; k <= j; ++k) {
      row[k] = row[k - 1] + (row[k - 1] - prev[k - 1]) / (factor - 1.0);
      factor *= 4.0;
    }
    prev = row;
    step /= 2.0;
  }
  return row[static_cast<std::size_t>(levels - 1)];
}

}  // namespace detail

/// f'(x) from central differences; levels = 1 is the plain O(h²) stencil,
/// each further level removes the next even power of h.
template <typename F>
auto central_first(F&& f, double x, double h, int levels = 1) {
  return detail::richardson_even(
      [&](double s) { return (f(x + s) - f(x - s)) / (2.0 * s); }, h, levels);
}

/// f''(x) from central differences, same level semantics as central_first.
template <typename F>
auto central_second(F&& f, double x, double h, int levels = 1) {
  return detail::richardson_even(
      [&](double s) { return (f(x + s) - 2.0 * f(x) + f(x - s)) / (s * s); }, h,
      levels);
}

/// f'(x) from the 4-point forward stencil, O(h³). Only touches [x, x + 3h].
template <typename F>
auto forward_first(F&& f, double x, double h) {
  return (-11.0 * f(x) + 18.0 * f(x + h) - 9.0 * f(x + 2.0 * h) +
          2.0 * f(x + 3.0 * h)) /
         (6.0 * h);
}

}  // namespace nlscheck
