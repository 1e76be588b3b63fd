#include "nlscheck/fft.hpp"

#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

#include "nlscheck/error.hpp"

namespace nlscheck {

void fft(std::span<Complex> data, FftDirection direction) {
  const std::size_t n = data.size();
  if (!is_power_of_two(n)) {
    throw InvalidArgument("fft size must be a power of two");
  }
  if (n == 1) return;

  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(data[i], data[j]);
  }

  const double sign = direction == FftDirection::Forward ? -1.0 : 1.0;
  // Twiddles from direct cos/sin per index; a running product would drift.
  std::vector<Complex> twiddle(n / 2);
  for (std::size_t k = 0; k < n / 2; ++k) {
    const double angle = sign * 2.0 * std::numbers::pi * static_cast<double>(k) /
                         static_cast<double>(n);
    twiddle[k] = Complex(std::cos(angle), std::sin(angle));
  }

  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t stride = n / len;
    for (std::size_t start = 0; start < n; start += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const Complex u = data[start + k];
        const Complex v = data[start + k + half] * twiddle[k * stride];
        data[start + k] = u + v;
        data[start + k + half] = u - v;
      }
    }
  }

  if (direction == FftDirection::Inverse) {
    const double inv_n = 1.0 / static_cast<double>(n);
    for (auto& v : data) v *= inv_n;
  }
}

}  // namespace nlscheck
