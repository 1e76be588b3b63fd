#pragma once

#include <cstddef>
#include <span>

#include "nlscheck/elliptic.hpp"

namespace nlscheck {

constexpr bool is_power_of_two(std::size_t n) noexcept {
  return n != 0 && (n & (n - 1)) == 0;
}

enum class FftDirection { Forward, Inverse };

/// In-place radix-2 DFT, X_k = Σ x_j e^{∓2πi·jk/n}. The inverse carries the
/// 1/n factor, so Inverse(Forward(x)) = x. Throws InvalidArgument unless the
/// size is a power of two.
void fft(std::span<Complex> data, FftDirection direction);

}  // namespace nlscheck
