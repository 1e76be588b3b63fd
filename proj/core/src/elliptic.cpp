#include "nlscheck/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "nlscheck/error.hpp"

namespace nlscheck {

EllipticInvariants::EllipticInvariants(double g2, double g3)
    : g2_(g2), g3_(g3), discriminant_(g2 * g2 * g2 - 27.0 * g3 * g3) {
  if (!std::isfinite(g2) || !std::isfinite(g3)) {
    throw InvalidArgument("elliptic invariants must be finite");
  }
}

namespace {

// One Newton step on 4s³ − g2 s − g3; leaves s alone if the derivative
// vanishes (multiple root) or the step would not improve the residual.
double polish(double s, double g2, double g3) {
  for (int i = 0; i < 3; ++i) {
    const double f = (4.0 * s * s - g2) * s - g3;
    const double df = 12.0 * s * s - g2;
    if (df == 0.0) break;
    const double next = s - f / df;
    const double fn = (4.0 * next * next - g2) * next - g3;
    if (!(std::abs(fn) < std::abs(f))) break;
    s = next;
  }
  return s;
}

}  // namespace

std::array<Complex, 3> cubic_roots(const EllipticInvariants& inv) {
  // Depressed form s³ + p·s + r = 0.
  const double g2 = inv.g2();
  const double g3 = inv.g3();
  const double p = -g2 / 4.0;
  const double r = -g3 / 4.0;
  std::array<Complex, 3> roots;

  if (inv.discriminant() > 0.0) {
    // Three distinct real roots; p < 0 is implied.
    const double m = 2.0 * std::sqrt(-p / 3.0);
    const double arg = std::clamp(3.0 * r / (p * m), -1.0, 1.0);
    const double theta = std::acos(arg) / 3.0;
    for (int k = 0; k < 3; ++k) {
      const double s = m * std::cos(theta - 2.0 * std::numbers::pi * k / 3.0);
      roots[k] = polish(s, g2, g3);
    }
  } else {
    const double half_r = r / 2.0;
    const double d = half_r * half_r + p * p * p / 27.0;
    const double a = -std::copysign(std::cbrt(std::abs(half_r) + std::sqrt(std::max(d, 0.0))),
                                    half_r);
    const double b = (a == 0.0) ? 0.0 : -p / (3.0 * a);
    const double real_root = polish(a + b, g2, g3);
    // The other two roots solve s² + real_root·s + (p + real_root²) = 0.
    const double re = -real_root / 2.0;
    const double disc = re * re - (p + real_root * real_root);
    if (disc >= 0.0) {
      const double w = std::sqrt(disc);
      roots = {Complex(real_root), Complex(polish(re + w, g2, g3)),
               Complex(polish(re - w, g2, g3))};
    } else {
      const double w = std::sqrt(-disc);
      roots = {Complex(real_root), Complex(re, w), Complex(re, -w)};
    }
  }

  std::sort(roots.begin(), roots.end(), [](const Complex& x, const Complex& y) {
    if (x.real() != y.real()) return x.real() > y.real();
    return x.imag() > y.imag();
  });
  return roots;
}

namespace {

using Wide = long double;
using WideComplex = std::complex<Wide>;

// Laurent coefficients c_2..c_order of ℘(u) − u⁻² = Σ c_k u^{2k−2}.
std::vector<Wide> laurent_coefficients(Wide g2, Wide g3, int order) {
  std::vector<Wide> c(static_cast<std::size_t>(std::max(order, 3)) + 1, 0.0L);
  c[2] = g2 / 20.0L;
  c[3] = g3 / 28.0L;
  for (int k = 4; k <= order; ++k) {
    Wide s = 0.0L;
    for (int m = 2; m <= k - 2; ++m) s += c[m] * c[k - m];
    c[k] = 3.0L * s / ((2.0L * k + 1.0L) * (k - 3.0L));
  }
  return c;
}

}  // namespace

WpValue wp_pair(Complex u, const EllipticInvariants& inv, const WpOptions& opts) {
  if (!std::isfinite(u.real()) || !std::isfinite(u.imag())) {
    throw InvalidArgument("wp: non-finite argument");
  }
  if (std::abs(u) < opts.pole_guard) {
    throw PoleProximity("wp: argument within pole guard of the origin");
  }
  const double g2 = inv.g2();
  const double g3 = inv.g3();
  const double scale = std::max({1.0, std::pow(std::abs(g2), 0.25),
                                 std::pow(std::abs(g3), 1.0 / 6.0)});

  // Each doubling costs roughly a decimal digit (℘(2u) ≈ 9℘/4 − 2℘ near the
  // origin), so the chain runs in extended precision.
  WideComplex v(u.real(), u.imag());
  int doublings = 0;
  while (std::abs(v) * scale > opts.reduce_radius) {
    v /= 2.0L;
    ++doublings;
  }

  const auto c = laurent_coefficients(g2, g3, opts.series_order);
  const WideComplex w = v * v;
  // Horner in w for Σ c_k w^{k−2} and Σ (2k−2) c_k w^{k−2}.
  WideComplex sum = 0.0L;
  WideComplex dsum = 0.0L;
  for (int k = opts.series_order; k >= 2; --k) {
    sum = sum * w + c[k];
    dsum = dsum * w + (2.0L * k - 2.0L) * c[k];
  }
  WideComplex x = 1.0L / w + sum * w;
  WideComplex y = -2.0L / (w * v) + dsum * v;

  // Tangent-line doubling on Y² = 4X³ − g2·X − g3: the tangent at (℘(u), ℘'(u))
  // meets the curve again at (℘(2u), −℘'(2u)).
  const Wide pole_scale = 1.0L / (Wide(opts.pole_guard) * Wide(opts.pole_guard));
  const Wide half_g2 = Wide(g2) / 2.0L;
  for (int i = 0; i < doublings; ++i) {
    if (y == 0.0L) throw PoleProximity("wp: doubling hit a half-period");
    const WideComplex slope = (6.0L * x * x - half_g2) / y;
    const WideComplex x2 = slope * slope / 4.0L - 2.0L * x;
    const WideComplex y2 = -(y + slope * (x2 - x));
    x = x2;
    y = y2;
    if (!std::isfinite(std::abs(x)) || !std::isfinite(std::abs(y)) ||
        std::abs(x) > pole_scale) {
      throw PoleProximity("wp: argument within pole guard of a lattice point");
    }
  }
  return {Complex(static_cast<double>(x.real()), static_cast<double>(x.imag())),
          Complex(static_cast<double>(y.real()), static_cast<double>(y.imag()))};
}

Complex wp(Complex u, const EllipticInvariants& inv, const WpOptions& opts) {
  return wp_pair(u, inv, opts).wp;
}

Complex wp_prime(Complex u, const EllipticInvariants& inv, const WpOptions& opts) {
  return wp_pair(u, inv, opts).wp_prime;
}

}  // namespace nlscheck
