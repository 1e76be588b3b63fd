#pragma once

#include <array>
#include <complex>

namespace nlscheck {

using Complex = std::complex<double>;

/// The pair (g2, g3) defining ℘ through (℘')² = 4℘³ − g2·℘ − g3.
class EllipticInvariants {
 public:
  EllipticInvariants() = default;
  EllipticInvariants(double g2, double g3);

  double g2() const noexcept { return g2_; }
  double g3() const noexcept { return g3_; }
  /// g2³ − 27·g3²; zero for the degenerate (trigonometric/rational) cases.
  double discriminant() const noexcept { return discriminant_; }

  friend bool operator==(const EllipticInvariants&,
                         const EllipticInvariants&) = default;

 private:
  double g2_ = 0.0;
  double g3_ = 0.0;
  double discriminant_ = 0.0;
};

struct WpOptions {
  /// Highest Laurent coefficient index kept (℘ = u⁻² + Σ_{k=2..order} c_k u^{2k−2}).
  int series_order = 24;
  /// Arguments are halved until |u|·scale ≤ reduce_radius, where
  /// scale = max(1, |g2|^{1/4}, |g3|^{1/6}).
  double reduce_radius = 0.5;
  double pole_guard = 1e-10;
};

struct WpValue {
  Complex wp;
  Complex wp_prime;
};

/// Roots of 4s³ − g2·s − g3, sorted by descending real part, then by
/// descending imaginary part.
std::array<Complex, 3> cubic_roots(const EllipticInvariants& inv);

/// ℘ and ℘' together; both come out of the same duplication chain.
/// Throws PoleProximity when |u| < pole_guard or when the chain runs into
/// a lattice point.
WpValue wp_pair(Complex u, const EllipticInvariants& inv,
                const WpOptions& opts = {});

Complex wp(Complex u, const EllipticInvariants& inv,
           const WpOptions& opts = {});
Complex wp_prime(Complex u, const EllipticInvariants& inv,
                 const WpOptions& opts = {});

}  // namespace nlscheck
