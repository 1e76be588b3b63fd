#pragma once

#include <limits>

#include "nlscheck/elliptic.hpp"

namespace nlscheck {

/// R(y) = α·y⁴ + 4β·y³ + 6γ·y² + 4δ·y + ε, the binomial normalization in
/// which the classical invariants take their textbook form.
struct QuarticCurve {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double delta = 0.0;
  double epsilon = 0.0;

  friend bool operator==(const QuarticCurve&, const QuarticCurve&) = default;
};

struct QuarticDerivatives {
  double r0;  // R(y)
  double r1;  // R'(y)
  double r2;
  double r3;
  double r4;  // always 24α
};

QuarticDerivatives eval_with_derivatives(const QuarticCurve& r, double y);

/// g2 = αε − 4βδ + 3γ², g3 = αγε + 2βγδ − αδ² − β²ε − γ³.
EllipticInvariants invariants_from_coefficients(const QuarticCurve& r);

/// Branch selector for solutions of (y')² = R(y). The sign is the sign of
/// the initial slope: y'(0) = sign·√R(y₀).
enum class Sign : int { Plus = 1, Minus = -1 };

constexpr double value(Sign s) noexcept { return static_cast<int>(s); }
constexpr Sign flip(Sign s) noexcept {
  return s == Sign::Plus ? Sign::Minus : Sign::Plus;
}
constexpr char symbol(Sign s) noexcept { return s == Sign::Plus ? 'p' : 'm'; }

struct SolutionPoint {
  double value;
  /// dy/dξ from the closed form (no finite differences).
  double slope;
  /// A + B, the factor of the closed form whose zeros are the poles of this
  /// branch. It also changes sign across lattice points of ℘, where y = y₀
  /// is regular. +inf at those lattice points.
  double pole_factor;
  /// Estimated position of the nearest pole minus ξ, from one Newton step on
  /// pole_factor; +inf where no pole is in reach.
  double pole_offset = std::numeric_limits<double>::infinity();
  /// |pole_offset|.
  double pole_distance = std::numeric_limits<double>::infinity();
};

/// Weierstrass' solution of (y')² = R(y) with y(0) = y₀ and
/// y'(0) = sign·√R(y₀):
///
///   y(ξ) = y₀ + [½R'(℘ − R''/24) − sign·℘'·√R + R·R'''/24]
///               / [2(℘ − R''/24)² − R·R''''/48],
///
/// with ℘ = ℘(ξ; invariants_from_coefficients(R)). The sign in front of ℘'
/// is −sign because ℘'(ξ) ≈ −2/ξ³ at the origin.
///
/// Near ξ = 0 (and at any lattice point) the pole limit y₀ is used
/// analytically. Throws NegativeRadicand if R(y₀) < 0, PoleProximity if ξ
/// lies on a pole of y itself.
SolutionPoint weierstrass_solution_point(const QuarticCurve& r, double y0,
                                         Sign sign, double xi,
                                         const WpOptions& opts = {});

double weierstrass_solution(const QuarticCurve& r, double y0, Sign sign,
                            double xi, const WpOptions& opts = {});

}  // namespace nlscheck
