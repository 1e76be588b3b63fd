#include "nlscheck/quartic.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "nlscheck/error.hpp"

namespace nlscheck {

QuarticDerivatives eval_with_derivatives(const QuarticCurve& r, double y) {
  const double a = r.alpha, b = r.beta, g = r.gamma, d = r.delta, e = r.epsilon;
  return {
      (((a * y + 4.0 * b) * y + 6.0 * g) * y + 4.0 * d) * y + e,
      ((4.0 * a * y + 12.0 * b) * y + 12.0 * g) * y + 4.0 * d,
      (12.0 * a * y + 24.0 * b) * y + 12.0 * g,
      24.0 * a * y + 24.0 * b,
      24.0 * a,
  };
}

EllipticInvariants invariants_from_coefficients(const QuarticCurve& r) {
  const double a = r.alpha, b = r.beta, g = r.gamma, d = r.delta, e = r.epsilon;
  const double g2 = a * e - 4.0 * b * d + 3.0 * g * g;
  const double g3 = a * g * e + 2.0 * b * g * d - a * d * d - b * b * e - g * g * g;
  return {g2, g3};
}

namespace {

constexpr double kRoundoff = 16.0 * std::numeric_limits<double>::epsilon();

// Rounding bounds for R(y) and R'(y): values below these are indistinguishable
// from zero.
struct RoundingBounds {
  double r0;
  double r1;
};

RoundingBounds rounding_bounds(const QuarticCurve& r, double y) {
  const double ay = std::abs(y);
  const QuarticCurve m{std::abs(r.alpha), std::abs(r.beta), std::abs(r.gamma),
                       std::abs(r.delta), std::abs(r.epsilon)};
  const auto d = eval_with_derivatives(m, ay);
  return {kRoundoff * d.r0, kRoundoff * d.r1};
}

}  // namespace

SolutionPoint weierstrass_solution_point(const QuarticCurve& r, double y0,
                                         Sign sign, double xi,
                                         const WpOptions& opts) {
  const auto rd = eval_with_derivatives(r, y0);
  const auto bounds = rounding_bounds(r, y0);
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (rd.r0 < -bounds.r0) {
    throw NegativeRadicand("R(y0) = " + std::to_string(rd.r0) +
                           " < 0: no real solution through y0");
  }
  // Double root: y₀ is an equilibrium and the numerator vanishes identically.
  if (std::abs(rd.r0) <= bounds.r0 && std::abs(rd.r1) <= bounds.r1) {
    return {y0, 0.0, inf};
  }
  const double radicand = std::max(rd.r0, 0.0);
  const double root = std::sqrt(radicand);
  const double s = value(sign);

  if (std::abs(xi) < opts.pole_guard) {
    return {y0 + s * root * xi + rd.r1 * xi * xi / 4.0,
            s * root + rd.r1 * xi / 2.0, inf};
  }

  const auto inv = invariants_from_coefficients(r);
  WpValue p;
  try {
    p = wp_pair(Complex(xi, 0.0), inv, opts);
  } catch (const PoleProximity&) {
    // ξ is a nonzero lattice point; y is lattice-periodic.
    return {y0, s * root, inf};
  }
  const double wpv = p.wp.real();
  const double wpd = p.wp_prime.real();
  const double wpdd = 6.0 * wpv * wpv - inv.g2() / 2.0;

  // y − y₀ = (A − B)/D = L/(A + B) with A² − B² = D·L. The first form loses
  // digits where A ≈ B, the second where A ≈ −B, so evaluate the larger
  // numerator. Zeros of A + B are the poles of this branch; zeros of D
  // alone are removable.
  const double shifted = wpv - rd.r2 / 24.0;
  const double A = 0.5 * rd.r1 * shifted + rd.r0 * rd.r3 / 24.0;
  const double B = s * wpd * root;
  const double dA = 0.5 * rd.r1 * wpd;
  const double dB = s * wpdd * root;
  const double den = 2.0 * shifted * shifted - rd.r0 * rd.r4 / 48.0;
  const double dden = 4.0 * shifted * wpd;
  const double conj = A + B;
  const double dconj = dA + dB;
  const double pole_offset = dconj == 0.0 ? inf : -conj / dconj;

  double num, denom, dnum, ddenom;
  if (std::abs(A - B) >= std::abs(conj)) {
    num = A - B;
    dnum = dA - dB;
    denom = den;
    ddenom = dden;
  } else {
    num = -2.0 * (rd.r0 * wpv + rd.r0 * rd.r2 / 12.0 - rd.r1 * rd.r1 / 16.0);
    dnum = -2.0 * rd.r0 * wpd;
    denom = conj;
    ddenom = dconj;
  }

  if (!std::isfinite(num) || !std::isfinite(denom) ||
      std::abs(num) * opts.pole_guard > std::abs(denom)) {
    throw PoleProximity("weierstrass_solution: xi = " + std::to_string(xi) +
                        " is at a pole of the solution");
  }
  return {y0 + num / denom, (dnum * denom - num * ddenom) / (denom * denom), conj,
          pole_offset, std::abs(pole_offset)};
}

double weierstrass_solution(const QuarticCurve& r, double y0, Sign sign,
                            double xi, const WpOptions& opts) {
  return weierstrass_solution_point(r, y0, sign, xi, opts).value;
}

}  // namespace nlscheck
