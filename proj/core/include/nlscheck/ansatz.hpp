#pragma once

#include <span>
#include <vector>

#include "nlscheck/elliptic.hpp"
#include "nlscheck/quartic.hpp"

namespace nlscheck {

/// Parameters of the trial field A = (Q(x,t) + i·d(t))·e^{iφ(t)} with
/// d² = z. The dispersion coefficient p is fixed to 1.
struct AnsatzParams {
  double q = -1.0;
  double c1 = -2.0;
  double c2 = 0.4;
  double c3 = 0.13;
  double z0 = 1.0;
  double Q0 = 1.0;
  double phi0 = 0.0;
  /// Sign of z'(0).
  Sign sigma_z = Sign::Minus;
  /// Sign of Q_x(0, t).
  Sign sigma_q = Sign::Minus;
};

/// The reference experiment: q = −1, c = (−2, 0.4, 0.13), z0 = Q0 = 1.
AnsatzParams paper_params(Sign sigma_z = Sign::Minus, Sign sigma_q = Sign::Minus);

/// Throws InvalidArgument for q = 0 or z0 ≤ 0 (or non-finite input) and
/// NegativeRadicand if R₁(z0) < 0.
void validate(const AnsatzParams& params);

/// (z')² = R₁(z): (α, β, γ, δ, ε) = (−16q², 4qc₁, −⅔(c₁² + 4qc₂), c₃, 0).
QuarticCurve z_curve(const AnsatzParams& params);

struct ZState {
  double z;
  /// Signed z'(t) from the closed form; changes sign at turning points.
  double z_t;
};

/// z(t) and z'(t). Requires t ≥ 0 (StencilOutOfDomain otherwise); throws
/// RealityViolation when z(t) ≤ 0 and PoleProximity at solution poles.
ZState z_state(const AnsatzParams& params, double t, const WpOptions& opts = {});

double z_of_t(const AnsatzParams& params, double t, const WpOptions& opts = {});

/// Coefficients of (Q_x)² = R₂(Q) at fixed t, given z(t) > 0 and signed z'(t).
QuarticCurve q_curve_from_state(double q, double c1, double c2, const ZState& zs);

QuarticCurve q_curve(const AnsatzParams& params, double t, const WpOptions& opts = {});

/// Q(x, t); Q(0, t) = Q0 exactly.
double Q_of_xt(const AnsatzParams& params, double x, double t,
               const WpOptions& opts = {});

/// φ(t) = φ0 + c₁t − 2q∫₀ᵗ z(s) ds by adaptive Gauss–Kronrod quadrature
/// (absolute error ≤ 1e−10).
double phi_of_t(const AnsatzParams& params, double t, const WpOptions& opts = {});

/// A(x, t) = (Q + i√z)·e^{iφ}.
Complex field_A(const AnsatzParams& params, double x, double t,
                const WpOptions& opts = {});

/// Everything about the ansatz that depends on t alone, computed once so a
/// whole x-grid can be evaluated cheaply.
class AnsatzSlice {
 public:
  AnsatzSlice(const AnsatzParams& params, double t, const WpOptions& opts = {});

  double t() const noexcept { return t_; }
  const ZState& z() const noexcept { return z_; }
  double phi() const noexcept { return phi_; }
  const QuarticCurve& curve() const noexcept { return curve_; }

  SolutionPoint Q_point(double x) const;
  double Q(double x) const { return Q_point(x).value; }
  Complex A(double x) const;
  std::vector<Complex> A(std::span<const double> xs) const;

 private:
  AnsatzParams params_;
  WpOptions opts_;
  double t_;
  ZState z_;
  double phi_;
  QuarticCurve curve_;
};

}  // namespace nlscheck
