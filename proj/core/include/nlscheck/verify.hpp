#pragma once

#include <functional>
#include <limits>
#include <string>
#include <utility>

#include "nlscheck/ansatz.hpp"
#include "nlscheck/elliptic.hpp"

namespace nlscheck {

/// Step sizes for every numerical derivative taken by the residual operators.
struct DiffConfig {
  double h_t = 1e-5;
  double h_x = 1e-4;
  /// 1 = plain central differences (O(h²)); up to 4 Richardson levels.
  int richardson_levels = 2;
};

/// Throws InvalidArgument unless both steps are positive and
/// 1 ≤ richardson_levels ≤ 4.
void validate(const DiffConfig& cfg);

/// Q_t − √z·(c₁ − q(3z + Q²)). Zero for every (x, t) if the trial field
/// were consistent with the imaginary part of the CNLSE. Q_t is taken by
/// central differences in t, or by a one-sided 4-point stencil when
/// t < h_t.
double residual_P(const AnsatzParams& params, double x, double t,
                  const DiffConfig& cfg = {});

/// |Δz(t)² − R₁(z)| / max(1, |R₁(z)|), with Δ the finite-difference z'(t).
double residual_R1(const AnsatzParams& params, double t, const DiffConfig& cfg = {});

/// |ΔQ(x,t)² − R₂(Q)| / max(1, |R₂(Q)|), with Δ the finite-difference Q_x.
/// Within 1000·h_x of a pole the step shrinks to a thousandth of the pole
/// distance.
double residual_R2(const AnsatzParams& params, double x, double t,
                   const DiffConfig& cfg = {});

/// Distance from x to the nearest pole of Q(·, t) on the params branch,
/// from one Newton step. +inf when no pole is in reach.
double q_pole_distance(const AnsatzParams& params, double x, double t);

/// The closed-form invariants of the z- and Q-curves in terms of the
/// ansatz constants. `scale` is the sum of the magnitudes of the monomials
/// entering each value; it bounds the cancellation error.
struct PrintedInvariants {
  double g2;
  double g3;
  double g2_scale;
  double g3_scale;
};

PrintedInvariants printed_z_invariants(double q, double c1, double c2, double c3);
PrintedInvariants printed_q_invariants(double q, double c1, double c2, double z,
                                       double z_t);

/// |a − b| / max(|a|, |b|, 10⁻³·scale). Values that cancel by more than three
/// digits against their monomial scale are measured against that scale
/// instead, since their own relative accuracy is limited by the cancellation.
double relative_deviation(double a, double b, double scale);

struct CrosscheckResult {
  double z_curve;
  double q_curve;
};

/// Largest relative deviation between the classical invariants of the
/// coefficient lists and the closed forms, for the z- and Q-curve.
CrosscheckResult invariant_crosscheck(const AnsatzParams& params, double t);

/// A complex field A(x, t). Evaluations below t_min are outside its domain.
struct FieldSampler {
  std::function<Complex(double x, double t)> eval;
  double t_min = -std::numeric_limits<double>::infinity();
};

FieldSampler ansatz_field(const AnsatzParams& params);

/// a·√(2p/q)·sech(a·x)·e^{i·p·a²·t}, an exact solution of
/// i·A_t + p·A_xx + q·A|A|² = 0 whenever p·q > 0.
FieldSampler soliton_field(double a, double p = 1.0, double q = 2.0);

/// i·A_t + p·A_xx + q·A|A|² at (x, t) by central differences. Throws
/// StencilOutOfDomain if the t-stencil reaches below the sampler's t_min.
Complex cnlse_residual(const FieldSampler& field, double x, double t,
                       const DiffConfig& cfg, double p, double q);

/// Mean of log₂(r_h / r_{h/2}) and log₂(r_{h/2} / r_{h/4}). Throws
/// DegenerateResiduals if any magnitude is below 1e−14.
double convergence_order(double r_h, double r_h2, double r_h4);

struct ResidualReport {
  double x = 0.0;
  double t = 0.0;
  Sign sigma_z = Sign::Minus;
  Sign sigma_q = Sign::Minus;
  double P = std::numeric_limits<double>::quiet_NaN();
  double r1 = std::numeric_limits<double>::quiet_NaN();
  double r2 = std::numeric_limits<double>::quiet_NaN();
  double pde_abs = std::numeric_limits<double>::quiet_NaN();
  /// Semicolon-separated flags ("P:pole", "near_pole", "pde_unavailable",
  /// ...). Every NaN field has a flag explaining it. "near_pole" marks points
  /// within 100·h_x of a pole of Q(·, t).
  std::string notes;
};

/// Evaluates every residual at one point for the branch in params. Failures
/// become flags rather than exceptions. The PDE residual needs a symmetric
/// t-stencil and is skipped (flag "pde_unavailable") when t < h_t.
ResidualReport evaluate_report(const AnsatzParams& params, double x, double t,
                               const DiffConfig& cfg = {});

}  // namespace nlscheck
