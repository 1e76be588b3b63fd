#include "nlscheck/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "nlscheck/differentiate.hpp"
#include "nlscheck/error.hpp"

namespace nlscheck {

void validate(const DiffConfig& cfg) {
  if (!(cfg.h_t > 0.0) || !(cfg.h_x > 0.0)) {
    throw InvalidArgument("difference steps must be positive");
  }
  if (cfg.richardson_levels < 1 || cfg.richardson_levels > 4) {
    throw InvalidArgument("richardson_levels must lie in [1, 4]");
  }
}

namespace {

// d/dt of g at t ≥ 0 without stepping below t = 0.
template <typename G>
double time_derivative(G&& g, double t, const DiffConfig& cfg) {
  if (t < cfg.h_t) return forward_first(g, t, cfg.h_t);
  return central_first(g, t, cfg.h_t, cfg.richardson_levels);
}

double relative_to_one(double lhs, double rhs) {
  return std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs));
}

}  // namespace

double residual_P(const AnsatzParams& params, double x, double t,
                  const DiffConfig& cfg) {
  validate(cfg);
  const double Q_t = time_derivative(
      [&](double s) { return Q_of_xt(params, x, s); }, t, cfg);
  const double z = z_of_t(params, t);
  const double Q = Q_of_xt(params, x, t);
  return Q_t - std::sqrt(z) * (params.c1 - params.q * (3.0 * z + Q * Q));
}

double residual_R1(const AnsatzParams& params, double t, const DiffConfig& cfg) {
  validate(cfg);
  const double z_t =
      time_derivative([&](double s) { return z_of_t(params, s); }, t, cfg);
  const double z = z_of_t(params, t);
  return relative_to_one(z_t * z_t, eval_with_derivatives(z_curve(params), z).r0);
}

double q_pole_distance(const AnsatzParams& params, double x, double t) {
  const auto pt =
      weierstrass_solution_point(q_curve(params, t), params.Q0, params.sigma_q, x);
  return pt.pole_distance;
}

double residual_R2(const AnsatzParams& params, double x, double t,
                   const DiffConfig& cfg) {
  validate(cfg);
  const auto curve = q_curve(params, t);
  const auto Q = [&](double s) {
    return weierstrass_solution(curve, params.Q0, params.sigma_q, s);
  };
  const double h = std::min(cfg.h_x, 1e-3 * q_pole_distance(params, x, t));
  const double Q_x = central_first(Q, x, h, cfg.richardson_levels);
  return relative_to_one(Q_x * Q_x, eval_with_derivatives(curve, Q(x)).r0);
}

PrintedInvariants printed_z_invariants(double q, double c1, double c2, double c3) {
  const double k = c1 * c1 + 4.0 * q * c2;
  const double k_scale = c1 * c1 + 4.0 * std::abs(q * c2);
  const double g2 = 4.0 / 3.0 * k * k - 16.0 * q * c1 * c3;
  const double g3 =
      8.0 / 27.0 * (54.0 * q * q * c3 * c3 - 18.0 * q * c1 * c3 * k + k * k * k);
  const double g2_scale = 4.0 / 3.0 * k_scale * k_scale + 16.0 * std::abs(q * c1 * c3);
  const double g3_scale =
      8.0 / 27.0 *
      (54.0 * q * q * c3 * c3 + 18.0 * std::abs(q * c1 * c3) * k_scale +
       k_scale * k_scale * k_scale);
  return {g2, g3, g2_scale, g3_scale};
}

PrintedInvariants printed_q_invariants(double q, double c1, double c2, double z,
                                       double z_t) {
  const double g2 = c1 * c1 / 12.0 - q * c2;
  const double g2_scale = c1 * c1 / 12.0 + std::abs(q * c2);
  const double lead = c1 - 3.0 * q * z;
  const double quad = c1 * c1 - 24.0 * q * c1 * z + 36.0 * q * q * z * z + 36.0 * q * c2;
  const double tail = q * z_t * z_t / (32.0 * z);
  const double g3 = -lead / 216.0 * quad + tail;
  const double g3_scale =
      (std::abs(c1) + 3.0 * std::abs(q * z)) / 216.0 *
          (c1 * c1 + 24.0 * std::abs(q * c1 * z) + 36.0 * q * q * z * z +
           36.0 * std::abs(q * c2)) +
      std::abs(tail);
  return {g2, g3, g2_scale, g3_scale};
}

double relative_deviation(double a, double b, double scale) {
  const double floor = 1e-3 * scale;
  const double denom = std::max({std::abs(a), std::abs(b), floor});
  if (denom == 0.0) return 0.0;
  return std::abs(a - b) / denom;
}

CrosscheckResult invariant_crosscheck(const AnsatzParams& params, double t) {
  const auto zc = invariants_from_coefficients(z_curve(params));
  const auto zp = printed_z_invariants(params.q, params.c1, params.c2, params.c3);
  const auto zs = z_state(params, t);
  const auto qc =
      invariants_from_coefficients(q_curve_from_state(params.q, params.c1, params.c2, zs));
  const auto qp = printed_q_invariants(params.q, params.c1, params.c2, zs.z, zs.z_t);
  return {
      std::max(relative_deviation(zc.g2(), zp.g2, zp.g2_scale),
               relative_deviation(zc.g3(), zp.g3, zp.g3_scale)),
      std::max(relative_deviation(qc.g2(), qp.g2, qp.g2_scale),
               relative_deviation(qc.g3(), qp.g3, qp.g3_scale)),
  };
}

FieldSampler ansatz_field(const AnsatzParams& params) {
  return {[params](double x, double t) { return field_A(params, x, t); }, 0.0};
}

FieldSampler soliton_field(double a, double p, double q) {
  if (!(a > 0.0)) throw InvalidArgument("soliton amplitude must be positive");
  if (!(p * q > 0.0)) {
    throw InvalidArgument("bright soliton needs p and q of the same sign");
  }
  const double amplitude = a * std::sqrt(2.0 * p / q);
  return {[=](double x, double t) {
    return amplitude / std::cosh(a * x) * std::polar(1.0, p * a * a * t);
  }};
}

Complex cnlse_residual(const FieldSampler& field, double x, double t,
                       const DiffConfig& cfg, double p, double q) {
  validate(cfg);
  if (t - cfg.h_t < field.t_min) {
    throw StencilOutOfDomain("time stencil around t = " + std::to_string(t) +
                             " leaves the field's domain");
  }
  const auto in_t = [&](double s) { return field.eval(x, s); };
  const auto in_x = [&](double s) { return field.eval(s, t); };
  const Complex A = field.eval(x, t);
  const Complex A_t = central_first(in_t, t, cfg.h_t, cfg.richardson_levels);
  const Complex A_xx = central_second(in_x, x, cfg.h_x, cfg.richardson_levels);
  return Complex(0.0, 1.0) * A_t + p * A_xx + q * A * std::norm(A);
}

double convergence_order(double r_h, double r_h2, double r_h4) {
  for (double r : {r_h, r_h2, r_h4}) {
    if (!(r >= 1e-14)) {
      throw DegenerateResiduals("residual magnitude " + std::to_string(r) +
                                " is at round-off; no order can be measured");
    }
  }
  return 0.5 * (std::log2(r_h / r_h2) + std::log2(r_h2 / r_h4));
}

namespace {

void add_flag(std::string& notes, std::string_view flag) {
  if (!notes.empty()) notes += ';';
  notes += flag;
}

std::string flag_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::PoleProximity: return "pole";
    case ErrorKind::RealityViolation: return "reality";
    case ErrorKind::NegativeRadicand: return "negative_radicand";
    case ErrorKind::StencilOutOfDomain: return "stencil";
    default: return std::string(to_string(e.kind()));
  }
}

}  // namespace

ResidualReport evaluate_report(const AnsatzParams& params, double x, double t,
                               const DiffConfig& cfg) {
  ResidualReport report;
  report.x = x;
  report.t = t;
  report.sigma_z = params.sigma_z;
  report.sigma_q = params.sigma_q;

  const auto attempt = [&](double& slot, std::string_view name, auto&& compute) {
    try {
      slot = compute();
    } catch (const Error& e) {
      add_flag(report.notes, std::string(name) + ":" + flag_for(e));
    }
  };
  attempt(report.P, "P", [&] { return residual_P(params, x, t, cfg); });
  attempt(report.r1, "r1", [&] { return residual_R1(params, t, cfg); });
  attempt(report.r2, "r2", [&] { return residual_R2(params, x, t, cfg); });
  try {
    if (q_pole_distance(params, x, t) < 100.0 * cfg.h_x) add_flag(report.notes, "near_pole");
  } catch (const Error&) {
    // Already flagged by the evaluations above.
  }
  if (t < cfg.h_t) {
    add_flag(report.notes, "pde_unavailable");
  } else {
    attempt(report.pde_abs, "pde", [&] {
      return std::abs(cnlse_residual(ansatz_field(params), x, t, cfg, 1.0, params.q));
    });
  }
  return report;
}

}  // namespace nlscheck
