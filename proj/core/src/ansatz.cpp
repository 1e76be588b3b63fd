#include "nlscheck/ansatz.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <string>

#include "nlscheck/error.hpp"

namespace nlscheck {

AnsatzParams paper_params(Sign sigma_z, Sign sigma_q) {
  AnsatzParams p;
  p.sigma_z = sigma_z;
  p.sigma_q = sigma_q;
  return p;
}

void validate(const AnsatzParams& params) {
  for (double v : {params.q, params.c1, params.c2, params.c3, params.z0,
                   params.Q0, params.phi0}) {
    if (!std::isfinite(v)) throw InvalidArgument("ansatz parameters must be finite");
  }
  if (params.q == 0.0) throw InvalidArgument("q must be nonzero");
  if (!(params.z0 > 0.0)) throw InvalidArgument("z0 must be positive");
  const double r = eval_with_derivatives(z_curve(params), params.z0).r0;
  if (r < 0.0) {
    throw NegativeRadicand("R1(z0) = " + std::to_string(r) +
                           " < 0: z'(0) would be imaginary");
  }
}

QuarticCurve z_curve(const AnsatzParams& params) {
  const double q = params.q, c1 = params.c1;
  return {-16.0 * q * q, 4.0 * q * c1,
          -2.0 / 3.0 * (c1 * c1 + 4.0 * q * params.c2), params.c3, 0.0};
}

ZState z_state(const AnsatzParams& params, double t, const WpOptions& opts) {
  if (!(t >= 0.0)) {
    throw StencilOutOfDomain("z(t) requested at t = " + std::to_string(t) +
                             " < 0");
  }
  const auto point =
      weierstrass_solution_point(z_curve(params), params.z0, params.sigma_z, t, opts);
  if (!(point.value > 0.0)) {
    throw RealityViolation("z(" + std::to_string(t) + ") = " +
                           std::to_string(point.value) +
                           " is not positive; d(t) = sqrt(z) is not real");
  }
  return {point.value, point.slope};
}

double z_of_t(const AnsatzParams& params, double t, const WpOptions& opts) {
  return z_state(params, t, opts).z;
}

QuarticCurve q_curve_from_state(double q, double c1, double c2, const ZState& zs) {
  if (!(zs.z > 0.0)) throw RealityViolation("q_curve needs z > 0");
  const double z = zs.z;
  return {-q / 2.0, 0.0, (c1 - 3.0 * q * z) / 6.0,
          zs.z_t / (4.0 * std::sqrt(z)), 2.0 * c2 + 1.5 * q * z * z - c1 * z};
}

QuarticCurve q_curve(const AnsatzParams& params, double t, const WpOptions& opts) {
  return q_curve_from_state(params.q, params.c1, params.c2, z_state(params, t, opts));
}

double Q_of_xt(const AnsatzParams& params, double x, double t, const WpOptions& opts) {
  return weierstrass_solution(q_curve(params, t, opts), params.Q0, params.sigma_q,
                              x, opts);
}

double phi_of_t(const AnsatzParams& params, double t, const WpOptions& opts) {
  if (!(t >= 0.0)) {
    throw StencilOutOfDomain("phi(t) requested at t = " + std::to_string(t) +
                             " < 0");
  }
  if (t == 0.0) return params.phi0;
  using boost::math::quadrature::gauss_kronrod;
  double error = 0.0;
  const double integral = gauss_kronrod<double, 15>::integrate(
      [&](double s) { return z_of_t(params, s, opts); }, 0.0, t, 15, 1e-12,
      &error);
  if (!(error <= 1e-10)) {
    throw PoleProximity("phi quadrature did not converge (error estimate " +
                        std::to_string(error) + "); z(t) is near a pole");
  }
  return params.phi0 + params.c1 * t - 2.0 * params.q * integral;
}

Complex field_A(const AnsatzParams& params, double x, double t, const WpOptions& opts) {
  return AnsatzSlice(params, t, opts).A(x);
}

AnsatzSlice::AnsatzSlice(const AnsatzParams& params, double t, const WpOptions& opts)
    : params_(params),
      opts_(opts),
      t_(t),
      z_(z_state(params, t, opts)),
      phi_(phi_of_t(params, t, opts)),
      curve_(q_curve_from_state(params.q, params.c1, params.c2, z_)) {}

SolutionPoint AnsatzSlice::Q_point(double x) const {
  return weierstrass_solution_point(curve_, params_.Q0, params_.sigma_q, x, opts_);
}

Complex AnsatzSlice::A(double x) const {
  return Complex(Q(x), std::sqrt(z_.z)) * std::polar(1.0, phi_);
}

std::vector<Complex> AnsatzSlice::A(std::span<const double> xs) const {
  std::vector<Complex> out;
  out.reserve(xs.size());
  for (double x : xs) out.push_back(A(x));
  return out;
}

}  // namespace nlscheck
