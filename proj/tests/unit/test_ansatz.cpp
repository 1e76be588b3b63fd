#include <cmath>
#include <vector>

#include "doctest.h"
#include "nlscheck/ansatz.hpp"
#include "nlscheck/error.hpp"
#include "nlscheck/verify.hpp"
#include "oracles.hpp"

using nlscheck::AnsatzParams;
using nlscheck::Sign;

namespace {

const Sign kSigns[] = {Sign::Plus, Sign::Minus};

oracle::Params to_oracle(const AnsatzParams& p) {
  oracle::Params o;
  o.q = p.q;
  o.c1 = p.c1;
  o.c2 = p.c2;
  o.c3 = p.c3;
  o.z0 = p.z0;
  o.Q0 = p.Q0;
  o.phi0 = p.phi0;
  o.sigma_z = nlscheck::value(p.sigma_z);
  o.sigma_q = nlscheck::value(p.sigma_q);
  return o;
}

// R₁ has a double root at z0 = 1 and R₂ a double root at Q0 = 0, so the
// field is stationary: z ≡ 1, Q ≡ 0.
AnsatzParams stationary() {
  AnsatzParams p;
  p.q = -1.0;
  p.c1 = -3.0;
  p.c2 = -0.75;
  p.c3 = 4.0;
  p.z0 = 1.0;
  p.Q0 = 0.0;
  return p;
}

// R₁ has a double root at z0 = 1; Q still moves in x.
AnsatzParams z_equilibrium() {
  AnsatzParams p;
  p.q = -1.0;
  p.c1 = -2.0;
  p.c2 = 0.0;
  p.c3 = 0.0;
  p.z0 = 1.0;
  p.Q0 = 1.0;
  return p;
}

struct Frozen {
  Sign sz, sq;
  double Q11, Qhalf;
};

// 40-digit values from an independent integration of y'' = R'(y)/2.
const Frozen kFrozenQ[] = {
    {Sign::Plus, Sign::Plus, 1.5047536243848239396, 3.8341872672290910808},
    {Sign::Plus, Sign::Minus, 0.33120519255889502574, 0.68840058182273444457},
    {Sign::Minus, Sign::Plus, 2.2596493022336191188, 1.5510812625645684844},
    {Sign::Minus, Sign::Minus, 0.03099158539754236732, 0.28755454134524445761},
};

}  // namespace

TEST_CASE("z-curve coefficients") {
  const auto c = nlscheck::z_curve(nlscheck::paper_params());
  CHECK(c.alpha == -16.0);
  CHECK(c.beta == 8.0);
  CHECK(c.gamma == doctest::Approx(-1.6).epsilon(1e-15));
  CHECK(c.delta == 0.13);
  CHECK(c.epsilon == 0.0);

  AnsatzParams p;
  p.q = 1.0;
  p.c1 = p.c2 = p.c3 = 0.0;
  CHECK(nlscheck::z_curve(p) == nlscheck::QuarticCurve{-16.0, 0.0, 0.0, 0.0, 0.0});
  p.q = -1.0;
  p.c3 = 1.0;
  CHECK(nlscheck::z_curve(p) == nlscheck::QuarticCurve{-16.0, 0.0, 0.0, 1.0, 0.0});
}

TEST_CASE("parameter validation") {
  AnsatzParams p;
  CHECK_NOTHROW(nlscheck::validate(p));
  p.q = 0.0;
  CHECK_THROWS_AS(nlscheck::validate(p), nlscheck::InvalidArgument);
  p = {};
  p.z0 = 0.0;
  CHECK_THROWS_AS(nlscheck::validate(p), nlscheck::InvalidArgument);
  p = {};
  p.c2 = std::nan("");
  CHECK_THROWS_AS(nlscheck::validate(p), nlscheck::InvalidArgument);
  p = {};
  p.z0 = 3.0;  // R₁(3) < 0
  CHECK_THROWS_AS(nlscheck::validate(p), nlscheck::NegativeRadicand);
}

TEST_CASE("z at t = 0 and against direct integration") {
  for (Sign sz : kSigns) {
    const auto p = nlscheck::paper_params(sz);
    CHECK(nlscheck::z_of_t(p, 0.0) == p.z0);
    for (double t : {0.1, 0.5, 1.0, 1.7}) {
      const auto zs = nlscheck::z_state(p, t);
      const auto expected = oracle::z_values(to_oracle(p), t);
      CHECK(zs.z == doctest::Approx(static_cast<double>(expected.z)).epsilon(1e-12));
      CHECK(std::abs(zs.z_t - static_cast<double>(expected.z_t)) <= 1e-10);
    }
  }
  const auto plus = nlscheck::z_state(nlscheck::paper_params(Sign::Plus), 1.0);
  const auto minus = nlscheck::z_state(nlscheck::paper_params(Sign::Minus), 1.0);
  CHECK(plus.z == doctest::Approx(0.40003905897667655293).epsilon(1e-12));
  CHECK(plus.z_t == doctest::Approx(-0.55727939002333029013).epsilon(1e-10));
  CHECK(minus.z == doctest::Approx(0.28263141768566481359).epsilon(1e-12));
  CHECK(minus.z_t == doctest::Approx(0.021836176695233639395).epsilon(1e-9));
  CHECK(nlscheck::z_of_t(nlscheck::paper_params(Sign::Plus), 0.5) ==
        doctest::Approx(1.1806764397870865256).epsilon(1e-12));
  CHECK(nlscheck::z_of_t(nlscheck::paper_params(Sign::Minus), 0.5) ==
        doctest::Approx(0.36821730467491271447).epsilon(1e-12));
}

TEST_CASE("signed z_t follows the solution through its turning point") {
  // For z'(0) > 0 the solution turns around before t = 1; z_t must agree in
  // sign with the finite-difference slope on both sides.
  const auto p = nlscheck::paper_params(Sign::Plus);
  for (double t = 0.05; t < 2.0; t += 0.05) {
    const auto zs = nlscheck::z_state(p, t);
    const double h = 1e-6;
    const double fd = (nlscheck::z_of_t(p, t + h) - nlscheck::z_of_t(p, t - h)) / (2 * h);
    CHECK(std::abs(zs.z_t - fd) <= 1e-6 * std::max(1.0, std::abs(fd)));
  }
}

TEST_CASE("equilibrium z stays put") {
  const auto p = z_equilibrium();
  for (double t : {0.0, 0.3, 1.0, 2.5}) {
    CHECK(std::abs(nlscheck::z_of_t(p, t) - 1.0) <= 1e-10);
  }
  // φ is then linear: φ0 + (c₁ − 2q·z0)·t.
  for (double t : {0.0, 0.4, 1.3}) {
    CHECK(nlscheck::phi_of_t(p, t) == doctest::Approx((p.c1 - 2.0 * p.q) * t).epsilon(1e-10));
  }
}

TEST_CASE("Q-curve coefficients") {
  const auto p = nlscheck::paper_params();
  const auto c = nlscheck::q_curve(p, 0.0);
  CHECK(c.alpha == 0.5);
  CHECK(c.beta == 0.0);
  CHECK(6.0 * c.gamma == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(c.epsilon == doctest::Approx(1.3).epsilon(1e-15));
  for (Sign sz : kSigns) {
    const auto d = nlscheck::q_curve(nlscheck::paper_params(sz), 0.0).delta;
    CHECK(d == doctest::Approx(nlscheck::value(sz) * std::sqrt(6.92) / 4.0).epsilon(1e-15));
  }
  const auto frozen = nlscheck::q_curve_from_state(-1.0, 0.0, 0.0, {1.0, 0.0});
  CHECK(frozen.delta == 0.0);
}

TEST_CASE("Q(0, t) is exactly Q0") {
  for (Sign sz : kSigns) {
    for (Sign sq : kSigns) {
      const auto p = nlscheck::paper_params(sz, sq);
      for (double t : {0.0, 0.25, 1.0, 1.9}) CHECK(nlscheck::Q_of_xt(p, 0.0, t) == p.Q0);
    }
  }
}

TEST_CASE("Q against direct integration and frozen values") {
  for (const auto& f : kFrozenQ) {
    const auto p = nlscheck::paper_params(f.sz, f.sq);
    const double q11 = nlscheck::Q_of_xt(p, 1.0, 1.0);
    const double qhalf = nlscheck::Q_of_xt(p, 1.0, 0.5);
    CHECK(q11 == doctest::Approx(f.Q11).epsilon(1e-11));
    CHECK(qhalf == doctest::Approx(f.Qhalf).epsilon(1e-11));
    for (double x : {0.3, -0.4, 0.8}) {
      for (double t : {0.2, 0.7}) {
        const double expected = static_cast<double>(oracle::Q(to_oracle(p), x, t));
        if (std::abs(expected) > 20.0) continue;
        CHECK(nlscheck::Q_of_xt(p, x, t) == doctest::Approx(expected).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("stationary field") {
  const auto p = stationary();
  CHECK_NOTHROW(nlscheck::validate(p));
  for (double t : {0.0, 0.5, 1.5}) {
    CHECK(std::abs(nlscheck::z_of_t(p, t) - 1.0) <= 1e-10);
    for (double x : {0.0, 0.7, -1.2}) CHECK(std::abs(nlscheck::Q_of_xt(p, x, t)) <= 1e-10);
  }
}

TEST_CASE("phase integral") {
  for (Sign sz : kSigns) {
    auto p = nlscheck::paper_params(sz);
    CHECK(nlscheck::phi_of_t(p, 0.0) == p.phi0);
    const double expected = static_cast<double>(oracle::z_values(to_oracle(p), 1.0L).phi);
    CHECK(std::abs(nlscheck::phi_of_t(p, 1.0) - expected) <= 1e-10);
    p.phi0 = 0.75;
    CHECK(std::abs(nlscheck::phi_of_t(p, 1.0) - expected - 0.75) <= 1e-10);
  }
  CHECK(nlscheck::phi_of_t(nlscheck::paper_params(Sign::Plus), 1.0) ==
        doctest::Approx(0.10391202305043712823).epsilon(1e-10));
  CHECK(nlscheck::phi_of_t(nlscheck::paper_params(Sign::Minus), 1.0) ==
        doctest::Approx(-1.0993575009792671335).epsilon(1e-10));
}

TEST_CASE("field at the origin and modulus identity") {
  auto p = nlscheck::paper_params();
  const auto a0 = nlscheck::field_A(p, 0.0, 0.0);
  CHECK(a0.real() == p.Q0);
  CHECK(a0.imag() == std::sqrt(p.z0));
  for (Sign sz : kSigns) {
    for (Sign sq : kSigns) {
      p = nlscheck::paper_params(sz, sq);
      p.phi0 = 0.3;
      for (double x : {0.2, 0.9, -0.5}) {
        for (double t : {0.1, 0.6, 1.0}) {
          const auto A = nlscheck::field_A(p, x, t);
          const double Q = nlscheck::Q_of_xt(p, x, t);
          const double z = nlscheck::z_of_t(p, t);
          CHECK(std::abs(std::norm(A) - (Q * Q + z)) <= 1e-12 * (Q * Q + z));
        }
      }
    }
  }
}

TEST_CASE("slice evaluation matches pointwise evaluation") {
  const auto p = nlscheck::paper_params(Sign::Minus, Sign::Plus);
  const nlscheck::AnsatzSlice slice(p, 0.5);
  CHECK(slice.z().z == nlscheck::z_of_t(p, 0.5));
  CHECK(slice.phi() == doctest::Approx(nlscheck::phi_of_t(p, 0.5)).epsilon(1e-14));
  const std::vector<double> xs{-0.5, 0.0, 0.4, 1.1};
  const auto values = slice.A(xs);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    CHECK(slice.Q(xs[i]) == nlscheck::Q_of_xt(p, xs[i], 0.5));
    CHECK(std::abs(values[i] - nlscheck::field_A(p, xs[i], 0.5)) <= 1e-13);
  }
}

TEST_CASE("negative times are outside the domain") {
  CHECK_THROWS_AS(nlscheck::z_of_t(nlscheck::paper_params(), -0.1),
                  nlscheck::StencilOutOfDomain);
}

TEST_CASE("z residual on a time grid, all branches") {
  for (Sign sz : kSigns) {
    const auto p = nlscheck::paper_params(sz);
    for (double t = 0.05; t <= 2.0; t += 0.05) {
      CHECK(nlscheck::residual_R1(p, t) <= 1e-8);
    }
  }
}

TEST_CASE("Q residual on an x grid, all branches") {
  for (Sign sz : kSigns) {
    for (Sign sq : kSigns) {
      const auto p = nlscheck::paper_params(sz, sq);
      for (double t : {0.25, 0.5, 1.0}) {
        for (double x = 0.05; x <= 2.0; x += 0.05) {
          double distance = 0.0;
          try {
            distance = nlscheck::q_pole_distance(p, x, t);
          } catch (const nlscheck::PoleProximity&) {
            continue;
          }
          if (distance < 0.01) continue;
          CHECK(nlscheck::residual_R2(p, x, t) <= 1e-8);
        }
      }
    }
  }
}

TEST_CASE("invariants of both curves match the closed forms") {
  for (Sign sz : kSigns) {
    const auto p = nlscheck::paper_params(sz);
    for (double t : {0.0, 0.3, 1.0, 1.6}) {
      const auto dev = nlscheck::invariant_crosscheck(p, t);
      CHECK(dev.z_curve <= 1e-12);
      CHECK(dev.q_curve <= 1e-12);
    }
  }
}
