#include "doctest.h"
#include "nlscheck/ansatz.hpp"
#include "nlscheck/properties.hpp"

using nlscheck::PropertyResult;

namespace {

void check_passes(const PropertyResult& r) {
  INFO(r.name << ": worst " << r.worst << " vs " << r.tolerance << " " << r.detail);
  CHECK(r.passed);
  CHECK(r.samples > 0);
  CHECK(r.worst <= r.tolerance);
}

}  // namespace

TEST_CASE("every property holds at its default tolerance") {
  check_passes(nlscheck::check_wp_identity());
  check_passes(nlscheck::check_invariant_identities());
  check_passes(nlscheck::check_quartic_ode());
  check_passes(nlscheck::check_equilibrium());
  check_passes(nlscheck::check_pole_closed_form(nlscheck::paper_params()));
  check_passes(nlscheck::check_soliton_order());
  check_passes(nlscheck::check_mass_conservation());
  check_passes(nlscheck::check_fft_roundtrip());
}

TEST_CASE("sample counts follow the request") {
  CHECK(nlscheck::check_wp_identity(37).samples == 37);
  CHECK(nlscheck::check_invariant_identities(25).samples == 25);
  CHECK(nlscheck::check_equilibrium(10).samples >= 10);
}

TEST_CASE("checks fail when the tolerance is out of reach") {
  const double tiny = 1e-300;
  const PropertyResult results[] = {
      nlscheck::check_wp_identity(200, tiny),
      nlscheck::check_quartic_ode(100, tiny),
      nlscheck::check_soliton_order(tiny, 1e-5),
      nlscheck::check_mass_conservation(tiny),
      nlscheck::check_fft_roundtrip(tiny),
  };
  for (const auto& r : results) {
    INFO(r.name);
    CHECK_FALSE(r.passed);
    CHECK(r.worst > tiny);
  }
}

TEST_CASE("the same seed gives the same result") {
  const auto a = nlscheck::check_quartic_ode(20, 1e-6, 99);
  const auto b = nlscheck::check_quartic_ode(20, 1e-6, 99);
  CHECK(a.worst == b.worst);
  CHECK(a.skipped == b.skipped);
  const auto c = nlscheck::check_quartic_ode(20, 1e-6, 100);
  CHECK(c.worst != a.worst);
}
