#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "nlscheck/ansatz.hpp"

namespace nlscheck {

/// Outcome of one randomized or sampled invariant check. `worst` is the
/// largest observed deviation, in the units the tolerance is stated in.
struct PropertyResult {
  std::string name;
  double worst = 0.0;
  double tolerance = 0.0;
  std::size_t samples = 0;
  std::size_t skipped = 0;
  bool passed = false;
  std::string detail;
};

inline constexpr std::uint64_t kDefaultSeed = 20240917;

/// |℘'² − (4℘³ − g2℘ − g3)| / max(1, |℘|³) for (g2, g3) ∈ [−5, 5]² and
/// complex u with 0.05 ≤ |u| ≤ 3.
PropertyResult check_wp_identity(std::size_t samples = 200, double tol = 1e-10,
                                 std::uint64_t seed = kDefaultSeed);

/// Classical invariants of the z- and Q-curve coefficient lists against the
/// closed forms, over random (q, c₁, c₂, c₃) and z with R₁(z) ≥ 0.
PropertyResult check_invariant_identities(std::size_t draws = 1000,
                                          double tol = 1e-12,
                                          std::uint64_t seed = kDefaultSeed);

/// (Δ_h y)² against R(y) for random curves with |coefficients| ≤ 4, y₀ with
/// R(y₀) > 0.1 and ξ ∈ [0.05, 1.5]; Δ_h is the h = 1e−5 central difference
/// with one Richardson refinement. Samples with |y| > 50 count as
/// pole-adjacent and are skipped.
PropertyResult check_quartic_ode(std::size_t curves = 100, double tol = 1e-6,
                                 std::uint64_t seed = kDefaultSeed);

/// Curves (y − r)²·(a·y² + b·y + c) started at y₀ = r stay at r.
PropertyResult check_equilibrium(std::size_t cases = 50, double tol = 1e-10,
                                 std::uint64_t seed = kDefaultSeed);

/// residual_P(0, t) against −√z(t)·(c₁ − q(3z(t) + Q0²)) on t ∈ [0, 2].
PropertyResult check_pole_closed_form(const AnsatzParams& params, double tol = 1e-9);

/// Order of cnlse_residual on the exact soliton (p = 1, q = 2, a = 1) at
/// (0.5, 0.3), plain central differences with h = 0.02, 0.01, 0.005, plus
/// the magnitude at h = 1e−3. worst = |order − 2|.
PropertyResult check_soliton_order(double order_tol = 0.1,
                                   double residual_tol = 1e-5);

/// Relative drift of Σ|A|²dx over 1000 split steps of the soliton.
PropertyResult check_mass_conservation(double tol = 1e-10);

/// max |ifft(fft(x)) − x| for a random vector of length 1024.
PropertyResult check_fft_roundtrip(double tol = 1e-12,
                                   std::uint64_t seed = kDefaultSeed);

}  // namespace nlscheck
