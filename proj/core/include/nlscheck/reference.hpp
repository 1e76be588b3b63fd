#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "nlscheck/ansatz.hpp"
#include "nlscheck/elliptic.hpp"

namespace nlscheck {

/// Periodic grid x_j = x_min + j·(x_max − x_min)/n, j = 0..n−1, with a fixed
/// time step.
struct SpectralGrid {
  double x_min = -40.0;
  double x_max = 40.0;
  std::size_t n = 1024;
  double dt = 1e-3;

  double length() const noexcept { return x_max - x_min; }
  double dx() const noexcept { return length() / static_cast<double>(n); }
  std::vector<double> points() const;
};

/// n ≥ 64 and a power of two, x_max > x_min, dt > 0; InvalidArgument otherwise.
void validate(const SpectralGrid& grid);

enum class TimeDirection { Forward, Backward };

struct EvolveResult {
  std::vector<Complex> samples;
  /// Non-fatal diagnostics, e.g. the step exceeding the aliasing threshold.
  std::vector<std::string> warnings;
};

/// Strang splitting for A_t = i·p·A_xx + i·q·|A|²·A: exact linear half-step
/// in Fourier space, exact nonlinear phase rotation, linear half-step.
/// Backward runs the same scheme with −dt. Throws NonFiniteSamples on
/// non-finite input.
EvolveResult split_step_evolve(std::span<const Complex> samples, double p, double q,
                               const SpectralGrid& grid, std::size_t steps,
                               TimeDirection direction = TimeDirection::Forward);

/// Σ|A_j|²·dx.
double discrete_mass(std::span<const Complex> samples, double dx);

struct WindowOptions {
  /// Raised-cosine taper applied to the initial data over this fraction of
  /// the window on each side.
  double taper_fraction = 0.1;
  /// Deviations are measured on the central fraction of the window only.
  double inner_fraction = 0.6;
};

struct DivergenceSample {
  double t;
  double l2;
  double linf;
};

struct DivergenceSeries {
  std::vector<DivergenceSample> samples;
  /// True when the L2 deviation never decreases between samples.
  bool monotone = true;
  SpectralGrid grid;
  WindowOptions window;
  double p = 1.0;
  double q = 0.0;
  std::vector<std::string> warnings;
};

/// The field to compare against at time t on the given x points.
using SliceSampler =
    std::function<std::vector<Complex>(std::span<const double> xs, double t)>;

/// Evolves field(·, 0) (tapered) with the split-step scheme and records the
/// deviation from field(·, t) at 0, t_end and every sample time in between.
/// Sample times must be integer multiples of dt.
DivergenceSeries field_divergence(const SliceSampler& field, const SpectralGrid& grid,
                                  double p, double q, double t_end,
                                  std::span<const double> sample_times,
                                  const WindowOptions& window);

/// Throws WindowContainsPole if Q(·, t) has a pole inside the grid window at
/// any of the given times.
void check_window_poles(const AnsatzParams& params, const SpectralGrid& grid,
                        std::span<const double> times);

/// A genuine solution launched from the trial field at t = 0, compared with
/// the trial field at later times.
DivergenceSeries ansatz_divergence(const AnsatzParams& params, const SpectralGrid& grid,
                                   double t_end, std::span<const double> sample_times,
                                   const WindowOptions& window = {}, double p = 1.0);

/// Control run: the exact soliton of i·A_t + p·A_xx + q·A|A|² = 0, no taper,
/// whole-window metric.
DivergenceSeries soliton_divergence(double a, double p, double q,
                                    const SpectralGrid& grid, double t_end,
                                    std::span<const double> sample_times);

}  // namespace nlscheck
