#include "nlscheck/reference.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "nlscheck/error.hpp"
#include "nlscheck/fft.hpp"
#include "nlscheck/verify.hpp"

namespace nlscheck {

std::vector<double> SpectralGrid::points() const {
  std::vector<double> xs(n);
  for (std::size_t j = 0; j < n; ++j) xs[j] = x_min + dx() * static_cast<double>(j);
  return xs;
}

void validate(const SpectralGrid& grid) {
  if (grid.n < 64 || !is_power_of_two(grid.n)) {
    throw InvalidArgument("grid size must be a power of two and at least 64");
  }
  if (!(grid.x_max > grid.x_min) || !std::isfinite(grid.length())) {
    throw InvalidArgument("grid needs x_max > x_min");
  }
  if (!(grid.dt > 0.0) || !std::isfinite(grid.dt)) {
    throw InvalidArgument("time step must be positive");
  }
}

double discrete_mass(std::span<const Complex> samples, double dx) {
  double mass = 0.0;
  for (const auto& a : samples) mass += std::norm(a);
  return mass * dx;
}

EvolveResult split_step_evolve(std::span<const Complex> samples, double p, double q,
                               const SpectralGrid& grid, std::size_t steps,
                               TimeDirection direction) {
  validate(grid);
  if (samples.size() != grid.n) {
    throw InvalidArgument("sample count does not match grid size");
  }
  for (const auto& a : samples) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
      throw NonFiniteSamples("split_step_evolve: non-finite initial sample");
    }
  }

  EvolveResult result{{samples.begin(), samples.end()}, {}};
  const std::size_t n = grid.n;
  const double dt = direction == TimeDirection::Forward ? grid.dt : -grid.dt;
  const double k_max = std::numbers::pi * static_cast<double>(n) / grid.length();
  if (p != 0.0 && grid.dt > 0.5 / (std::abs(p) * k_max * k_max)) {
    result.warnings.push_back("AliasingWarning: dt = " + std::to_string(grid.dt) +
                              " exceeds 0.5/(p*k_max^2) = " +
                              std::to_string(0.5 / (std::abs(p) * k_max * k_max)));
  }
  if (steps == 0) return result;

  std::vector<Complex> half(n);
  std::vector<Complex> full(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double index = j < n / 2 ? static_cast<double>(j)
                                   : static_cast<double>(j) - static_cast<double>(n);
    const double k = 2.0 * std::numbers::pi * index / grid.length();
    half[j] = std::polar(1.0, -p * k * k * dt / 2.0);
    full[j] = std::polar(1.0, -p * k * k * dt);
  }

  auto& a = result.samples;
  const auto linear = [&](const std::vector<Complex>& multiplier) {
    fft(a, FftDirection::Forward);
    for (std::size_t j = 0; j < n; ++j) a[j] *= multiplier[j];
    fft(a, FftDirection::Inverse);
  };
  const auto nonlinear = [&] {
    for (auto& v : a) v *= std::polar(1.0, q * std::norm(v) * dt);
  };

  // Adjacent linear half-steps of consecutive Strang steps merge into one.
  linear(half);
  for (std::size_t s = 0; s + 1 < steps; ++s) {
    nonlinear();
    linear(full);
  }
  nonlinear();
  linear(half);
  return result;
}

namespace {

std::vector<double> sample_schedule(double t_end, std::span<const double> sample_times,
                                    double dt) {
  if (!(t_end >= 0.0)) throw InvalidArgument("t_end must be non-negative");
  std::vector<double> times{0.0, t_end};
  for (double t : sample_times) {
    if (!(t >= 0.0 && t <= t_end)) {
      throw InvalidArgument("sample time " + std::to_string(t) +
                            " outside [0, t_end]");
    }
    times.push_back(t);
  }
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  for (double t : times) {
    const double steps = std::round(t / dt);
    if (std::abs(steps * dt - t) > 1e-9 * std::max(1.0, t)) {
      throw InvalidArgument("sample time " + std::to_string(t) +
                            " is not a multiple of dt");
    }
  }
  return times;
}

double taper_weight(double s, double fraction) {
  if (fraction <= 0.0) return 1.0;
  const double edge = std::min(s, 1.0 - s);
  if (edge >= fraction) return 1.0;
  return 0.5 - 0.5 * std::cos(std::numbers::pi * edge / fraction);
}

}  // namespace

DivergenceSeries field_divergence(const SliceSampler& field, const SpectralGrid& grid,
                                  double p, double q, double t_end,
                                  std::span<const double> sample_times,
                                  const WindowOptions& window) {
  validate(grid);
  if (window.taper_fraction < 0.0 || window.taper_fraction >= 0.5 ||
      !(window.inner_fraction > 0.0) || window.inner_fraction > 1.0) {
    throw InvalidArgument("window fractions out of range");
  }
  const auto times = sample_schedule(t_end, sample_times, grid.dt);
  const auto xs = grid.points();
  const double length = grid.length();

  std::vector<std::size_t> inner_index;
  std::vector<double> inner_x;
  const double lo = (1.0 - window.inner_fraction) / 2.0;
  const double hi = 1.0 - lo;
  for (std::size_t j = 0; j < xs.size(); ++j) {
    const double s = (xs[j] - grid.x_min) / length;
    if (s >= lo && s <= hi) {
      inner_index.push_back(j);
      inner_x.push_back(xs[j]);
    }
  }

  std::vector<Complex> state = field(xs, 0.0);
  for (std::size_t j = 0; j < xs.size(); ++j) {
    state[j] *= taper_weight((xs[j] - grid.x_min) / length, window.taper_fraction);
  }

  DivergenceSeries series;
  series.grid = grid;
  series.window = window;
  series.p = p;
  series.q = q;

  std::size_t steps_done = 0;
  for (double t : times) {
    const auto target = static_cast<std::size_t>(std::llround(t / grid.dt));
    if (target > steps_done) {
      auto evolved = split_step_evolve(state, p, q, grid, target - steps_done);
      state = std::move(evolved.samples);
      for (auto& w : evolved.warnings) {
        if (std::find(series.warnings.begin(), series.warnings.end(), w) ==
            series.warnings.end()) {
          series.warnings.push_back(std::move(w));
        }
      }
      steps_done = target;
    }
    const auto expected = field(inner_x, t);
    double sum = 0.0;
    double linf = 0.0;
    for (std::size_t i = 0; i < inner_index.size(); ++i) {
      const double d = std::abs(state[inner_index[i]] - expected[i]);
      sum += d * d;
      linf = std::max(linf, d);
    }
    const double l2 = std::sqrt(sum * grid.dx());
    if (!series.samples.empty() && l2 < series.samples.back().l2) {
      series.monotone = false;
    }
    series.samples.push_back({t, l2, linf});
  }
  return series;
}

void check_window_poles(const AnsatzParams& params, const SpectralGrid& grid,
                        std::span<const double> times) {
  const auto xs = grid.points();
  for (double t : times) {
    QuarticCurve curve;
    try {
      curve = q_curve(params, t);
    } catch (const PoleProximity& e) {
      throw WindowContainsPole(std::string("z(t) pole at t = ") + std::to_string(t) +
                               ": " + e.what());
    }
    std::vector<SolutionPoint> pts;
    pts.reserve(xs.size());
    for (double x : xs) {
      try {
        pts.push_back(weierstrass_solution_point(curve, params.Q0, params.sigma_q, x));
      } catch (const PoleProximity&) {
        throw WindowContainsPole("Q(x, t) has a pole at x = " + std::to_string(x) +
                                 ", t = " + std::to_string(t));
      }
    }
    // A pole shows up as a sign change of the pole factor where the Newton
    // steps from both ends agree on a point inside the cell. Across a
    // lattice point of ℘ the factor also flips, but through infinity; there
    // each step lands a third of its distance beyond its own end, so the
    // two estimates sit more than a cell apart.
    for (std::size_t j = 0; j + 1 < pts.size(); ++j) {
      const auto& a = pts[j];
      const auto& b = pts[j + 1];
      if (!std::isfinite(a.pole_factor) || !std::isfinite(b.pole_factor)) continue;
      if (std::signbit(a.pole_factor) == std::signbit(b.pole_factor)) continue;
      const double from_a = xs[j] + a.pole_offset;
      const double from_b = xs[j + 1] + b.pole_offset;
      const double dx = grid.dx();
      const double mid = 0.5 * (from_a + from_b);
      if (std::abs(from_a - from_b) <= 0.5 * dx && mid >= xs[j] - 0.25 * dx &&
          mid <= xs[j + 1] + 0.25 * dx) {
        throw WindowContainsPole("Q(x, t) has a pole in [" + std::to_string(xs[j]) + ", " +
                                 std::to_string(xs[j + 1]) + "] at t = " +
                                 std::to_string(t));
      }
    }
  }
}

DivergenceSeries ansatz_divergence(const AnsatzParams& params, const SpectralGrid& grid,
                                   double t_end, std::span<const double> sample_times,
                                   const WindowOptions& window, double p) {
  validate(params);
  validate(grid);
  const auto times = sample_schedule(t_end, sample_times, grid.dt);
  check_window_poles(params, grid, times);
  const SliceSampler field = [&](std::span<const double> xs, double t) {
    return AnsatzSlice(params, t).A(xs);
  };
  return field_divergence(field, grid, p, params.q, t_end, sample_times, window);
}

DivergenceSeries soliton_divergence(double a, double p, double q,
                                    const SpectralGrid& grid, double t_end,
                                    std::span<const double> sample_times) {
  const auto soliton = soliton_field(a, p, q);
  const SliceSampler field = [&](std::span<const double> xs, double t) {
    std::vector<Complex> out;
    out.reserve(xs.size());
    for (double x : xs) out.push_back(soliton.eval(x, t));
    return out;
  };
  return field_divergence(field, grid, p, q, t_end, sample_times,
                          WindowOptions{0.0, 1.0});
}

}  // namespace nlscheck
