#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nlscheck/ansatz.hpp"
#include "nlscheck/quartic.hpp"

namespace nlscheck::cli {

enum class Mode { PaperCheck, Scan, Residuals, Pde, Evolve, Selftest, Elliptic };
enum class Format { Csv, Json };

std::string_view to_string(Mode mode);

/// X0:X1:NX,T0:T1:NT. Points are spaced evenly with both ends included; a
/// count of 1 uses the lower bound only.
struct GridSpec {
  double x0 = 0.2;
  double x1 = 1.2;
  std::size_t nx = 10;
  double t0 = 0.2;
  double t1 = 1.2;
  std::size_t nt = 10;

  std::vector<double> xs() const;
  std::vector<double> ts() const;
};

GridSpec parse_grid(std::string_view text);

struct Branch {
  Sign sigma_z;
  Sign sigma_q;
};

/// "pp", "pm", "mp", "mm" (letters are the signs of z'(0) and Q_x(0, t)) or
/// "all", which expands to the four in that order.
std::vector<Branch> parse_branch(std::string_view text);
std::string branch_name(const Branch& b);

/// Tolerance names and their defaults.
std::map<std::string, double> default_tolerances();

struct RunConfig {
  Mode mode = Mode::PaperCheck;
  AnsatzParams params = paper_params();
  double x = 1.0;
  double t = 1.0;
  /// Unset means the subcommand's default: "all", except evolve ("mm").
  std::optional<std::string> branch;
  GridSpec grid;
  Format format = Format::Csv;
  std::optional<std::string> out;
  std::map<std::string, double> tol = default_tolerances();
  std::vector<std::string> skip;

  // evolve
  std::optional<double> window_min;
  std::optional<double> window_max;
  std::size_t n = 1024;
  double dt = 1e-3;
  double t_end = 0.5;
  std::vector<double> samples{0.1, 0.2, 0.3, 0.4};
  bool soliton = false;

  // elliptic
  double g2 = 3.52;
  double g3 = 1.0384;
  double u = 0.3;
  double u_im = 0.0;
};

/// Builds the configuration from command-line arguments (without the
/// program name): built-in defaults, then --config, then flags. Throws
/// nlscheck::InvalidArgument on any malformed or inconsistent input.
/// Returns nullopt after printing help.
std::optional<RunConfig> parse_args(const std::vector<std::string>& args,
                                    std::ostream& out);

int cmd_paper_check(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_scan(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_residuals(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_pde(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_evolve(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_selftest(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_elliptic(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Exit status: 0 success, 1 error or property failure, 2 the residual
/// properties hold but no branch reproduces the reference value.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nlscheck::cli
