#include "nlscheck/report.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "json.hpp"

namespace nlscheck {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json number_or_null(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

ordered_json to_json(const ResidualReport& r) {
  ordered_json j;
  j["x"] = number_or_null(r.x);
  j["t"] = number_or_null(r.t);
  j["sigma_z"] = static_cast<int>(r.sigma_z);
  j["sigma_q"] = static_cast<int>(r.sigma_q);
  j["P"] = number_or_null(r.P);
  j["r1"] = number_or_null(r.r1);
  j["r2"] = number_or_null(r.r2);
  j["pde_abs"] = number_or_null(r.pde_abs);
  j["notes"] = r.notes;
  return j;
}

}  // namespace

std::string format_12g(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string format_exact(double v) {
  if (!std::isfinite(v)) return format_12g(v);
  return ordered_json(v).dump();
}

std::string residual_csv_header() {
  return "sigma_z,sigma_q,x,t,P,r1,r2,pde_abs,flags";
}

std::string residual_csv_row(const ResidualReport& r) {
  std::string row;
  row += std::to_string(static_cast<int>(r.sigma_z));
  row += ',';
  row += std::to_string(static_cast<int>(r.sigma_q));
  for (double v : {r.x, r.t, r.P, r.r1, r.r2, r.pde_abs}) {
    row += ',';
    row += format_12g(v);
  }
  row += ',';
  row += r.notes;
  return row;
}

void write_residual_csv(std::ostream& out, std::span<const ResidualReport> reports) {
  out << residual_csv_header() << '\n';
  for (const auto& r : reports) out << residual_csv_row(r) << '\n';
}

void write_residual_json(std::ostream& out, std::span<const ResidualReport> reports,
                         const Metadata& meta) {
  ordered_json doc;
  ordered_json m = ordered_json::object();
  for (const auto& [k, v] : meta) m[k] = v;
  doc["meta"] = std::move(m);
  doc["records"] = ordered_json::array();
  for (const auto& r : reports) doc["records"].push_back(to_json(r));
  out << doc.dump(2) << '\n';
}

std::string residual_json(const ResidualReport& report) {
  return to_json(report).dump();
}

void write_divergence_csv(std::ostream& out, const DivergenceSeries& series) {
  out << "t,l2,linf\n";
  for (const auto& s : series.samples) {
    out << format_12g(s.t) << ',' << format_12g(s.l2) << ',' << format_12g(s.linf)
        << '\n';
  }
}

void write_divergence_json(std::ostream& out, const DivergenceSeries& series,
                           const Metadata& meta) {
  ordered_json doc;
  ordered_json m = ordered_json::object();
  for (const auto& [k, v] : meta) m[k] = v;
  m["grid"] = {{"x_min", series.grid.x_min},
               {"x_max", series.grid.x_max},
               {"n", series.grid.n},
               {"dt", series.grid.dt}};
  m["taper_fraction"] = series.window.taper_fraction;
  m["inner_fraction"] = series.window.inner_fraction;
  m["p"] = series.p;
  m["q"] = series.q;
  m["warnings"] = series.warnings;
  doc["meta"] = std::move(m);
  doc["samples"] = ordered_json::array();
  for (const auto& s : series.samples) {
    doc["samples"].push_back(ordered_json{{"t", number_or_null(s.t)},
                                          {"l2", number_or_null(s.l2)},
                                          {"linf", number_or_null(s.linf)}});
  }
  doc["monotone"] = series.monotone;
  out << doc.dump(2) << '\n';
}

}  // namespace nlscheck
