#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nlscheck/reference.hpp"
#include "nlscheck/verify.hpp"

namespace nlscheck {

/// Key/value pairs written into the "meta" object of JSON documents, in
/// order. Values are written as strings.
using Metadata = std::vector<std::pair<std::string, std::string>>;

/// Fixed CSV header: sigma_z,sigma_q,x,t,P,r1,r2,pde_abs,flags
std::string residual_csv_header();
/// One CSV row, numbers at 12 significant digits, NaN as "nan".
std::string residual_csv_row(const ResidualReport& report);

void write_residual_csv(std::ostream& out, std::span<const ResidualReport> reports);

/// {"meta": {...}, "records": [{x, t, sigma_z, sigma_q, P, r1, r2, pde_abs,
/// notes}, ...]}. Doubles round-trip exactly; NaN becomes null.
void write_residual_json(std::ostream& out, std::span<const ResidualReport> reports,
                         const Metadata& meta);

/// Same fields as a standalone JSON object string (no metadata).
std::string residual_json(const ResidualReport& report);

/// CSV with header t,l2,linf.
void write_divergence_csv(std::ostream& out, const DivergenceSeries& series);

/// {"meta": {..., grid, dt, taper, inner fraction, warnings}, "samples":
/// [{t, l2, linf}, ...], "monotone": bool}.
void write_divergence_json(std::ostream& out, const DivergenceSeries& series,
                           const Metadata& meta);

/// Shortest decimal that round-trips to the same double.
std::string format_exact(double v);
/// printf("%.12g") with "nan"/"inf" spelled out.
std::string format_12g(double v);

}  // namespace nlscheck
