#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>

#include "slb/bundles.hpp"
#include "slb/curve.hpp"
#include "slb/quaddom.hpp"
#include "slb/transforms.hpp"

namespace slb::io {

/// Parses { "kind": "conformal", "coeffs": [[re,im],...], "rho": r } or
/// { "kind": "polygon", "vertices": [[re,im],...] }. Malformed input raises
/// ParseError; geometric failures keep their own codes.
AnalyticCurve parse_curve(std::string_view text);
AnalyticCurve load_curve(const std::string& path);

/// %.17g
std::string format_real(double x);
/// "re,im" with both parts as format_real.
std::string format_complex(cplx z);

void write_transform_csv(std::ostream& out, std::span<const TransformValue> values);
void write_transform_json(std::ostream& out, std::span<const TransformValue> values);

void write_section_json(std::ostream& out, const SectionPair& section);

struct QuadratureReport {
  QuadratureKind kind;
  cplx residue_value;
  cplx oracle_value;
  double discrepancy = 0.0;
};

void write_quadrature_json(std::ostream& out, const QuadratureReport& report);

}  // namespace slb::io
