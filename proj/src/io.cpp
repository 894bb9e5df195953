#include "slb/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include "json.hpp"
#include <ostream>
#include <sstream>

#include "slb/error.hpp"

namespace slb::io {

namespace {

using nlohmann::json;

cplx parse_point(const json& j, const char* field) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw Error(Errc::ParseError, std::string(field) + ": expected [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

std::vector<cplx> parse_points(const json& doc, const char* field) {
  if (!doc.contains(field) || !doc[field].is_array())
    throw Error(Errc::ParseError, std::string("missing array '") + field + "'");
  std::vector<cplx> out;
  for (const auto& item : doc[field]) out.push_back(parse_point(item, field));
  return out;
}

std::string json_real(double x) { return std::isfinite(x) ? format_real(x) : "null"; }

std::string json_complex(cplx z) { return "[" + json_real(z.real()) + ", " + json_real(z.imag()) + "]"; }

}  // namespace

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_complex(cplx z) { return format_real(z.real()) + "," + format_real(z.imag()); }

AnalyticCurve parse_curve(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(Errc::ParseError, e.what());
  }
  if (!doc.is_object() || !doc.contains("kind") || !doc["kind"].is_string())
    throw Error(Errc::ParseError, "curve must be an object with a string 'kind'");
  const auto kind = doc["kind"].get<std::string>();
  if (kind == "conformal") {
    auto coeffs = parse_points(doc, "coeffs");
    if (!doc.contains("rho") || !doc["rho"].is_number())
      throw Error(Errc::ParseError, "conformal curve needs numeric 'rho'");
    return build_polynomial_curve(std::move(coeffs), doc["rho"].get<double>());
  }
  if (kind == "polygon") return build_polygon(parse_points(doc, "vertices"));
  throw Error(Errc::ParseError, "unknown curve kind '" + kind + "'");
}

AnalyticCurve load_curve(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::ParseError, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_curve(ss.str());
}

void write_transform_csv(std::ostream& out, std::span<const TransformValue> values) {
  out << "re_z,im_z,re_w,im_w,quadrant,re_C,im_C,re_E,im_E\n";
  for (const auto& v : values)
    out << format_complex(v.z) << ',' << format_complex(v.w) << ',' << to_string(v.quadrant) << ','
        << format_complex(v.C) << ',' << format_complex(v.E) << '\n';
}

void write_transform_json(std::ostream& out, std::span<const TransformValue> values) {
  out << "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    const auto& v = values[i];
    out << (i ? ",\n " : "\n ") << "{\"z\": " << json_complex(v.z) << ", \"w\": " << json_complex(v.w)
        << ", \"quadrant\": \"" << to_string(v.quadrant) << "\", \"C\": " << json_complex(v.C)
        << ", \"E\": " << json_complex(v.E) << "}";
  }
  out << "\n]\n";
}

void write_section_json(std::ostream& out, const SectionPair& section) {
  const auto& grid = section.grid();
  const auto density = section.log_density();
  out << "{\n  \"bundle\": \"" << section.bundle().describe() << "\",\n  \"chern\": " << section.chern()
      << ",\n  \"a\": " << (section.adjustment_point() ? json_complex(*section.adjustment_point()) : "null")
      << ",\n  \"normalization\": \"" << to_string(section.normalization()) << "\",\n  \"N\": " << grid.n
      << ",\n  \"density\": [";
  for (std::size_t j = 0; j < density.size(); ++j)
    out << (j ? ",\n    " : "\n    ") << "{\"t\": " << json_real(grid.t[j])
        << ", \"re\": " << json_real(density[j].real()) << ", \"im\": " << json_real(density[j].imag())
        << "}";
  out << "\n  ]\n}\n";
}

void write_quadrature_json(std::ostream& out, const QuadratureReport& report) {
  out << "{\"kind\": \"" << to_string(report.kind) << "\", \"residue_value\": "
      << json_complex(report.residue_value) << ", \"oracle_value\": " << json_complex(report.oracle_value)
      << ", \"discrepancy\": " << json_real(report.discrepancy) << "}\n";
}

}  // namespace slb::io
