#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "slb/bundles.hpp"
#include "slb/curve.hpp"
#include "slb/io.hpp"
#include "slb/quaddom.hpp"
#include "slb/transforms.hpp"

namespace slb::cli {

namespace {

using io::format_complex;
using io::format_real;

struct RunConfig {
  double tol = 1e-10;
  std::size_t n = 256;
  std::size_t max_n = kMaxNodes;
  std::string format = "json";
  bool n_pinned = false;
};

struct BundleArgs {
  std::string kind = "exp-schwarz";
  std::string w;
  int m = 2;
  std::string a;
};

cplx parse_complex(const std::string& text) {
  std::string s = text;
  std::replace(s.begin(), s.end(), ',', ' ');
  std::istringstream in(s);
  double re = 0.0;
  double im = 0.0;
  if (!(in >> re)) throw Error(Errc::ParseError, "cannot parse complex number '" + text + "'");
  if (!(in >> im)) im = 0.0;
  std::string rest;
  if (in >> rest) throw Error(Errc::ParseError, "cannot parse complex number '" + text + "'");
  return {re, im};
}

std::string json_complex(cplx z) {
  return "[" + format_real(z.real()) + ", " + format_real(z.imag()) + "]";
}

const ConformalMapCurve& conformal(const AnalyticCurve& curve) {
  if (const auto* c = std::get_if<ConformalMapCurve>(&curve)) return *c;
  throw Error(Errc::NotConformalMapCurve, "this command needs a conformal-map curve");
}

// Runs fn on a grid of cfg.n nodes. Unless N was pinned, NearBoundary and
// BranchUnresolved retry with twice the nodes up to max N.
template <typename Fn>
auto with_grid(const AnalyticCurve& curve, const RunConfig& cfg, Fn&& fn) {
  std::size_t n = cfg.n;
  while (true) {
    try {
      return fn(sample(curve, n));
    } catch (const Error& e) {
      const bool retry = e.code() == Errc::NearBoundary || e.code() == Errc::BranchUnresolved;
      if (!retry || cfg.n_pinned || 2 * n > cfg.max_n) throw;
      n *= 2;
    }
  }
}

LineBundle make_bundle(const ConformalMapCurve& curve, const BundleArgs& args) {
  if (args.kind == "exp-schwarz") return LineBundle::exp_schwarz(curve);
  if (args.kind == "schwarz-pole") {
    if (args.w.empty()) throw Error(Errc::ParseError, "schwarz-pole needs --w");
    return LineBundle::schwarz_pole(curve, parse_complex(args.w));
  }
  if (args.kind == "tangent-power") return LineBundle::tangent_power(curve, args.m);
  throw Error(Errc::ParseError, "unknown bundle kind '" + args.kind + "'");
}

SectionOptions section_options(const BundleArgs& args) {
  SectionOptions opts;
  if (!args.a.empty()) opts.adjustment_point = parse_complex(args.a);
  return opts;
}

int cmd_validate(const std::string& file, const RunConfig& cfg, std::ostream& out) {
  const auto curve = io::load_curve(file);
  out << "{\"valid\": true";
  if (const auto* c = std::get_if<ConformalMapCurve>(&curve)) {
    const auto grid = sample(*c, cfg.n);
    const auto m0 = harmonic_moments(*c, grid, 0, 0)[0];
    out << ", \"kind\": \"conformal\", \"annulus\": [" << format_real(c->annulus_radius()) << ", "
        << format_real(1.0 / c->annulus_radius()) << "], \"area_over_pi\": " << format_real(m0.real());
  } else {
    const auto& p = std::get<PolygonCurve>(curve);
    out << ", \"kind\": \"polygon\", \"vertices\": " << p.size()
        << ", \"area_over_pi\": " << format_real(p.area() / kPi);
  }
  out << ", \"N\": " << cfg.n << "}\n";
  return kOk;
}

int cmd_transform(const std::string& file, const std::string& z_text, const std::string& w_text,
                  const RunConfig& cfg, std::ostream& out) {
  const auto curve = io::load_curve(file);
  const auto& c = conformal(curve);
  const cplx z = parse_complex(z_text);
  if (w_text.empty()) {
    return with_grid(curve, cfg, [&](const ContourGrid& grid) {
      const cplx value = cauchy_transform(c, grid, z);
      const Side side = side_of(grid, z);
      if (cfg.format == "csv")
        out << "re_z,im_z,side,re_C,im_C\n"
            << format_complex(z) << ',' << (side == Side::Interior ? "int" : "ext") << ','
            << format_complex(value) << '\n';
      else
        out << "{\"z\": " << json_complex(z) << ", \"side\": \""
            << (side == Side::Interior ? "interior" : "exterior") << "\", \"C\": " << json_complex(value)
            << ", \"N\": " << grid.n << "}\n";
      return kOk;
    });
  }
  const cplx w = parse_complex(w_text);
  return with_grid(curve, cfg, [&](const ContourGrid& grid) {
    const auto v = double_cauchy(c, grid, z, w);
    const TransformValue values[] = {v};
    if (cfg.format == "csv") {
      io::write_transform_csv(out, values);
      return kOk;
    }
    const char* piece = "F";
    cplx piece_value = v.E;
    if (v.quadrant.z == Side::Interior && v.quadrant.w == Side::Exterior) {
      piece = "G";
      piece_value = v.E / (std::conj(z) - std::conj(w));
    } else if (v.quadrant.z == Side::Exterior && v.quadrant.w == Side::Interior) {
      piece = "G*";
      piece_value = -v.E / (z - w);
    } else if (v.quadrant.z == Side::Interior) {
      piece = "H";
      piece_value = v.E / std::norm(z - w);
    }
    out << "{\"z\": " << json_complex(z) << ", \"w\": " << json_complex(w) << ", \"quadrant\": \""
        << to_string(v.quadrant) << "\", \"C\": " << json_complex(v.C) << ", \"E\": " << json_complex(v.E)
        << ", \"piece\": \"" << piece << "\", \"piece_value\": " << json_complex(piece_value)
        << ", \"N\": " << grid.n << "}\n";
    return kOk;
  });
}

void write_moments(const MomentTable& table, const RunConfig& cfg, std::ostream& out) {
  if (cfg.format == "csv") {
    out << "k,re,im\n";
    for (int k = table.k_min(); k <= table.k_max(); ++k)
      out << k << ',' << format_complex(table[k]) << '\n';
    return;
  }
  out << "{\"moments\": [";
  for (int k = table.k_min(); k <= table.k_max(); ++k)
    out << (k == table.k_min() ? "" : ", ") << "{\"k\": " << k << ", \"M\": " << json_complex(table[k]) << "}";
  out << "]}\n";
}

int cmd_moments(const std::string& file, int k_min, int k_max, const RunConfig& cfg, std::ostream& out) {
  const auto curve = io::load_curve(file);
  const auto& c = conformal(curve);
  write_moments(harmonic_moments(c, sample(c, cfg.n), k_min, k_max), cfg, out);
  return kOk;
}

int cmd_section(const std::string& file, const BundleArgs& args, bool verify, const std::string& dump,
                const RunConfig& cfg, std::ostream& out) {
  const auto curve = io::load_curve(file);
  const auto& c = conformal(curve);
  const auto bundle = make_bundle(c, args);
  return with_grid(curve, cfg, [&](const ContourGrid& grid) {
    const int chern = chern_class(bundle, grid);
    if (chern < 0) {
      // Nothing to construct or verify; report the class alone.
      out << "{\"bundle\": \"" << bundle.describe() << "\", \"chern\": " << chern
          << ", \"holomorphic_sections\": 0, \"N\": " << grid.n << "}\n";
      return kOk;
    }
    const auto section = canonical_section(bundle, grid, section_options(args));
    std::optional<double> residual;
    if (verify) {
      const auto points = transition_test_points(c, 32);
      residual = verify_transition(section, bundle, points);
    }
    if (!dump.empty()) {
      std::ofstream f(dump);
      if (!f) throw Error(Errc::InvalidArgument, "cannot write " + dump);
      io::write_section_json(f, section);
    }
    out << "{\"bundle\": \"" << bundle.describe() << "\", \"chern\": " << section.chern()
        << ", \"normalization\": \"" << to_string(section.normalization()) << "\", \"a\": "
        << (section.adjustment_point() ? json_complex(*section.adjustment_point()) : "null")
        << ", \"normalization_residual\": " << format_real(section.normalization_residual());
    if (residual) out << ", \"transition_residual\": " << format_real(*residual);
    out << ", \"N\": " << grid.n << "}\n";
    return residual && !(*residual < std::max(cfg.tol, 1e-9)) ? kCheckFailed : kOk;
  });
}

QuadratureKind parse_kind(const std::string& s) {
  if (s == "classical") return QuadratureKind::Classical;
  if (s == "abelian") return QuadratureKind::Abelian;
  if (s == "arclength") return QuadratureKind::ArcLength;
  if (s == "corner") return QuadratureKind::PolygonCorner;
  throw Error(Errc::ParseError, "unknown quadrature kind '" + s + "'");
}

int cmd_quadrature(const std::string& file, const std::string& kind_text,
                   const std::vector<std::string>& coeff_text, const RunConfig& cfg, std::ostream& out,
                   std::ostream& err) {
  const auto curve = io::load_curve(file);
  const auto kind = parse_kind(kind_text);
  std::vector<cplx> coeffs;
  for (const auto& s : coeff_text) coeffs.push_back(parse_complex(s));
  if (coeffs.empty()) coeffs.push_back(1.0);
  const Polynomial f(coeffs);

  io::QuadratureReport report{kind, {}, {}, 0.0};
  if (kind == QuadratureKind::PolygonCorner) {
    const auto* poly = std::get_if<PolygonCurve>(&curve);
    if (!poly) {
      err << "error: corner quadrature needs a polygon\n";
      return kIncompatibleGeometry;
    }
    report.residue_value = apply_corner_weights(polygon_quadrature(*poly), f);
    report.oracle_value = polygon_area_integral(*poly, f.derivative().derivative());
  } else {
    report.residue_value = build_residue_quadrature(curve, kind, f.degree()).apply(f);
    const auto grid = sample(conformal(curve), cfg.n);
    switch (kind) {
      case QuadratureKind::Classical: report.oracle_value = classical_boundary_integral(grid, f); break;
      case QuadratureKind::Abelian: report.oracle_value = abelian_boundary_integral(grid, f); break;
      default: report.oracle_value = arclength_boundary_integral(grid, f); break;
    }
  }
  report.discrepancy = std::abs(report.residue_value - report.oracle_value);
  io::write_quadrature_json(out, report);
  return report.discrepancy < cfg.tol ? kOk : kCheckFailed;
}

int cmd_rational_fit(const std::string& file, int deg_q, int deg_p, const RunConfig& cfg, std::ostream& out) {
  const auto curve = io::load_curve(file);
  const auto& c = conformal(curve);
  const auto grid = sample(c, cfg.n);
  const auto samples = default_exterior_samples(c);
  const auto fit = fit_rational_structure(c, grid, deg_q, deg_p, samples);
  out << "{\"deg_Q\": " << deg_q << ", \"deg_P\": " << deg_p << ", \"residual\": " << format_real(fit.residual)
      << ", \"quadrature_domain_at_degree\": " << (is_quadrature_domain_at_degree(fit) ? "true" : "false")
      << ", \"scale\": " << json_complex(fit.scale) << ", \"P\": [";
  for (int k = 0; k <= fit.P.degree(); ++k) out << (k ? ", " : "") << json_complex(fit.P.coeff(k));
  out << "], \"Q\": [";
  for (int j = 0; j <= deg_q; ++j) {
    out << (j ? ", [" : "[");
    for (int k = 0; k <= deg_q; ++k) out << (k ? ", " : "") << json_complex(fit.Q.coeff(j, k));
    out << "]";
  }
  out << "], \"hermitian_defect\": " << format_real(fit.Q.hermitian_defect())
      << ", \"boundary_defect\": " << format_real(verify_algebraic_boundary(fit.Q, grid)) << "}\n";
  return kOk;
}

struct GridSpec {
  double x0 = -2.0, x1 = 2.0, y0 = -2.0, y1 = 2.0;
  std::size_t nx = 41, ny = 41;
};

// Cells are computed concurrently by row; each row is written to its own slot
// so the output order never depends on scheduling.
void fill_rows(std::size_t rows, const std::function<void(std::size_t)>& row) {
  const std::size_t workers = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
  std::vector<std::exception_ptr> failures(rows);
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < workers; ++t)
    pool.emplace_back([&, t] {
      for (std::size_t r = t; r < rows; r += workers) try {
          row(r);
        } catch (...) {
          failures[r] = std::current_exception();
        }
    });
  for (auto& th : pool) th.join();
  for (const auto& f : failures)
    if (f) std::rethrow_exception(f);
}

int cmd_plotdata(const std::string& file, const std::string& quantity, const GridSpec& gs,
                 const std::string& w0_text, int k_min, int k_max, const BundleArgs& bargs,
                 const RunConfig& cfg, std::ostream& out) {
  const auto curve = io::load_curve(file);
  const auto& c = conformal(curve);
  const auto grid = sample(c, cfg.n);
  if (quantity == "moments") {
    RunConfig csv = cfg;
    csv.format = "csv";
    write_moments(harmonic_moments(c, grid, k_min, k_max), csv, out);
    return kOk;
  }
  if (gs.nx < 1 || gs.ny < 1) throw Error(Errc::ParseError, "grid needs at least one cell per axis");

  std::function<std::string(cplx)> cell;
  std::string header;
  std::optional<SectionPair> section;
  cplx w0{0.0};
  if (quantity == "abs-E") {
    if (w0_text.empty()) throw Error(Errc::ParseError, "abs-E needs --w0");
    w0 = parse_complex(w0_text);
    (void)side_of(grid, w0);
    header = "x,y,abs_E";
    cell = [&](cplx z) { return format_real(std::abs(double_cauchy(c, grid, z, w0).E)); };
  } else if (quantity == "section") {
    section.emplace(canonical_section(make_bundle(c, bargs), grid, section_options(bargs)));
    header = "x,y,re_f,im_f";
    cell = [&](cplx z) { return format_complex((*section)(z)); };
  } else {
    throw Error(Errc::ParseError, "unknown quantity '" + quantity + "'");
  }

  const std::size_t blanks = quantity == "section" ? 2 : 1;
  std::vector<std::string> rows(gs.ny);
  fill_rows(gs.ny, [&](std::size_t r) {
    const double y = gs.ny == 1 ? gs.y0 : gs.y0 + (gs.y1 - gs.y0) * static_cast<double>(r) / (gs.ny - 1.0);
    std::string text;
    for (std::size_t i = 0; i < gs.nx; ++i) {
      const double x = gs.nx == 1 ? gs.x0 : gs.x0 + (gs.x1 - gs.x0) * static_cast<double>(i) / (gs.nx - 1.0);
      text += format_real(x) + ',' + format_real(y) + ',';
      try {
        text += cell({x, y});
      } catch (const Error& e) {
        if (e.code() != Errc::NearBoundary) throw;
        text += std::string(blanks - 1, ',');
      }
      text += '\n';
    }
    rows[r] = std::move(text);
  });
  out << header << '\n';
  for (const auto& r : rows) out << r;
  return kOk;
}

}  // namespace

int exit_code(Errc code) noexcept {
  switch (code) {
    case Errc::CurveNotSimple: return kCurveNotSimple;
    case Errc::ParseError: return kParseError;
    case Errc::NearBoundary: return kNearBoundary;
    case Errc::BranchUnresolved: return kBranchUnresolved;
    case Errc::NotConformalMapCurve:
    case Errc::TangentNotMeromorphic: return kIncompatibleGeometry;
    default: return kOtherError;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Schwarz functions, exponential transforms, line bundles and quadrature domains"};
  app.require_subcommand(1);
  RunConfig cfg;
  auto* tol_opt = app.add_option("--tol", cfg.tol, "tolerance (env SCHWARZ_TOL)")->check(CLI::PositiveNumber);
  auto* n_opt = app.add_option("--N", cfg.n, "boundary nodes, a power of two (env SCHWARZ_N)");
  app.add_option("--max-N", cfg.max_n, "largest node count tried by refinement");
  app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "csv"}));

  std::string file;
  auto* validate = app.add_subcommand("validate", "validate a curve file");
  validate->add_option("curve", file)->required();

  std::string z_text, w_text;
  auto* transform = app.add_subcommand("transform", "Cauchy transform C(z), or C and E at (z, w)");
  transform->add_option("curve", file)->required();
  transform->add_option("--z", z_text, "re,im")->required();
  transform->add_option("--w", w_text, "re,im");

  int k_min = 0, k_max = 6;
  auto* moments = app.add_subcommand("moments", "harmonic moments M_k");
  moments->add_option("curve", file)->required();
  moments->add_option("--kmin", k_min);
  moments->add_option("--kmax", k_max);

  BundleArgs bargs;
  bool verify = false;
  std::string dump;
  auto* section = app.add_subcommand("section", "Chern class and canonical section of a line bundle");
  section->add_option("curve", file)->required();
  section->add_option("--bundle", bargs.kind)->check(CLI::IsMember({"exp-schwarz", "schwarz-pole", "tangent-power"}));
  section->add_option("--w", bargs.w, "pole of schwarz-pole, re,im");
  section->add_option("--m", bargs.m, "power of tangent-power");
  section->add_option("--a", bargs.a, "adjustment point, re,im");
  section->add_flag("--verify", verify, "check f1 = lambda f2 on the annulus");
  section->add_option("--dump", dump, "write the section density as JSON");

  std::string kind = "classical";
  std::vector<std::string> coeffs;
  auto* quadrature = app.add_subcommand("quadrature", "residue quadrature against its oracle");
  quadrature->add_option("curve", file)->required();
  quadrature->add_option("--kind", kind)->check(CLI::IsMember({"classical", "abelian", "arclength", "corner"}));
  quadrature->add_option("--f", coeffs, "coefficients of f, lowest degree first, each re,im");

  int deg_q = 1, deg_p = 1;
  auto* rational = app.add_subcommand("rational-fit", "fit F = Q(z, conj w) / (P(z) conj P(w))");
  rational->add_option("curve", file)->required();
  rational->add_option("--deg-q", deg_q);
  rational->add_option("--deg-p", deg_p);

  std::string quantity = "abs-E", w0;
  GridSpec gs;
  auto* plot = app.add_subcommand("plotdata", "CSV samples for plotting");
  plot->add_option("curve", file)->required();
  plot->add_option("--quantity", quantity)->check(CLI::IsMember({"abs-E", "moments", "section"}));
  plot->add_option("--w0", w0, "second argument of E, re,im");
  plot->add_option("--xmin", gs.x0);
  plot->add_option("--xmax", gs.x1);
  plot->add_option("--ymin", gs.y0);
  plot->add_option("--ymax", gs.y1);
  plot->add_option("--nx", gs.nx);
  plot->add_option("--ny", gs.ny);
  plot->add_option("--kmin", k_min);
  plot->add_option("--kmax", k_max);
  plot->add_option("--bundle", bargs.kind)->check(CLI::IsMember({"exp-schwarz", "schwarz-pole", "tangent-power"}));
  plot->add_option("--w", bargs.w);
  plot->add_option("--m", bargs.m);
  plot->add_option("--a", bargs.a);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kParseError;
  }

  try {
    if (tol_opt->count() == 0)
      if (const char* env = std::getenv("SCHWARZ_TOL")) cfg.tol = std::stod(env);
    cfg.n_pinned = n_opt->count() > 0;
    if (!cfg.n_pinned)
      if (const char* env = std::getenv("SCHWARZ_N")) {
        cfg.n = std::stoul(env);
        cfg.n_pinned = true;
      }
  } catch (const std::exception&) {
    err << "error: SCHWARZ_TOL / SCHWARZ_N are not numbers\n";
    return kParseError;
  }
  if (!(cfg.tol > 0.0) || !detail::is_power_of_two(cfg.n) || cfg.n > cfg.max_n || cfg.max_n > kMaxNodes) {
    err << "error: need tol > 0 and N a power of two with N <= max N <= " << kMaxNodes << "\n";
    return kParseError;
  }

  try {
    if (*validate) return cmd_validate(file, cfg, out);
    if (*transform) return cmd_transform(file, z_text, w_text, cfg, out);
    if (*moments) return cmd_moments(file, k_min, k_max, cfg, out);
    if (*section) return cmd_section(file, bargs, verify, dump, cfg, out);
    if (*quadrature) return cmd_quadrature(file, kind, coeffs, cfg, out, err);
    if (*rational) return cmd_rational_fit(file, deg_q, deg_p, cfg, out);
    if (*plot) return cmd_plotdata(file, quantity, gs, w0, k_min, k_max, bargs, cfg, out);
  } catch (const Error& e) {
    err << "error [" << to_string(e.code()) << "]: " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kOtherError;
  }
  return kOtherError;
}

}  // namespace slb::cli
