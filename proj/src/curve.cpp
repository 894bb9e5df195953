#include "slb/curve.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <string>

#include "slb/error.hpp"

namespace slb {

namespace detail {

bool is_power_of_two(std::size_t n) noexcept { return n != 0 && (n & (n - 1)) == 0; }

namespace {

int orientation(cplx a, cplx b, cplx c) {
  const double cross = (b.real() - a.real()) * (c.imag() - a.imag()) -
                       (b.imag() - a.imag()) * (c.real() - a.real());
  return (cross > 0.0) - (cross < 0.0);
}

bool on_segment(cplx a, cplx b, cplx p) {
  return std::min(a.real(), b.real()) <= p.real() && p.real() <= std::max(a.real(), b.real()) &&
         std::min(a.imag(), b.imag()) <= p.imag() && p.imag() <= std::max(a.imag(), b.imag());
}

bool segments_intersect(cplx p1, cplx p2, cplx q1, cplx q2) {
  const int o1 = orientation(p1, p2, q1);
  const int o2 = orientation(p1, p2, q2);
  const int o3 = orientation(q1, q2, p1);
  const int o4 = orientation(q1, q2, p2);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(p1, p2, q1)) return true;
  if (o2 == 0 && on_segment(p1, p2, q2)) return true;
  if (o3 == 0 && on_segment(q1, q2, p1)) return true;
  if (o4 == 0 && on_segment(q1, q2, p2)) return true;
  return false;
}

}  // namespace

bool is_simple_closed_polyline(std::span<const cplx> pts) {
  const std::size_t m = pts.size();
  if (m < 3) return false;
  for (std::size_t i = 0; i < m; ++i) {
    const cplx a = pts[i];
    const cplx b = pts[(i + 1) % m];
    if (a == b) return false;
    for (std::size_t j = i + 2; j < m; ++j) {
      if (i == 0 && j == m - 1) continue;  // adjacent through the wrap
      if (segments_intersect(a, b, pts[j], pts[(j + 1) % m])) return false;
    }
  }
  return true;
}

}  // namespace detail

namespace {

constexpr std::size_t kValidationSamples = 1024;

std::vector<cplx> circle_image(const Polynomial& p, double r, std::size_t m) {
  std::vector<cplx> out(m);
  for (std::size_t j = 0; j < m; ++j) {
    const double t = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(m);
    out[j] = p(std::polar(r, t));
  }
  return out;
}

// Winding of p(|zeta| = r) around the origin, refining until adjacent phase
// steps are below pi/2. ok is false when p (numerically) vanishes on the circle.
int circle_winding(const Polynomial& p, double r, bool& ok) {
  for (std::size_t m = 4096; m <= (std::size_t{1} << 18); m *= 2) {
    const auto vals = circle_image(p, r, m);
    double total = 0.0;
    bool resolved = true;
    double scale = 0.0;
    for (const auto& v : vals) scale = std::max(scale, std::abs(v));
    for (std::size_t j = 0; j < m && resolved; ++j) {
      const cplx a = vals[j];
      const cplx b = vals[(j + 1) % m];
      if (std::abs(a) <= 1e-13 * scale) {
        ok = false;
        return 0;
      }
      const double step = std::arg(b / a);
      if (std::abs(step) >= kPi / 2) resolved = false;
      total += step;
    }
    if (resolved) {
      ok = true;
      return static_cast<int>(std::lround(total / (2.0 * kPi)));
    }
  }
  ok = false;
  return 0;
}

}  // namespace

ConformalMapCurve::ConformalMapCurve(Polynomial phi, double rho)
    : phi_(std::move(phi)),
      dphi_(phi_.derivative()),
      phibar_(phi_.conjugated()),
      dphibar_(phibar_.derivative()),
      rho_(rho) {
  for (const auto& z : circle_image(phi_, 1.0, kValidationSamples))
    max_modulus_ = std::max(max_modulus_, std::abs(z));
}

ConformalMapCurve build_polynomial_curve(std::vector<cplx> coeffs, double rho) {
  if (!(rho > 0.0 && rho < 1.0))
    throw Error(Errc::InvalidArgument, "annulus radius must lie in (0, 1)");
  Polynomial phi(std::move(coeffs));
  if (phi.degree() < 1) throw Error(Errc::CurveNotSimple, "map must have degree >= 1");

  const Polynomial dphi = phi.derivative();
  bool ok_in = false;
  bool ok_out = false;
  const int zeros_inner = circle_winding(dphi, rho, ok_in);
  const int zeros_outer = circle_winding(dphi, 1.0 / rho, ok_out);
  if (!ok_in || !ok_out) throw Error(Errc::CurveNotSimple, "phi' vanishes on the annulus boundary");
  if (zeros_outer - zeros_inner != 0)
    throw Error(Errc::CurveNotSimple,
                std::to_string(zeros_outer - zeros_inner) + " zero(s) of phi' inside the annulus");
  if (zeros_inner != 0)
    throw Error(Errc::CurveNotSimple, "phi' vanishes inside the unit disk; map is not univalent");

  for (const double r : {rho, 1.0, 1.0 / rho}) {
    const auto img = circle_image(phi, r, kValidationSamples);
    if (!detail::is_simple_closed_polyline(img))
      throw Error(Errc::CurveNotSimple,
                  "image of |zeta| = " + std::to_string(r) + " intersects itself");
  }
  return ConformalMapCurve(std::move(phi), rho);
}

ConformalMapCurve build_circle(cplx center, double radius) {
  if (!(radius > 0.0)) throw Error(Errc::NonPositiveRadius, "circle radius must be positive");
  return build_polynomial_curve({center, cplx{radius, 0.0}}, 0.5);
}

double PolygonCurve::perimeter() const noexcept {
  double p = 0.0;
  for (std::size_t j = 0; j < v_.size(); ++j) p += std::abs(edge(j));
  return p;
}

double PolygonCurve::area() const noexcept {
  double a = 0.0;
  for (std::size_t j = 0; j < v_.size(); ++j) {
    const cplx p = vertex(j);
    const cplx q = vertex(j + 1);
    a += p.real() * q.imag() - q.real() * p.imag();
  }
  return 0.5 * a;
}

PolygonCurve build_polygon(std::vector<cplx> vertices) {
  if (vertices.size() < 3) throw Error(Errc::InvalidArgument, "polygon needs at least 3 vertices");
  for (std::size_t i = 0; i < vertices.size(); ++i)
    for (std::size_t j = i + 1; j < vertices.size(); ++j)
      if (vertices[i] == vertices[j]) throw Error(Errc::CurveNotSimple, "repeated polygon vertex");
  if (!detail::is_simple_closed_polyline(vertices))
    throw Error(Errc::CurveNotSimple, "polygon edges intersect");
  PolygonCurve poly(std::move(vertices));
  if (!(poly.area() > 0.0)) throw Error(Errc::InvalidArgument, "polygon must be counterclockwise");
  return poly;
}

namespace {

void check_node_count(std::size_t n) {
  if (n < 16 || !detail::is_power_of_two(n) || n > kMaxNodes)
    throw Error(Errc::BadNodeCount, "node count must be a power of two in [16, 65536], got " +
                                        std::to_string(n));
}

void finish_grid(ContourGrid& g) {
  g.max_spacing = 0.0;
  for (std::size_t j = 0; j < g.n; ++j)
    g.max_spacing = std::max(g.max_spacing, std::abs(g.z[(j + 1) % g.n] - g.z[j]));
  g.exclusion_band = g.safety_factor * g.max_spacing;
}

}  // namespace

ContourGrid sample_circle_image(const ConformalMapCurve& curve, double radius, std::size_t n) {
  check_node_count(n);
  ContourGrid g;
  g.n = n;
  g.radius = radius;
  g.weight = 2.0 * kPi / static_cast<double>(n);
  g.t.resize(n);
  g.zeta.resize(n);
  g.z.resize(n);
  g.dz.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double t = g.weight * static_cast<double>(j);
    const cplx zeta = std::polar(radius, t);
    g.t[j] = t;
    g.zeta[j] = zeta;
    g.z[j] = curve.point(zeta);
    g.dz[j] = kI * zeta * curve.derivative(zeta);
  }
  finish_grid(g);
  return g;
}

ContourGrid sample(const ConformalMapCurve& curve, std::size_t n) {
  return sample_circle_image(curve, 1.0, n);
}

ContourGrid sample(const PolygonCurve& polygon, std::size_t n) {
  check_node_count(n);
  const std::size_t m = polygon.size();
  if (n < m) throw Error(Errc::BadNodeCount, "fewer nodes than polygon edges");

  // Largest-remainder allocation of nodes to edges, at least one each.
  const double perim = polygon.perimeter();
  std::vector<std::size_t> count(m, 1);
  std::vector<std::pair<double, std::size_t>> remainder(m);
  std::size_t used = m;
  const std::size_t spare = n - m;
  for (std::size_t e = 0; e < m; ++e) {
    const double share = static_cast<double>(spare) * std::abs(polygon.edge(e)) / perim;
    const auto whole = static_cast<std::size_t>(std::floor(share));
    count[e] += whole;
    used += whole;
    remainder[e] = {share - static_cast<double>(whole), e};
  }
  std::sort(remainder.begin(), remainder.end(),
            [](const auto& a, const auto& b) { return a.first > b.first || (a.first == b.first && a.second < b.second); });
  for (std::size_t k = 0; used < n; ++k, ++used) ++count[remainder[k % m].second];

  ContourGrid g;
  g.n = n;
  g.weight = 2.0 * kPi / static_cast<double>(n);
  g.t.reserve(n);
  g.z.reserve(n);
  g.dz.reserve(n);
  std::size_t j = 0;
  for (std::size_t e = 0; e < m; ++e) {
    const cplx a = polygon.vertex(e);
    const cplx edge = polygon.edge(e);
    const double ne = static_cast<double>(count[e]);
    for (std::size_t k = 0; k < count[e]; ++k, ++j) {
      g.t.push_back(g.weight * static_cast<double>(j));
      g.z.push_back(a + edge * (static_cast<double>(k) / ne));
      g.dz.push_back(edge / (ne * g.weight));
    }
  }
  finish_grid(g);
  return g;
}

ContourGrid sample(const AnalyticCurve& curve, std::size_t n) {
  return std::visit([n](const auto& c) { return sample(c, n); }, curve);
}

double winding_number(const ContourGrid& grid, cplx z) {
  double total = 0.0;
  for (std::size_t j = 0; j < grid.n; ++j) {
    const cplx a = grid.z[j] - z;
    const cplx b = grid.z[(j + 1) % grid.n] - z;
    total += std::arg(b / a);
  }
  return total / (2.0 * kPi);
}

Location locate(const ContourGrid& grid, cplx z) {
  for (const auto& node : grid.z)
    if (std::abs(node - z) < grid.exclusion_band) return Location::NearBoundary;
  const double w = winding_number(grid, z);
  return std::lround(w) == 1 ? Location::Interior : Location::Exterior;
}

cplx unit_tangent(const ConformalMapCurve& curve, double t) {
  const cplx zeta = std::polar(1.0, t);
  const cplx d = kI * zeta * curve.derivative(zeta);
  if (std::abs(d) == 0.0) throw Error(Errc::DegenerateTangent, "z'(t) = 0");
  return d / std::abs(d);
}

cplx unit_tangent(const PolygonCurve& polygon, double t) {
  // Parameter proportional to arc length; at a vertex the following edge wins.
  const double s = std::fmod(std::fmod(t, 2.0 * kPi) + 2.0 * kPi, 2.0 * kPi) / (2.0 * kPi) *
                   polygon.perimeter();
  double acc = 0.0;
  for (std::size_t e = 0; e < polygon.size(); ++e) {
    const cplx edge = polygon.edge(e);
    acc += std::abs(edge);
    if (s < acc || e + 1 == polygon.size()) {
      if (std::abs(edge) == 0.0) throw Error(Errc::DegenerateTangent, "zero-length edge");
      return edge / std::abs(edge);
    }
  }
  throw Error(Errc::DegenerateTangent, "parameter outside polygon");
}

ContourGrid adaptive_refine(const AnalyticCurve& curve, const GridFunctional& functional, double tol,
                            std::size_t n_start, std::size_t n_max) {
  if (!(tol > 0.0)) throw Error(Errc::InvalidArgument, "tolerance must be positive");
  std::optional<Error> last;
  std::optional<std::pair<ContourGrid, cplx>> prev;
  for (std::size_t n = n_start; n <= n_max; n *= 2) {
    ContourGrid grid = sample(curve, n);
    try {
      const cplx value = functional(grid);
      if (prev && std::abs(prev->second - value) < tol) return std::move(prev->first);
      prev.emplace(std::move(grid), value);
      last.reset();
    } catch (const Error& e) {
      if (e.code() != Errc::NearBoundary && e.code() != Errc::BranchUnresolved) throw;
      prev.reset();
      last = e;
    }
  }
  if (last) throw *last;
  throw Error(Errc::NoConvergence,
              "functional did not settle to " + std::to_string(tol) + " by n = " + std::to_string(n_max));
}

}  // namespace slb
