#include "slb/quaddom.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "slb/error.hpp"
#include "slb/schwarz.hpp"
#include "slb/transforms.hpp"

namespace slb {

namespace {

constexpr double kResidueRadius = 0.5;
constexpr std::size_t kTailSamples = 512;
constexpr double kTailTolerance = 1e-10;

const ConformalMapCurve& require_conformal(const AnalyticCurve& curve) {
  if (const auto* c = std::get_if<ConformalMapCurve>(&curve)) return *c;
  throw Error(Errc::NotConformalMapCurve, "residue quadrature needs a conformal-map curve");
}

// Laurent coefficients of phi'(zeta)/T(phi(zeta)) = |phi'| / (i zeta) on the
// unit circle must vanish below -(n+1) for 1/T to be meromorphic in the disk
// with its only pole at zeta = 0.
void require_meromorphic_tangent(const ConformalMapCurve& curve) {
  const std::size_t m = kTailSamples;
  std::vector<cplx> g(m);
  for (std::size_t j = 0; j < m; ++j) {
    const cplx zeta = std::polar(1.0, 2.0 * kPi * static_cast<double>(j) / static_cast<double>(m));
    g[j] = std::abs(curve.derivative(zeta)) / (kI * zeta);
  }
  const int pole_bound = curve.map().degree() + 1;
  double peak = 0.0;
  double tail = 0.0;
  for (int k = -static_cast<int>(m / 2) + 1; k < static_cast<int>(m / 2); ++k) {
    cplx acc{0.0};
    for (std::size_t j = 0; j < m; ++j)
      acc += g[j] * std::polar(1.0, -2.0 * kPi * static_cast<double>(k) * static_cast<double>(j) /
                                        static_cast<double>(m));
    const double mag = std::abs(acc) / static_cast<double>(m);
    peak = std::max(peak, mag);
    if (k < -pole_bound) tail = std::max(tail, mag);
  }
  if (tail > kTailTolerance * peak)
    throw Error(Errc::TangentNotMeromorphic,
                "1/T has singularities inside the curve other than a pole at the conformal centre "
                "(Laurent tail " + std::to_string(tail / peak) + ")");
}

// Gauss-Legendre nodes and weights on [0, 1].
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(static_cast<std::size_t>(n), 0.0);
  w.assign(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    double t = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = t;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (t * p1 - p0) / (t * t - 1.0);
      const double dt = p1 / dp;
      t -= dt;
      if (std::abs(dt) < 1e-16) break;
    }
    x[static_cast<std::size_t>(i)] = 0.5 * (1.0 - t);
    w[static_cast<std::size_t>(i)] = 1.0 / ((1.0 - t * t) * dp * dp);
  }
}

}  // namespace

std::string_view to_string(QuadratureKind kind) noexcept {
  switch (kind) {
    case QuadratureKind::Classical: return "classical";
    case QuadratureKind::Abelian: return "abelian";
    case QuadratureKind::ArcLength: return "arclength";
    case QuadratureKind::PolygonCorner: return "corner";
  }
  return "unknown";
}

cplx ResidueQuadrature::apply(const Polynomial& f) const {
  if (kind != QuadratureKind::PolygonCorner && f.degree() > max_degree)
    throw Error(Errc::InvalidArgument, "rule is exact only up to degree " + std::to_string(max_degree));
  cplx acc{0.0};
  for (std::size_t j = 0; j < nodes.size(); ++j) acc += weights[j] * f(nodes[j]);
  return acc;
}

ResidueQuadrature build_residue_quadrature(const AnalyticCurve& curve, QuadratureKind kind,
                                           int max_degree) {
  if (kind == QuadratureKind::PolygonCorner) {
    const auto* poly = std::get_if<PolygonCurve>(&curve);
    if (!poly) throw Error(Errc::InvalidArgument, "corner quadrature needs a polygon");
    ResidueQuadrature rule;
    rule.kind = kind;
    for (const auto& cw : polygon_quadrature(*poly)) {
      rule.nodes.push_back(cw.corner);
      rule.weights.push_back(cw.weight);
    }
    return rule;
  }
  const ConformalMapCurve& c = require_conformal(curve);
  if (max_degree < 0) throw Error(Errc::InvalidArgument, "negative degree");
  if (kind == QuadratureKind::ArcLength) require_meromorphic_tangent(c);

  const int n = c.map().degree();
  const std::size_t count = std::max<std::size_t>(
      64, std::bit_ceil(static_cast<std::size_t>(4 * (max_degree + 2) * (n + 1) + 32)));
  if (count > kMaxNodes) throw Error(Errc::InvalidArgument, "polynomial degree too large");

  SchwarzEvaluator schwarz(c);
  ResidueQuadrature rule;
  rule.kind = kind;
  rule.contour_radius = kResidueRadius;
  rule.max_degree = max_degree;
  rule.nodes.resize(count);
  rule.weights.resize(count);
  // (1/2 pi i) \oint g dzeta = (1/N) sum_j g(zeta_j) zeta_j on |zeta| = r.
  const double inv = 1.0 / static_cast<double>(count);
  for (std::size_t j = 0; j < count; ++j) {
    const cplx zeta = std::polar(kResidueRadius, 2.0 * kPi * static_cast<double>(j) * inv);
    rule.nodes[j] = c.point(zeta);
    switch (kind) {
      case QuadratureKind::Classical:
        rule.weights[j] = c.reflected()(1.0 / zeta) * c.derivative(zeta) * zeta * inv;
        break;
      case QuadratureKind::Abelian:
        // S'(phi) phi' = -phibar'(1/zeta)/zeta^2, with the overall minus sign.
        rule.weights[j] = c.reflected_prime()(1.0 / zeta) / zeta * inv;
        break;
      case QuadratureKind::ArcLength: {
        cplx tangent;
        try {
          tangent = schwarz.tangent_at_zeta(zeta);
        } catch (const Error& e) {
          throw Error(Errc::TangentNotMeromorphic, e.what());
        }
        rule.weights[j] = 2.0 * kPi * kI * c.derivative(zeta) / tangent * zeta * inv;
        break;
      }
      case QuadratureKind::PolygonCorner: break;
    }
  }
  return rule;
}

cplx classical_quadrature(const AnalyticCurve& curve, const Polynomial& f) {
  return build_residue_quadrature(curve, QuadratureKind::Classical, f.degree()).apply(f);
}

cplx abelian_quadrature(const AnalyticCurve& curve, const Polynomial& f) {
  return build_residue_quadrature(curve, QuadratureKind::Abelian, f.degree()).apply(f);
}

cplx arclength_quadrature(const AnalyticCurve& curve, const Polynomial& f) {
  return build_residue_quadrature(curve, QuadratureKind::ArcLength, f.degree()).apply(f);
}

cplx classical_boundary_integral(const ContourGrid& grid, const Polynomial& f) {
  cplx acc{0.0};
  for (std::size_t j = 0; j < grid.n; ++j) acc += f(grid.z[j]) * std::conj(grid.z[j]) * grid.dz[j];
  return acc * grid.weight / (2.0 * kPi * kI);
}

cplx abelian_boundary_integral(const ContourGrid& grid, const Polynomial& f) {
  // On the curve S' dz = conj(dz).
  cplx acc{0.0};
  for (std::size_t j = 0; j < grid.n; ++j) acc += f(grid.z[j]) * std::conj(grid.dz[j]);
  return -acc * grid.weight / (2.0 * kPi * kI);
}

cplx arclength_boundary_integral(const ContourGrid& grid, const Polynomial& f) {
  cplx acc{0.0};
  for (std::size_t j = 0; j < grid.n; ++j) acc += f(grid.z[j]) * std::abs(grid.dz[j]);
  return acc * grid.weight;
}

std::vector<CornerWeight> polygon_quadrature(const PolygonCurve& polygon) {
  const std::size_t m = polygon.size();
  std::vector<cplx> slope(m);
  for (std::size_t e = 0; e < m; ++e) {
    const cplx edge = polygon.edge(e);
    if (std::abs(edge) == 0.0) throw Error(Errc::DegenerateEdge, "zero-length edge");
    const cplx tangent = edge / std::abs(edge);
    slope[e] = std::conj(tangent) / tangent;
  }
  std::vector<CornerWeight> out(m);
  for (std::size_t j = 0; j < m; ++j)
    out[j] = {polygon.vertex(j), (slope[j] - slope[(j + m - 1) % m]) / (2.0 * kPi * kI)};
  return out;
}

cplx apply_corner_weights(std::span<const CornerWeight> weights, const Polynomial& f) {
  cplx acc{0.0};
  for (const auto& cw : weights) acc += cw.weight * f(cw.corner);
  return acc;
}

cplx polygon_area_integral(const PolygonCurve& polygon, const Polynomial& g) {
  std::vector<double> x;
  std::vector<double> w;
  gauss_legendre(std::max(1, g.degree() / 2 + 2), x, w);
  cplx acc{0.0};
  for (std::size_t e = 0; e < polygon.size(); ++e) {
    const cplx a = polygon.vertex(e);
    const cplx edge = polygon.edge(e);
    for (std::size_t i = 0; i < x.size(); ++i) {
      const cplx z = a + x[i] * edge;
      acc += w[i] * g(z) * std::conj(z) * edge;
    }
  }
  return acc / (2.0 * kPi * kI);
}

BivariatePolynomial::BivariatePolynomial(int deg_z, int deg_w, std::vector<cplx> coeffs)
    : deg_z_(deg_z), deg_w_(deg_w), c_(std::move(coeffs)) {
  if (deg_z < 0 || deg_w < 0 ||
      c_.size() != static_cast<std::size_t>((deg_z + 1) * (deg_w + 1)))
    throw Error(Errc::InvalidArgument, "coefficient count does not match degrees");
}

cplx BivariatePolynomial::coeff(int j, int k) const {
  if (j < 0 || j > deg_z_ || k < 0 || k > deg_w_) return 0.0;
  return c_[static_cast<std::size_t>(j * (deg_w_ + 1) + k)];
}

cplx BivariatePolynomial::operator()(cplx z, cplx wbar) const {
  cplx acc{0.0};
  cplx zj{1.0};
  for (int j = 0; j <= deg_z_; ++j, zj *= z) {
    cplx wk{1.0};
    for (int k = 0; k <= deg_w_; ++k, wk *= wbar) acc += coeff(j, k) * zj * wk;
  }
  return acc;
}

double BivariatePolynomial::max_coeff() const {
  double m = 0.0;
  for (const auto& v : c_) m = std::max(m, std::abs(v));
  return m;
}

double BivariatePolynomial::hermitian_defect() const {
  double d = 0.0;
  const int deg = std::max(deg_z_, deg_w_);
  for (int j = 0; j <= deg; ++j)
    for (int k = 0; k <= deg; ++k) d = std::max(d, std::abs(coeff(j, k) - std::conj(coeff(k, j))));
  return d;
}

std::vector<std::pair<cplx, cplx>> default_exterior_samples(const ConformalMapCurve& curve,
                                                            std::size_t points) {
  const double reach = curve.max_modulus();
  std::vector<cplx> p(points);
  for (std::size_t k = 0; k < points; ++k) {
    const double r = reach * (1.3 + 0.35 * static_cast<double>(k % 3));
    p[k] = std::polar(r, 2.0 * kPi * static_cast<double>(k) / static_cast<double>(points) + 0.3);
  }
  std::vector<std::pair<cplx, cplx>> pairs;
  pairs.reserve(points * points);
  for (const auto& z : p)
    for (const auto& w : p) pairs.emplace_back(z, w);
  return pairs;
}

RationalStructure fit_rational_structure(const ConformalMapCurve& curve, const ContourGrid& grid,
                                         int deg_Q, int deg_P,
                                         std::span<const std::pair<cplx, cplx>> exterior_samples) {
  if (deg_Q < 0 || deg_P < 0) throw Error(Errc::InvalidArgument, "degrees must be non-negative");
  const int nq = (deg_Q + 1) * (deg_Q + 1);
  const int nr = (deg_P + 1) * (deg_P + 1);
  const int cols = nq + nr;
  const auto rows = static_cast<Eigen::Index>(exterior_samples.size());
  if (rows < cols)
    throw Error(Errc::RankDeficient, std::to_string(rows) + " samples for " + std::to_string(cols) +
                                         " unknowns");

  Eigen::MatrixXcd A(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto [z, w] = exterior_samples[static_cast<std::size_t>(i)];
    const auto value = double_cauchy(curve, grid, z, w);
    if (value.quadrant.z != Side::Exterior || value.quadrant.w != Side::Exterior)
      throw Error(Errc::WrongQuadrant, "rational fit samples must be exterior in both arguments");
    const cplx wbar = std::conj(w);
    int col = 0;
    for (int j = 0; j <= deg_Q; ++j)
      for (int k = 0; k <= deg_Q; ++k) A(i, col++) = -std::pow(z, j) * std::pow(wbar, k);
    for (int j = 0; j <= deg_P; ++j)
      for (int k = 0; k <= deg_P; ++k) A(i, col++) = value.E * std::pow(z, j) * std::pow(wbar, k);
  }
  Eigen::VectorXd scale = A.colwise().norm().transpose();
  for (Eigen::Index c = 0; c < cols; ++c) A.col(c) /= scale(c);

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A, Eigen::ComputeThinU | Eigen::ComputeFullV);
  const Eigen::VectorXd& sigma = svd.singularValues();
  const double smax = sigma(0);
  const double residual = sigma(cols - 1) / smax;
  if (cols >= 2 && sigma(cols - 2) / smax < 1e-9)
    throw Error(Errc::RankDeficient, "least-squares null space is not one-dimensional; lower the degrees");

  Eigen::VectorXcd x = svd.matrixV().col(cols - 1);
  for (Eigen::Index c = 0; c < cols; ++c) x(c) /= scale(c);

  // Denominator block R[a][b] ~ kappa p_a conj(p_b).
  auto R = [&](int a, int b) { return x(nq + a * (deg_P + 1) + b); };
  int pivot = 0;
  for (int a = 1; a <= deg_P; ++a)
    if (std::abs(R(a, a)) > std::abs(R(pivot, pivot))) pivot = a;
  const cplx diag = R(pivot, pivot);
  if (std::abs(diag) == 0.0) throw Error(Errc::RankDeficient, "denominator vanishes");
  std::vector<cplx> p(static_cast<std::size_t>(deg_P) + 1);
  double pmax = 0.0;
  for (int a = 0; a <= deg_P; ++a) {
    p[static_cast<std::size_t>(a)] = R(a, pivot) / diag;
    pmax = std::max(pmax, std::abs(p[static_cast<std::size_t>(a)]));
  }
  int lead = deg_P;
  while (lead > 0 && std::abs(p[static_cast<std::size_t>(lead)]) <= 1e-8 * pmax) --lead;
  const cplx lead_coeff = p[static_cast<std::size_t>(lead)];
  for (auto& v : p) v /= lead_coeff;
  p.resize(static_cast<std::size_t>(lead) + 1);
  p.back() = 1.0;

  // With P monic, kappa is the coefficient of z^lead wbar^lead in R.
  const cplx kappa = R(lead, lead);
  std::vector<cplx> q(static_cast<std::size_t>(nq));
  for (int c = 0; c < nq; ++c) q[static_cast<std::size_t>(c)] = x(c) / kappa;

  return RationalStructure{BivariatePolynomial(deg_Q, deg_Q, std::move(q)), Polynomial(std::move(p)),
                           kappa, residual, deg_Q, deg_P};
}

bool is_quadrature_domain_at_degree(const RationalStructure& fit, double threshold) {
  return fit.residual < threshold;
}

double verify_algebraic_boundary(const BivariatePolynomial& Q, const ContourGrid& grid) {
  const double scale = Q.max_coeff();
  if (scale == 0.0) throw Error(Errc::InvalidArgument, "zero polynomial");
  double worst = 0.0;
  for (const auto& z : grid.z) worst = std::max(worst, std::abs(Q(z, std::conj(z))));
  return worst / scale;
}

}  // namespace slb
