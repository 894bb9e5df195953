#pragma once

#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "slb/curve.hpp"
#include "slb/polynomial.hpp"

namespace slb {

enum class QuadratureKind { Classical, Abelian, ArcLength, PolygonCorner };

std::string_view to_string(QuadratureKind kind) noexcept;

/// Finite quadrature rule sum_j weights[j] f(nodes[j]) for polynomial f.
///
/// For conformal curves the rule is the residue sum at zeta = 0 of the
/// pulled-back integrand, extracted by the trapezoidal rule on |zeta| =
/// contour_radius; the nodes are then phi(zeta_j), and the rule is exact for f
/// up to max_degree. For polygons the nodes are the corners.
struct ResidueQuadrature {
  QuadratureKind kind = QuadratureKind::Classical;
  std::vector<cplx> nodes;
  std::vector<cplx> weights;
  double contour_radius = 0.0;
  int max_degree = 0;

  [[nodiscard]] cplx apply(const Polynomial& f) const;
};

/// Classical:  sum res f S dz        = (1/pi) \int_Omega f dA
/// Abelian:   -sum res f S' dz       = (1/pi) \int_Omega f' dA
/// ArcLength:  2 pi i sum res f dz/T = \oint f |dz|
/// Throws NotConformalMapCurve for polygons and, for ArcLength,
/// TangentNotMeromorphic when 1/T is not meromorphic with its only pole at the
/// conformal centre.
ResidueQuadrature build_residue_quadrature(const AnalyticCurve& curve, QuadratureKind kind,
                                           int max_degree);

cplx classical_quadrature(const AnalyticCurve& curve, const Polynomial& f);
cplx abelian_quadrature(const AnalyticCurve& curve, const Polynomial& f);
cplx arclength_quadrature(const AnalyticCurve& curve, const Polynomial& f);

// Direct boundary-integral forms of the same three quantities.
cplx classical_boundary_integral(const ContourGrid& grid, const Polynomial& f);
cplx abelian_boundary_integral(const ContourGrid& grid, const Polynomial& f);
cplx arclength_boundary_integral(const ContourGrid& grid, const Polynomial& f);

struct CornerWeight {
  cplx corner;
  cplx weight;
};

/// Corner weights c_j with (1/pi) \int_Omega f'' dA = sum_j c_j f(a_j).
std::vector<CornerWeight> polygon_quadrature(const PolygonCurve& polygon);
cplx apply_corner_weights(std::span<const CornerWeight> weights, const Polynomial& f);

/// (1/pi) \int_P g dA = (1/2 pi i) \oint g conj(z) dz for polynomial g, by
/// Gauss-Legendre on each edge (exact).
cplx polygon_area_integral(const PolygonCurve& polygon, const Polynomial& g);

/// Q(z, wbar) = sum_{j,k} q[j][k] z^j wbar^k.
class BivariatePolynomial {
 public:
  BivariatePolynomial(int deg_z, int deg_w, std::vector<cplx> coeffs);

  [[nodiscard]] int deg_z() const noexcept { return deg_z_; }
  [[nodiscard]] int deg_w() const noexcept { return deg_w_; }
  [[nodiscard]] cplx coeff(int j, int k) const;
  [[nodiscard]] cplx operator()(cplx z, cplx wbar) const;
  [[nodiscard]] double max_coeff() const;
  [[nodiscard]] double hermitian_defect() const;  // max |q_jk - conj(q_kj)|

 private:
  int deg_z_;
  int deg_w_;
  std::vector<cplx> c_;
};

struct RationalStructure {
  BivariatePolynomial Q;
  Polynomial P;  // monic
  /// Scalar by which the raw least-squares numerator was divided to make P monic.
  cplx scale;
  double residual = 0.0;
  int deg_Q = 0;
  int deg_P = 0;
};

/// Residual above which a fit is classified as "not a quadrature domain at
/// this degree".
inline constexpr double kQuadratureDomainThreshold = 1e-3;

/// Sample pairs (z, w), both exterior, on circles around the curve.
std::vector<std::pair<cplx, cplx>> default_exterior_samples(const ConformalMapCurve& curve,
                                                            std::size_t points = 8);

/// Fits F(z, w) P(z) conj(P(w)) = Q(z, conj w) by homogeneous least squares
/// over the exterior sample pairs. Throws RankDeficient when the samples do not
/// determine a unique solution.
RationalStructure fit_rational_structure(const ConformalMapCurve& curve, const ContourGrid& grid,
                                         int deg_Q, int deg_P,
                                         std::span<const std::pair<cplx, cplx>> exterior_samples);

bool is_quadrature_domain_at_degree(const RationalStructure& fit,
                                    double threshold = kQuadratureDomainThreshold);

/// max_j |Q(z_j, conj z_j)| / max |q_jk|.
double verify_algebraic_boundary(const BivariatePolynomial& Q, const ContourGrid& grid);

}  // namespace slb
