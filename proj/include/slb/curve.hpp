#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <variant>
#include <vector>

#include "slb/polynomial.hpp"

namespace slb {

/// Analytic Jordan curve given as the image of the unit circle under a
/// polynomial map phi(zeta) = a0 + a1 zeta + ... + an zeta^n.
///
/// Construction validates the map on the closed annulus rho <= |zeta| <= 1/rho:
/// phi' has no zeros there (nor inside the disk), and the images of the circles
/// |zeta| = rho, 1, 1/rho are simple closed curves. The curve is then positively
/// oriented and phi is univalent on the annulus, which is what the Schwarz
/// reflection and the Newton inversion rely on.
class ConformalMapCurve {
 public:
  [[nodiscard]] const Polynomial& map() const noexcept { return phi_; }
  [[nodiscard]] const Polynomial& map_prime() const noexcept { return dphi_; }
  /// Coefficient-conjugated map; reflected()(1/zeta) is S(phi(zeta)).
  [[nodiscard]] const Polynomial& reflected() const noexcept { return phibar_; }
  [[nodiscard]] const Polynomial& reflected_prime() const noexcept { return dphibar_; }

  [[nodiscard]] double annulus_radius() const noexcept { return rho_; }
  [[nodiscard]] cplx point(cplx zeta) const noexcept { return phi_(zeta); }
  [[nodiscard]] cplx derivative(cplx zeta) const noexcept { return dphi_(zeta); }
  /// phi(0); always interior.
  [[nodiscard]] cplx center() const noexcept { return phi_(0.0); }
  /// Largest |z| over a dense boundary sample.
  [[nodiscard]] double max_modulus() const noexcept { return max_modulus_; }

 private:
  friend ConformalMapCurve build_polynomial_curve(std::vector<cplx> coeffs, double rho);

  ConformalMapCurve(Polynomial phi, double rho);

  Polynomial phi_;
  Polynomial dphi_;
  Polynomial phibar_;
  Polynomial dphibar_;
  double rho_ = 0.5;
  double max_modulus_ = 0.0;
};

/// Simple, counterclockwise polygon without repeated vertices.
class PolygonCurve {
 public:
  [[nodiscard]] std::span<const cplx> vertices() const noexcept { return v_; }
  [[nodiscard]] std::size_t size() const noexcept { return v_.size(); }
  [[nodiscard]] cplx vertex(std::size_t j) const noexcept { return v_[j % v_.size()]; }
  [[nodiscard]] cplx edge(std::size_t j) const noexcept { return vertex(j + 1) - vertex(j); }
  [[nodiscard]] double perimeter() const noexcept;
  [[nodiscard]] double area() const noexcept;

 private:
  friend PolygonCurve build_polygon(std::vector<cplx> vertices);

  explicit PolygonCurve(std::vector<cplx> v) : v_(std::move(v)) {}

  std::vector<cplx> v_;
};

using AnalyticCurve = std::variant<ConformalMapCurve, PolygonCurve>;

ConformalMapCurve build_circle(cplx center, double radius);
ConformalMapCurve build_polynomial_curve(std::vector<cplx> coeffs, double rho);
PolygonCurve build_polygon(std::vector<cplx> vertices);

/// Uniform-parameter discretization of a closed contour.
///
/// For conformal curves the contour is the image of |zeta| = radius (radius 1
/// is the curve itself) and the trapezoidal rule is spectrally accurate. For
/// polygons the nodes are distributed over the edges in proportion to length;
/// vertices are always nodes.
struct ContourGrid {
  std::size_t n = 0;
  double radius = 1.0;
  std::vector<double> t;
  std::vector<cplx> zeta;  // pullback nodes; empty for polygons
  std::vector<cplx> z;
  std::vector<cplx> dz;  // dz/dt
  double weight = 0.0;   // 2 pi / n
  double max_spacing = 0.0;
  double safety_factor = 5.0;
  double exclusion_band = 0.0;

  [[nodiscard]] std::size_t size() const noexcept { return n; }
};

inline constexpr std::size_t kMaxNodes = std::size_t{1} << 16;

ContourGrid sample(const ConformalMapCurve& curve, std::size_t n);
ContourGrid sample(const PolygonCurve& polygon, std::size_t n);
ContourGrid sample(const AnalyticCurve& curve, std::size_t n);

/// Image of the circle |zeta| = radius, used for deformed Cauchy contours.
ContourGrid sample_circle_image(const ConformalMapCurve& curve, double radius, std::size_t n);

enum class Location { Interior, Exterior, NearBoundary };

/// Winding number of the grid polygon around z, before rounding.
double winding_number(const ContourGrid& grid, cplx z);

/// NearBoundary when z lies within the grid's exclusion band.
Location locate(const ContourGrid& grid, cplx z);

/// z'(t)/|z'(t)| at parameter t.
cplx unit_tangent(const ConformalMapCurve& curve, double t);
cplx unit_tangent(const PolygonCurve& polygon, double t);

using GridFunctional = std::function<cplx(const ContourGrid&)>;

/// Doubles n from n_start until |F(n) - F(2n)| < tol and returns the grid of
/// the smaller of the two. NearBoundary and BranchUnresolved at a given n
/// move on to 2n; they are rethrown only if they persist at n_max.
ContourGrid adaptive_refine(const AnalyticCurve& curve, const GridFunctional& functional, double tol,
                            std::size_t n_start = 16, std::size_t n_max = kMaxNodes);

namespace detail {
bool is_power_of_two(std::size_t n) noexcept;
/// True when the closed polyline through pts has no self-intersections.
bool is_simple_closed_polyline(std::span<const cplx> pts);
}  // namespace detail

}  // namespace slb
