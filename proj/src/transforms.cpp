#include "slb/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "slb/contour.hpp"
#include "slb/error.hpp"

namespace slb {

namespace {

void require_boundary_grid(const ContourGrid& grid) {
  if (grid.zeta.empty() || grid.radius != 1.0)
    throw Error(Errc::InvalidArgument, "grid must sample the curve itself (|zeta| = 1)");
}

// Cauchy integral with the node-0 value removed first: the constant part is
// integrated exactly (1 inside, 0 outside).
cplx cauchy_integral_centered(const ContourGrid& grid, const std::vector<cplx>& density, cplx z,
                              Side side) {
  const cplx ref = density.front();
  std::vector<cplx> shifted(density.size());
  std::transform(density.begin(), density.end(), shifted.begin(), [ref](cplx h) { return h - ref; });
  return cauchy_integral(grid, shifted, z) + (side == Side::Interior ? ref : cplx{0.0});
}

std::vector<cplx> conj_nodes(const ContourGrid& grid) {
  std::vector<cplx> d(grid.n);
  std::transform(grid.z.begin(), grid.z.end(), d.begin(), [](cplx v) { return std::conj(v); });
  return d;
}

}  // namespace

std::string_view to_string(Quadrant q) noexcept {
  if (q.z == Side::Exterior) return q.w == Side::Exterior ? "ext-ext" : "ext-int";
  return q.w == Side::Exterior ? "int-ext" : "int-int";
}

Side side_of(const ContourGrid& grid, cplx z) {
  switch (locate(grid, z)) {
    case Location::Interior: return Side::Interior;
    case Location::Exterior: return Side::Exterior;
    case Location::NearBoundary: break;
  }
  throw Error(Errc::NearBoundary, "point lies within the exclusion band " +
                                      std::to_string(grid.exclusion_band) + " of the curve");
}

cplx MomentTable::operator[](int k) const {
  if (k < k_min() || k > k_max())
    throw Error(Errc::InvalidArgument, "moment index " + std::to_string(k) + " not in table");
  return values_[static_cast<std::size_t>(k - k_min_)];
}

cplx cauchy_transform(const ConformalMapCurve&, const ContourGrid& grid, cplx z) {
  require_boundary_grid(grid);
  const Side side = side_of(grid, z);
  const cplx integral = cauchy_integral(grid, conj_nodes(grid), z);
  return side == Side::Exterior ? -integral : integral;
}

MomentTable harmonic_moments(const ConformalMapCurve&, const ContourGrid& grid, int k_min, int k_max) {
  require_boundary_grid(grid);
  if (k_min > k_max) throw Error(Errc::InvalidArgument, "empty moment range");
  if (locate(grid, 0.0) != Location::Interior)
    throw Error(Errc::OriginNotInterior, "harmonic moments require 0 inside the curve");
  std::vector<cplx> values;
  values.reserve(static_cast<std::size_t>(k_max - k_min + 1));
  for (int k = k_min; k <= k_max; ++k) {
    cplx acc{0.0};
    for (std::size_t j = 0; j < grid.n; ++j)
      acc += std::pow(grid.z[j], k) * std::conj(grid.z[j]) * grid.dz[j];
    values.push_back(acc * grid.weight / (2.0 * kPi * kI));
  }
  return MomentTable(k_min, std::move(values));
}

std::vector<cplx> log_section_laurent(const ConformalMapCurve& curve, const ContourGrid& grid, int K) {
  require_boundary_grid(grid);
  if (K < 0) throw Error(Errc::InvalidArgument, "K must be non-negative");
  double reach = 0.0;
  for (const auto& z : grid.z) reach = std::max(reach, std::abs(z));
  const double radius = 2.0 * std::max(reach, curve.max_modulus()) + grid.exclusion_band;
  const std::size_t m = std::max<std::size_t>(256, 8 * static_cast<std::size_t>(K + 1));

  const auto density = conj_nodes(grid);
  std::vector<cplx> log_f2(m);
  std::vector<cplx> pts(m);
  for (std::size_t j = 0; j < m; ++j) {
    pts[j] = std::polar(radius, 2.0 * kPi * static_cast<double>(j) / static_cast<double>(m));
    log_f2[j] = cauchy_integral(grid, density, pts[j]);
  }
  std::vector<cplx> b(static_cast<std::size_t>(K) + 1);
  for (int k = 0; k <= K; ++k) {
    cplx acc{0.0};
    for (std::size_t j = 0; j < m; ++j) acc += log_f2[j] * std::pow(pts[j], k + 1);
    b[static_cast<std::size_t>(k)] = acc / static_cast<double>(m);
  }
  return b;
}

double moment_expansion_check(const ConformalMapCurve& curve, const ContourGrid& grid, int K) {
  const auto b = log_section_laurent(curve, grid, K);
  const auto moments = harmonic_moments(curve, grid, 0, K);
  double worst = 0.0;
  for (int k = 0; k <= K; ++k)
    worst = std::max(worst, std::abs(b[static_cast<std::size_t>(k)] + moments[k]));
  return worst;
}

TransformValue double_cauchy(const ConformalMapCurve&, const ContourGrid& grid, cplx z, cplx w) {
  require_boundary_grid(grid);
  const Quadrant quad{side_of(grid, z), side_of(grid, w)};
  if (quad.z == Side::Interior && quad.w == Side::Interior &&
      std::abs(z - w) <= 1e-14 * std::max(1.0, std::abs(z)))
    throw Error(Errc::CoincidentInteriorPoints, "H(z, w) is singular at z = w");

  std::vector<cplx> density(grid.n);
  if (quad.w == Side::Exterior) {
    std::vector<cplx> samples(grid.n);
    for (std::size_t j = 0; j < grid.n; ++j) samples[j] = std::conj(grid.z[j]) - std::conj(w);
    density = unwrapped_log(samples).values;
  } else {
    for (std::size_t j = 0; j < grid.n; ++j) density[j] = std::log(std::norm(grid.z[j] - w));
  }

  cplx C = -cauchy_integral_centered(grid, density, z, quad.z);
  if (quad.z == Side::Interior) {
    if (quad.w == Side::Exterior) {
      // The correction log(conj z - conj w) must use the same branch as the
      // boundary density; conj(density) is a branch of log(zeta - w), analytic
      // inside, whose interior value fixes the multiple of 2 pi i.
      std::vector<cplx> analytic(grid.n);
      std::transform(density.begin(), density.end(), analytic.begin(),
                     [](cplx v) { return std::conj(v); });
      const cplx estimate = std::conj(cauchy_integral_centered(grid, analytic, z, Side::Interior));
      const cplx principal = std::log(std::conj(z) - std::conj(w));
      const double turns = std::round((estimate.imag() - principal.imag()) / (2.0 * kPi));
      C += principal + cplx{0.0, 2.0 * kPi * turns};
    } else {
      C += std::log(std::norm(z - w));
    }
  }
  return {z, w, quad, C, std::exp(C)};
}

TransformValue exponential_transform(const ConformalMapCurve& curve, const ContourGrid& grid, cplx z,
                                     cplx w) {
  return double_cauchy(curve, grid, z, w);
}

namespace {

TransformValue in_quadrant(const ConformalMapCurve& curve, const ContourGrid& grid, cplx z, cplx w,
                           Quadrant expected, const char* piece) {
  const Quadrant actual{side_of(grid, z), side_of(grid, w)};
  if (!(actual == expected))
    throw Error(Errc::WrongQuadrant, std::string(piece) + " is defined on " +
                                         std::string(to_string(expected)) + ", got " +
                                         std::string(to_string(actual)));
  return double_cauchy(curve, grid, z, w);
}

}  // namespace

cplx piece_F(const ConformalMapCurve& curve, const ContourGrid& grid, cplx z, cplx w) {
  return in_quadrant(curve, grid, z, w, {Side::Exterior, Side::Exterior}, "F").E;
}

cplx piece_G(const ConformalMapCurve& curve, const ContourGrid& grid, cplx z, cplx w) {
  const auto v = in_quadrant(curve, grid, z, w, {Side::Interior, Side::Exterior}, "G");
  return v.E / (std::conj(z) - std::conj(w));
}

cplx piece_Gstar(const ConformalMapCurve& curve, const ContourGrid& grid, cplx z, cplx w) {
  // G*(z, w) = conj(G(w, z)) = -E(z, w) / (z - w)
  const auto v = in_quadrant(curve, grid, z, w, {Side::Exterior, Side::Interior}, "G*");
  return -v.E / (z - w);
}

cplx piece_H(const ConformalMapCurve& curve, const ContourGrid& grid, cplx z, cplx w) {
  const auto v = in_quadrant(curve, grid, z, w, {Side::Interior, Side::Interior}, "H");
  return v.E / std::norm(z - w);
}

}  // namespace slb
