#include "slb/schwarz.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "slb/error.hpp"

namespace slb {

namespace {

constexpr std::size_t kSeedAngles = 128;
constexpr double kAnnulusSlack = 1e-9;

}  // namespace

SchwarzEvaluator::SchwarzEvaluator(ConformalMapCurve curve, NewtonSettings settings)
    : curve_(std::move(curve)), settings_(settings) {
  const double rho = curve_.annulus_radius();
  for (const double r : {rho, 0.5 * (rho + 1.0), 1.0, 0.5 * (1.0 + 1.0 / rho), 1.0 / rho}) {
    for (std::size_t k = 0; k < kSeedAngles; ++k) {
      const cplx zeta = std::polar(r, 2.0 * kPi * static_cast<double>(k) / kSeedAngles);
      seed_zeta_.push_back(zeta);
      seed_z_.push_back(curve_.point(zeta));
    }
  }
}

cplx SchwarzEvaluator::preimage(cplx z) const {
  std::vector<std::size_t> order(seed_z_.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::partial_sort(order.begin(), order.begin() + 4, order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(seed_z_[a] - z) < std::abs(seed_z_[b] - z);
  });

  const double rho = curve_.annulus_radius();
  bool converged_outside = false;
  for (std::size_t attempt = 0; attempt < 4; ++attempt) {
    cplx zeta = seed_zeta_[order[attempt]];
    cplx resid = curve_.point(zeta) - z;
    bool converged = false;
    for (int it = 0; it < settings_.max_iter; ++it) {
      const cplx d = curve_.derivative(zeta);
      if (d == cplx{0.0}) break;
      cplx step = resid / d;
      // Backtrack while the residual grows.
      cplx next = zeta - step;
      cplx next_resid = curve_.point(next) - z;
      for (int halving = 0; halving < 20 && std::abs(next_resid) > std::abs(resid); ++halving) {
        step *= 0.5;
        next = zeta - step;
        next_resid = curve_.point(next) - z;
      }
      zeta = next;
      resid = next_resid;
      if (std::abs(step) <= settings_.tol * std::max(1.0, std::abs(zeta)) &&
          std::abs(resid) <= 1e-10 * std::max(1.0, std::abs(z))) {
        converged = true;
        break;
      }
    }
    if (!converged) continue;
    const double r = std::abs(zeta);
    if (r >= rho * (1.0 - kAnnulusSlack) && r <= (1.0 + kAnnulusSlack) / rho) return zeta;
    converged_outside = true;
  }
  if (converged_outside)
    throw Error(Errc::OutsideAnnulus, "preimage of the point lies outside the validated annulus");
  throw Error(Errc::NewtonDiverged, "Newton inversion of the conformal map did not converge");
}

cplx SchwarzEvaluator::boundary(double t) const { return std::conj(curve_.point(std::polar(1.0, t))); }

cplx SchwarzEvaluator::value_at_zeta(cplx zeta) const { return curve_.reflected()(1.0 / zeta); }

cplx SchwarzEvaluator::prime_at_zeta(cplx zeta) const {
  // d/dz phibar(1/zeta) = -phibar'(1/zeta) / (zeta^2 phi'(zeta))
  return -curve_.reflected_prime()(1.0 / zeta) / (zeta * zeta * curve_.derivative(zeta));
}

cplx SchwarzEvaluator::tangent_at_zeta(cplx zeta) const {
  // T(phi(zeta)) = i zeta sqrt(phi'(zeta) / phibar'(1/zeta)). On |zeta| = 1 the
  // square root is phi'/|phi'|; elsewhere the branch is continued radially.
  auto ratio = [this](cplx s) { return curve_.derivative(s) / curve_.reflected_prime()(1.0 / s); };
  const double r = std::abs(zeta);
  const cplx unit = zeta / r;
  const cplx d0 = curve_.derivative(unit);
  if (d0 == cplx{0.0}) throw Error(Errc::DegenerateTangent, "phi' vanishes on the unit circle");
  const cplx root0 = d0 / std::abs(d0);
  if (r == 1.0) return kI * zeta * root0;

  for (int steps = 64; steps <= 4096; steps *= 2) {
    cplx root = root0;
    bool smooth = true;
    for (int k = 1; k <= steps && smooth; ++k) {
      const double rk = 1.0 + (r - 1.0) * static_cast<double>(k) / steps;
      cplx cand = std::sqrt(ratio(unit * rk));
      if (std::abs(cand - root) > std::abs(cand + root)) cand = -cand;
      if (std::abs(cand - root) > 0.25 * std::abs(root)) smooth = false;
      root = cand;
    }
    if (smooth) return kI * zeta * root;
  }
  throw Error(Errc::BranchUnresolved, "unit tangent could not be continued to the requested point");
}

cplx schwarz_boundary(const ConformalMapCurve& curve, double t) {
  return std::conj(curve.point(std::polar(1.0, t)));
}

cplx schwarz_near(const ConformalMapCurve& curve, cplx z) { return SchwarzEvaluator(curve).value(z); }

cplx schwarz_prime(const ConformalMapCurve& curve, cplx z) { return SchwarzEvaluator(curve).prime(z); }

EdgeSchwarz polygon_schwarz(const PolygonCurve& polygon, std::size_t edge_index) {
  if (edge_index >= polygon.size())
    throw Error(Errc::InvalidArgument, "edge index " + std::to_string(edge_index) + " out of range");
  const cplx a = polygon.vertex(edge_index);
  const cplx edge = polygon.edge(edge_index);
  if (std::abs(edge) == 0.0) throw Error(Errc::DegenerateEdge, "zero-length edge");
  const cplx tangent = edge / std::abs(edge);
  const cplx alpha = std::conj(tangent) / tangent;
  return {alpha, std::conj(a) - alpha * a};
}

}  // namespace slb
