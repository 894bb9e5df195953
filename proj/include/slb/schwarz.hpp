#pragma once

#include <cstddef>
#include <vector>

#include "slb/curve.hpp"

namespace slb {

struct NewtonSettings {
  int max_iter = 50;
  double tol = 1e-13;
};

/// Schwarz function of a conformal-map curve on its validated annulus.
///
/// With zeta = phi^{-1}(z), S(z) = conj(phi(1/conj(zeta))), i.e. the reflected
/// map evaluated at 1/zeta. The inverse is found by Newton iteration seeded
/// from the nearest of a fixed set of annulus samples.
class SchwarzEvaluator {
 public:
  explicit SchwarzEvaluator(ConformalMapCurve curve, NewtonSettings settings = {});

  [[nodiscard]] const ConformalMapCurve& curve() const noexcept { return curve_; }

  /// zeta in the annulus with phi(zeta) = z. Throws OutsideAnnulus or
  /// NewtonDiverged.
  [[nodiscard]] cplx preimage(cplx z) const;

  [[nodiscard]] cplx boundary(double t) const;
  [[nodiscard]] cplx value(cplx z) const { return value_at_zeta(preimage(z)); }
  [[nodiscard]] cplx prime(cplx z) const { return prime_at_zeta(preimage(z)); }
  /// Anti-conformal reflection conj(S(z)).
  [[nodiscard]] cplx reflect(cplx z) const { return std::conj(value(z)); }
  /// Holomorphic extension of the unit tangent; S' = 1/T^2.
  [[nodiscard]] cplx tangent(cplx z) const { return tangent_at_zeta(preimage(z)); }

  [[nodiscard]] cplx value_at_zeta(cplx zeta) const;
  [[nodiscard]] cplx prime_at_zeta(cplx zeta) const;
  [[nodiscard]] cplx tangent_at_zeta(cplx zeta) const;

 private:
  ConformalMapCurve curve_;
  NewtonSettings settings_;
  std::vector<cplx> seed_zeta_;
  std::vector<cplx> seed_z_;
};

cplx schwarz_boundary(const ConformalMapCurve& curve, double t);
cplx schwarz_near(const ConformalMapCurve& curve, cplx z);
cplx schwarz_prime(const ConformalMapCurve& curve, cplx z);

/// On an open polygon edge S(z) = alpha z + beta.
struct EdgeSchwarz {
  cplx alpha;
  cplx beta;
};

EdgeSchwarz polygon_schwarz(const PolygonCurve& polygon, std::size_t edge_index);

}  // namespace slb
