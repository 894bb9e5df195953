#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "slb/curve.hpp"
#include "slb/schwarz.hpp"

namespace slb {

enum class BundleKind { ExpSchwarz, SchwarzPole, TangentPower, Custom };

/// Line bundle on the Riemann sphere given by one transition function
/// lambda_12 on the annulus around the curve, gluing the interior chart U1 to
/// the exterior chart U2 (f1 = lambda_12 f2 on the overlap).
///
///   ExpSchwarz       lambda_12 = exp(S)
///   SchwarzPole(w)   lambda_12 = 1 / (S - conj(w))
///   TangentPower(m)  lambda_12 = T^{-m}; m = 2 is the canonical bundle (S')
///   Custom           user supplied lambda_12(z)
class LineBundle {
 public:
  using Evaluator = std::function<cplx(cplx)>;

  static LineBundle exp_schwarz(const ConformalMapCurve& curve);
  static LineBundle schwarz_pole(const ConformalMapCurve& curve, cplx w);
  static LineBundle tangent_power(const ConformalMapCurve& curve, int m);
  static LineBundle custom(const ConformalMapCurve& curve, Evaluator transition);

  [[nodiscard]] BundleKind kind() const noexcept { return kind_; }
  [[nodiscard]] cplx pole() const noexcept { return w_; }
  [[nodiscard]] int power() const noexcept { return m_; }
  [[nodiscard]] const ConformalMapCurve& curve() const noexcept { return schwarz_->curve(); }
  [[nodiscard]] const SchwarzEvaluator& schwarz() const noexcept { return *schwarz_; }
  [[nodiscard]] std::string describe() const;

  /// lambda_12 at z in the validated annulus.
  [[nodiscard]] cplx transition(cplx z) const;
  /// lambda_12(phi(zeta)).
  [[nodiscard]] cplx transition_at_zeta(cplx zeta) const;
  /// lambda_21 from its own closed form (reciprocal for Custom).
  [[nodiscard]] cplx reverse_transition_at_zeta(cplx zeta) const;

 private:
  LineBundle(BundleKind kind, const ConformalMapCurve& curve);

  BundleKind kind_;
  std::shared_ptr<const SchwarzEvaluator> schwarz_;
  cplx w_{0.0};
  int m_ = 0;
  Evaluator custom_;
};

struct ChernClass {
  int value = 0;
  double raw = 0.0;  // unrounded winding of lambda_12
};

/// (1/2 pi i) \oint d log lambda_12 by phase unwrapping at the grid nodes.
/// Throws BranchUnresolved (phase step >= pi/2 or |lambda_12| <= 1e-12) and
/// NotAnInteger (deviation >= 1e-6).
ChernClass chern_class_detailed(const LineBundle& bundle, const ContourGrid& grid);
int chern_class(const LineBundle& bundle, const ContourGrid& grid);

enum class Normalization {
  OneAtInfinity,        // c = 0: f2(inf) = 1
  LeadingOneOverZ,      // c = 1: f2 = 1/z + O(1/z^2)
  LeadingInversePower,  // c >= 2: f2 = z^{-c} + ...
};

std::string_view to_string(Normalization n) noexcept;

struct SectionOptions {
  /// Point a inside the curve used to remove the winding when c != 0.
  std::optional<cplx> adjustment_point;
  /// When no point is given: SchwarzPole(w) with w inside uses a = w, every
  /// other bundle uses phi(0). When false a missing point is an error.
  bool default_adjustment = true;
  /// Multiple of 2 pi i added to the boundary log-density.
  int base_branch = 0;
};

/// Canonical holomorphic section (f1, f2) obtained from the Cauchy integral of
/// the boundary log-density log(lambda_12 (zeta - a)^{-c}).
class SectionPair {
 public:
  [[nodiscard]] int chern() const noexcept { return chern_; }
  [[nodiscard]] std::optional<cplx> adjustment_point() const noexcept { return a_; }
  [[nodiscard]] Normalization normalization() const noexcept { return normalization_; }
  [[nodiscard]] const ContourGrid& grid() const noexcept { return grid_; }
  [[nodiscard]] std::span<const cplx> log_density() const noexcept { return density_; }
  [[nodiscard]] const LineBundle& bundle() const noexcept { return bundle_; }

  /// f1 for interior z, f2 for exterior z; NearBoundary inside the band.
  [[nodiscard]] cplx operator()(cplx z) const;
  [[nodiscard]] cplx f1(cplx z) const;  // WrongQuadrant unless interior
  [[nodiscard]] cplx f2(cplx z) const;  // WrongQuadrant unless exterior

  /// |f2(Z) - 1| or |Z^c f2(Z) - 1| at Z = 1e6, per the normalization.
  [[nodiscard]] double normalization_residual() const;

  /// Analytic continuations of f1 and f2 to a point of the annulus (either
  /// side of the curve), through Cauchy integrals over the images of
  /// |zeta| = 1/rho and |zeta| = rho respectively.
  [[nodiscard]] cplx f1_continued(cplx z) const;
  [[nodiscard]] cplx f2_continued(cplx z) const;

 private:
  friend SectionPair canonical_section(const LineBundle&, const ContourGrid&, const SectionOptions&);

  SectionPair(LineBundle bundle, ContourGrid grid) : bundle_(std::move(bundle)), grid_(std::move(grid)) {}

  [[nodiscard]] cplx exterior_factor(cplx z) const;
  [[nodiscard]] std::vector<cplx> density_on(const ContourGrid& contour) const;
  void prepare_continuation();

  LineBundle bundle_;
  ContourGrid grid_;
  std::vector<cplx> density_;
  int chern_ = 0;
  std::optional<cplx> a_;
  Normalization normalization_ = Normalization::OneAtInfinity;

  ContourGrid inner_;
  ContourGrid outer_;
  std::vector<cplx> inner_density_;
  std::vector<cplx> outer_density_;
};

/// Throws NoHolomorphicSection for c < 0, AdjustmentPointMissing,
/// AdjustmentPointNotInterior and BranchUnresolved.
SectionPair canonical_section(const LineBundle& bundle, const ContourGrid& grid,
                              const SectionOptions& options = {});

cplx evaluate_section(const SectionPair& section, cplx z);

/// Points on |zeta| = (1 + rho)/2 and their reflections through the curve,
/// alternating, count of them in total.
std::vector<cplx> transition_test_points(const ConformalMapCurve& curve, std::size_t count = 32);

/// max over points of |f1(z) - lambda_12(z) f2(z)| / (1 + |f2(z)|) using the
/// continued pieces; points outside the grid's exclusion band also compare
/// the continuation with the direct evaluation on their own side.
double verify_transition(const SectionPair& section, const LineBundle& bundle,
                         std::span<const cplx> annulus_points);

/// max_j |f1(z_j) T(z_j)^m - conj(f2(z_j))| over the grid nodes.
double verify_m_differential_match(const std::function<cplx(cplx)>& f1,
                                   const std::function<cplx(cplx)>& f2, const ConformalMapCurve& curve,
                                   const ContourGrid& grid, int m);

}  // namespace slb
