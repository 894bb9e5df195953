#include "slb/bundles.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "slb/contour.hpp"
#include "slb/error.hpp"

namespace slb {

namespace {

constexpr double kFarPoint = 1e6;
constexpr std::size_t kMinContinuationNodes = 1024;

cplx int_power(cplx base, int m) {
  cplx out{1.0};
  const cplx b = m >= 0 ? base : 1.0 / base;
  for (int k = 0; k < std::abs(m); ++k) out *= b;
  return out;
}

}  // namespace

LineBundle::LineBundle(BundleKind kind, const ConformalMapCurve& curve)
    : kind_(kind), schwarz_(std::make_shared<const SchwarzEvaluator>(curve)) {}

LineBundle LineBundle::exp_schwarz(const ConformalMapCurve& curve) {
  return LineBundle(BundleKind::ExpSchwarz, curve);
}

LineBundle LineBundle::schwarz_pole(const ConformalMapCurve& curve, cplx w) {
  LineBundle b(BundleKind::SchwarzPole, curve);
  b.w_ = w;
  return b;
}

LineBundle LineBundle::tangent_power(const ConformalMapCurve& curve, int m) {
  LineBundle b(BundleKind::TangentPower, curve);
  b.m_ = m;
  return b;
}

LineBundle LineBundle::custom(const ConformalMapCurve& curve, Evaluator transition) {
  if (!transition) throw Error(Errc::InvalidArgument, "custom bundle needs a transition function");
  LineBundle b(BundleKind::Custom, curve);
  b.custom_ = std::move(transition);
  return b;
}

std::string LineBundle::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case BundleKind::ExpSchwarz: os << "exp-schwarz"; break;
    case BundleKind::SchwarzPole: os << "schwarz-pole(w=" << w_.real() << (w_.imag() < 0 ? "" : "+") << w_.imag() << "i)"; break;
    case BundleKind::TangentPower: os << "tangent-power(m=" << m_ << ")"; break;
    case BundleKind::Custom: os << "custom"; break;
  }
  return os.str();
}

cplx LineBundle::transition(cplx z) const {
  if (kind_ == BundleKind::Custom) return custom_(z);
  return transition_at_zeta(schwarz_->preimage(z));
}

cplx LineBundle::transition_at_zeta(cplx zeta) const {
  switch (kind_) {
    case BundleKind::ExpSchwarz: return std::exp(schwarz_->value_at_zeta(zeta));
    case BundleKind::SchwarzPole: return 1.0 / (schwarz_->value_at_zeta(zeta) - std::conj(w_));
    case BundleKind::TangentPower: return int_power(schwarz_->tangent_at_zeta(zeta), -m_);
    case BundleKind::Custom: return custom_(curve().point(zeta));
  }
  return 0.0;
}

cplx LineBundle::reverse_transition_at_zeta(cplx zeta) const {
  switch (kind_) {
    case BundleKind::ExpSchwarz: return std::exp(-schwarz_->value_at_zeta(zeta));
    case BundleKind::SchwarzPole: return schwarz_->value_at_zeta(zeta) - std::conj(w_);
    case BundleKind::TangentPower: return int_power(schwarz_->tangent_at_zeta(zeta), m_);
    case BundleKind::Custom: return 1.0 / custom_(curve().point(zeta));
  }
  return 0.0;
}

ChernClass chern_class_detailed(const LineBundle& bundle, const ContourGrid& grid) {
  if (grid.zeta.empty()) throw Error(Errc::InvalidArgument, "bundles need a conformal-map grid");
  std::vector<cplx> values(grid.n);
  for (std::size_t j = 0; j < grid.n; ++j) {
    values[j] = bundle.transition_at_zeta(grid.zeta[j]);
    if (!(std::abs(values[j]) > 1e-12))
      throw Error(Errc::BranchUnresolved, "transition function vanishes at a grid node");
  }
  const double raw = unwrapped_log(values).winding;
  const double rounded = std::round(raw);
  if (std::abs(raw - rounded) >= 1e-6)
    throw Error(Errc::NotAnInteger, "winding " + std::to_string(raw) + " is not an integer");
  return {static_cast<int>(rounded), raw};
}

int chern_class(const LineBundle& bundle, const ContourGrid& grid) {
  return chern_class_detailed(bundle, grid).value;
}

std::string_view to_string(Normalization n) noexcept {
  switch (n) {
    case Normalization::OneAtInfinity: return "one-at-infinity";
    case Normalization::LeadingOneOverZ: return "leading-one-over-z";
    case Normalization::LeadingInversePower: return "leading-inverse-power";
  }
  return "unknown";
}

// Density log(lambda_12(zeta) (zeta - a)^{-c}) on a contour, unwrapped. The
// product must not wind, otherwise lambda_12 has zeros or poles between this
// contour and the curve (or a is on the wrong side).
std::vector<cplx> SectionPair::density_on(const ContourGrid& contour) const {
  std::vector<cplx> samples(contour.n);
  for (std::size_t j = 0; j < contour.n; ++j) {
    cplx v = bundle_.transition_at_zeta(contour.zeta[j]);
    if (chern_ != 0) v *= int_power(contour.z[j] - *a_, -chern_);
    samples[j] = v;
  }
  auto log = unwrapped_log(samples);
  if (std::abs(log.winding) > 0.5)
    throw Error(Errc::BranchUnresolved, "adjusted transition winds " + std::to_string(log.winding) +
                                            " times on the contour |zeta| = " +
                                            std::to_string(contour.radius));
  return std::move(log.values);
}

cplx SectionPair::exterior_factor(cplx z) const {
  return chern_ == 0 ? cplx{1.0} : int_power(z - *a_, -chern_);
}

SectionPair canonical_section(const LineBundle& bundle, const ContourGrid& grid,
                              const SectionOptions& options) {
  if (grid.zeta.empty() || grid.radius != 1.0)
    throw Error(Errc::InvalidArgument, "sections need a grid on the curve itself");
  const int c = chern_class(bundle, grid);
  if (c < 0)
    throw Error(Errc::NoHolomorphicSection,
                "Chern class " + std::to_string(c) + " < 0: no holomorphic sections");

  SectionPair s(bundle, grid);
  s.chern_ = c;
  s.normalization_ = c == 0   ? Normalization::OneAtInfinity
                     : c == 1 ? Normalization::LeadingOneOverZ
                              : Normalization::LeadingInversePower;
  if (c != 0) {
    std::optional<cplx> a = options.adjustment_point;
    if (!a && options.default_adjustment) {
      a = bundle.kind() == BundleKind::SchwarzPole && locate(grid, bundle.pole()) == Location::Interior
              ? bundle.pole()
              : bundle.curve().center();
    }
    if (!a) throw Error(Errc::AdjustmentPointMissing, "Chern class is nonzero; an interior point is required");
    if (locate(grid, *a) != Location::Interior)
      throw Error(Errc::AdjustmentPointNotInterior, "adjustment point must be inside the curve, away from it");
    s.a_ = a;
  }
  s.density_ = s.density_on(grid);
  if (options.base_branch != 0)
    for (auto& h : s.density_) h += cplx{0.0, 2.0 * kPi * options.base_branch};
  s.prepare_continuation();
  return s;
}

void SectionPair::prepare_continuation() {
  const double rho = bundle_.curve().annulus_radius();
  const std::size_t n = std::max(grid_.n, kMinContinuationNodes);
  inner_ = sample_circle_image(bundle_.curve(), rho, n);
  outer_ = sample_circle_image(bundle_.curve(), 1.0 / rho, n);
  // Failures here only affect the continuation; they are reported when it is used.
  try {
    if (a_ && std::lround(winding_number(inner_, *a_)) != 1)
      throw Error(Errc::AdjustmentPointNotInterior,
                  "adjustment point lies outside the inner continuation contour");
    inner_density_ = density_on(inner_);
    outer_density_ = density_on(outer_);
  } catch (const Error&) {
    inner_density_.clear();
    outer_density_.clear();
  }
}

cplx SectionPair::f1(cplx z) const {
  if (locate(grid_, z) == Location::NearBoundary)
    throw Error(Errc::NearBoundary, "point within the exclusion band");
  if (locate(grid_, z) != Location::Interior) throw Error(Errc::WrongQuadrant, "f1 lives inside the curve");
  return std::exp(cauchy_integral(grid_, density_, z));
}

cplx SectionPair::f2(cplx z) const {
  const Location where = locate(grid_, z);
  if (where == Location::NearBoundary) throw Error(Errc::NearBoundary, "point within the exclusion band");
  if (where != Location::Exterior) throw Error(Errc::WrongQuadrant, "f2 lives outside the curve");
  return std::exp(cauchy_integral(grid_, density_, z)) * exterior_factor(z);
}

cplx SectionPair::operator()(cplx z) const {
  switch (locate(grid_, z)) {
    case Location::Interior: return std::exp(cauchy_integral(grid_, density_, z));
    case Location::Exterior: return std::exp(cauchy_integral(grid_, density_, z)) * exterior_factor(z);
    case Location::NearBoundary: break;
  }
  throw Error(Errc::NearBoundary, "point within the exclusion band " + std::to_string(grid_.exclusion_band));
}

double SectionPair::normalization_residual() const {
  const cplx far{kFarPoint, 0.0};
  const cplx value = f2(far);
  return std::abs(int_power(far, chern_) * value - 1.0);
}

namespace {

// Relative clearance of zeta from the contour radius r, measured in node
// spacings of an n-node contour.
void require_clearance(cplx zeta, double r, std::size_t n) {
  const double gap = std::abs(std::abs(zeta) - r) / std::max(std::abs(zeta), r);
  if (gap < 5.0 * 2.0 * kPi / static_cast<double>(n))
    throw Error(Errc::NearBoundary, "point too close to a continuation contour");
}

}  // namespace

cplx SectionPair::f1_continued(cplx z) const {
  if (outer_density_.empty())
    throw Error(Errc::BranchUnresolved, "transition function is not resolvable on the continuation contours");
  const cplx zeta = bundle_.schwarz().preimage(z);
  require_clearance(zeta, outer_.radius, outer_.n);
  return std::exp(cauchy_integral(outer_, outer_density_, z));
}

cplx SectionPair::f2_continued(cplx z) const {
  if (inner_density_.empty())
    throw Error(Errc::BranchUnresolved, "transition function is not resolvable on the continuation contours");
  const cplx zeta = bundle_.schwarz().preimage(z);
  require_clearance(zeta, inner_.radius, inner_.n);
  return std::exp(cauchy_integral(inner_, inner_density_, z)) * exterior_factor(z);
}

cplx evaluate_section(const SectionPair& section, cplx z) { return section(z); }

std::vector<cplx> transition_test_points(const ConformalMapCurve& curve, std::size_t count) {
  const double r_in = 0.5 * (1.0 + curve.annulus_radius());
  std::vector<cplx> pts;
  pts.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const double theta = 2.0 * kPi * (static_cast<double>(k / 2) + 0.25) / static_cast<double>((count + 1) / 2);
    const cplx zeta = std::polar(k % 2 == 0 ? r_in : 1.0 / r_in, theta);
    pts.push_back(curve.point(zeta));
  }
  return pts;
}

double verify_transition(const SectionPair& section, const LineBundle& bundle,
                         std::span<const cplx> annulus_points) {
  double worst = 0.0;
  for (const cplx z : annulus_points) {
    const cplx f1 = section.f1_continued(z);
    const cplx f2 = section.f2_continued(z);
    worst = std::max(worst, std::abs(f1 - bundle.transition(z) * f2) / (1.0 + std::abs(f2)));

    // Tie the continuation back to the section stored on the curve itself.
    switch (locate(section.grid(), z)) {
      case Location::Interior:
        worst = std::max(worst, std::abs(section.f1(z) - f1) / (1.0 + std::abs(f1)));
        break;
      case Location::Exterior:
        worst = std::max(worst, std::abs(section.f2(z) - f2) / (1.0 + std::abs(f2)));
        break;
      case Location::NearBoundary: break;
    }
  }
  return worst;
}

double verify_m_differential_match(const std::function<cplx(cplx)>& f1,
                                   const std::function<cplx(cplx)>& f2, const ConformalMapCurve&,
                                   const ContourGrid& grid, int m) {
  double worst = 0.0;
  for (std::size_t j = 0; j < grid.n; ++j) {
    const cplx z = grid.z[j];
    const cplx tangent = grid.dz[j] / std::abs(grid.dz[j]);
    worst = std::max(worst, std::abs(f1(z) * int_power(tangent, m) - std::conj(f2(z))));
  }
  return worst;
}

}  // namespace slb
