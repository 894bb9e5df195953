#include "doctest.h"
#include "slb/bundles.hpp"
#include "slb/error.hpp"
#include "slb/transforms.hpp"

using namespace slb;

namespace {

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected slb::Error");
  return Errc::InvalidArgument;
}

const auto kUnit = build_circle(0.0, 1.0);
const auto kCard = build_polynomial_curve({0.0, 1.0, 0.3}, 0.7);

}  // namespace

TEST_CASE("chern classes") {
  for (const auto& curve : {kUnit, kCard}) {
    const auto g = sample(curve, 512);
    CHECK(chern_class(LineBundle::exp_schwarz(curve), g) == 0);
    CHECK(chern_class(LineBundle::schwarz_pole(curve, 3.0), g) == 0);
    CHECK(chern_class(LineBundle::schwarz_pole(curve, 0.0), g) == 1);
    CHECK(chern_class(LineBundle::schwarz_pole(curve, {0.4, 0.2}), g) == 1);
    CHECK(chern_class(LineBundle::tangent_power(curve, 2), g) == -2);
    CHECK(chern_class(LineBundle::tangent_power(curve, 1), g) == -1);
    const auto detailed = chern_class_detailed(LineBundle::tangent_power(curve, 2), g);
    CHECK(std::abs(detailed.raw - detailed.value) < 1e-6);
  }
}

TEST_CASE("chern class jumps by one across the curve") {
  const auto g = sample(kCard, 1024);
  for (double t : {0.3, 1.7, 3.0, 4.4}) {
    const cplx z0 = kCard.point(std::polar(1.0, t));
    const int outside = chern_class(LineBundle::schwarz_pole(kCard, 1.05 * z0), g);
    const int inside = chern_class(LineBundle::schwarz_pole(kCard, 0.95 * z0), g);
    CHECK(inside - outside == 1);
  }
}

TEST_CASE("canonical sections on the disk") {
  const auto g = sample(kUnit, 256);
  const auto es = canonical_section(LineBundle::exp_schwarz(kUnit), g);
  CHECK(es.chern() == 0);
  CHECK(es.normalization() == Normalization::OneAtInfinity);
  CHECK(std::abs(es(0.5) - 1.0) < 1e-12);
  CHECK(std::abs(es(2.0) - std::exp(-0.5)) < 1e-12);
  CHECK(std::abs(es(5.0) - std::exp(-0.2)) < 1e-12);

  const auto p3 = canonical_section(LineBundle::schwarz_pole(kUnit, 3.0), g);
  CHECK(p3.chern() == 0);
  CHECK(std::abs(p3(0.5) + 1.0 / 3.0) < 1e-12);
  CHECK(std::abs(p3(2.0) - (1.0 - 1.0 / 6.0)) < 1e-12);
  CHECK(std::abs(evaluate_section(p3, 5.0) - (1.0 - 1.0 / 15.0)) < 1e-12);

  SectionOptions at0;
  at0.adjustment_point = 0.0;
  const auto p0 = canonical_section(LineBundle::schwarz_pole(kUnit, 0.0), g, at0);
  CHECK(p0.chern() == 1);
  CHECK(p0.normalization() == Normalization::LeadingOneOverZ);
  CHECK(std::abs(p0(0.5) - 1.0) < 1e-12);
  CHECK(std::abs(p0(2.0) - 0.5) < 1e-12);
  CHECK(std::abs(p0(5.0) - 0.2) < 1e-12);
  for (const auto* s : {&es, &p3, &p0}) CHECK(s->normalization_residual() < 1e-6);

  CHECK(code_of([&] { (void)es(1.0); }) == Errc::NearBoundary);
  CHECK(code_of([&] { (void)es.f1(2.0); }) == Errc::WrongQuadrant);
  CHECK(code_of([&] { (void)es.f2(0.5); }) == Errc::WrongQuadrant);
}

TEST_CASE("section errors") {
  const auto g = sample(kUnit, 256);
  CHECK(code_of([&] { (void)canonical_section(LineBundle::tangent_power(kUnit, 2), g); }) ==
        Errc::NoHolomorphicSection);
  SectionOptions strict;
  strict.default_adjustment = false;
  CHECK(code_of([&] { (void)canonical_section(LineBundle::schwarz_pole(kUnit, 0.2), g, strict); }) ==
        Errc::AdjustmentPointMissing);
  SectionOptions outside;
  outside.adjustment_point = 5.0;
  CHECK(code_of([&] { (void)canonical_section(LineBundle::schwarz_pole(kUnit, 0.2), g, outside); }) ==
        Errc::AdjustmentPointNotInterior);
  // A chern-0 bundle needs no adjustment point even in strict mode.
  CHECK_NOTHROW((void)canonical_section(LineBundle::exp_schwarz(kUnit), g, strict));
}

TEST_CASE("transition identity on the annulus") {
  for (const auto& curve : {kUnit, kCard}) {
    const auto g = sample(curve, 512);
    const auto pts = transition_test_points(curve, 32);
    CHECK(pts.size() == 32);
    for (cplx w : {cplx{3.0}, cplx{0.0}, cplx{0.4, 0.2}}) {
      const auto bundle = LineBundle::schwarz_pole(curve, w);
      const auto s = canonical_section(bundle, g);
      CHECK(verify_transition(s, bundle, pts) < 1e-9);
    }
    const auto es = LineBundle::exp_schwarz(curve);
    CHECK(verify_transition(canonical_section(es, g), es, pts) < 1e-9);
  }
  const auto trivial = LineBundle::custom(kUnit, [](cplx) { return cplx{1.0}; });
  const auto g = sample(kUnit, 256);
  const auto s = canonical_section(trivial, g);
  CHECK(std::abs(s(0.3) - 1.0) < 1e-14);
  CHECK(std::abs(s(3.0) - 1.0) < 1e-14);
  CHECK(verify_transition(s, trivial, transition_test_points(kUnit)) < 1e-14);
}

TEST_CASE("cocycle") {
  for (const auto& bundle :
       {LineBundle::exp_schwarz(kCard), LineBundle::schwarz_pole(kCard, {0.4, 0.2}),
        LineBundle::schwarz_pole(kCard, 3.0), LineBundle::tangent_power(kCard, 2),
        LineBundle::tangent_power(kCard, 1)}) {
    const auto g = sample(kCard, 256);
    for (const auto& zeta : g.zeta)
      CHECK(std::abs(bundle.transition_at_zeta(zeta) * bundle.reverse_transition_at_zeta(zeta) - 1.0) < 1e-12);
  }
}

TEST_CASE("sections differ by a constant across base branches") {
  const auto g = sample(kCard, 512);
  const auto bundle = LineBundle::exp_schwarz(kCard);
  SectionOptions other;
  other.base_branch = 1;
  const auto s0 = canonical_section(bundle, g);
  const auto s1 = canonical_section(bundle, g, other);
  const cplx r1 = s0(2.5) / s1(2.5);
  const cplx r2 = s0({-1.0, 2.0}) / s1({-1.0, 2.0});
  const cplx r3 = s0(0.3) / s1(0.3);
  CHECK(std::abs(r1 - r2) < 1e-9 * std::abs(r1));
  CHECK(std::abs(r1 - r3) < 1e-9 * std::abs(r1));
}

TEST_CASE("exp-Schwarz section is the exponential of the Cauchy transforms") {
  const auto g = sample(kCard, 512);
  const auto s = canonical_section(LineBundle::exp_schwarz(kCard), g);
  for (cplx z : {cplx{0.1, 0.2}, cplx{-0.3, 0.1}, cplx{0.6, -0.4}}) {
    CHECK(std::abs(s(z) - std::exp(cauchy_transform(kCard, g, z))) < 1e-9);
  }
  for (cplx z : {cplx{2.0, 0.5}, cplx{-1.5, 1.5}, cplx{0.2, -2.0}}) {
    CHECK(std::abs(s(z) - std::exp(-cauchy_transform(kCard, g, z))) < 1e-9);
  }
}

TEST_CASE("pole sections paste the pieces of E") {
  const auto g = sample(kCard, 512);
  const cplx we{2.2, 0.7};
  const auto se = canonical_section(LineBundle::schwarz_pole(kCard, we), g);
  const cplx wi{0.3, -0.1};
  const auto si = canonical_section(LineBundle::schwarz_pole(kCard, wi), g);
  for (cplx z : {cplx{0.1, 0.2}, cplx{-0.3, 0.1}, cplx{0.6, -0.4}}) {
    CHECK(std::abs(se(z) - piece_G(kCard, g, z, we)) < 1e-9);
    CHECK(std::abs(si(z) - piece_H(kCard, g, z, wi)) < 1e-9);
  }
  for (cplx z : {cplx{2.0, 0.5}, cplx{-1.5, 1.5}, cplx{0.2, -2.0}}) {
    CHECK(std::abs(se(z) - piece_F(kCard, g, z, we)) < 1e-9);
    CHECK(std::abs(si(z) + piece_Gstar(kCard, g, z, wi)) < 1e-9);
  }
}

TEST_CASE("differential matching on the disk") {
  const auto g = sample(kUnit, 256);
  const SchwarzEvaluator s(kUnit);
  auto one = [](cplx) { return cplx{1.0}; };
  CHECK(verify_m_differential_match([](cplx z) { return z; }, [&](cplx z) { return s.value(z); }, kUnit, g, 0) <
        1e-12);
  CHECK(verify_m_differential_match(one, [&](cplx z) { return s.prime(z); }, kUnit, g, 2) < 1e-12);
  CHECK(verify_m_differential_match(one, [&](cplx z) { return 1.0 / s.tangent(z); }, kUnit, g, 1) < 1e-12);
}

TEST_CASE("coarse grid near a pole never returns a fractional class") {
  const auto g = sample(kCard, 16);
  try {
    const auto c = chern_class_detailed(LineBundle::schwarz_pole(kCard, {0.9, 0.05}), g);
    CHECK(std::abs(c.raw - c.value) < 1e-6);
  } catch (const Error& e) {
    CHECK((e.code() == Errc::BranchUnresolved || e.code() == Errc::NotAnInteger));
  }
}
