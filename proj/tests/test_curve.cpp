#include "doctest.h"
#include "oracles.hpp"
#include "slb/curve.hpp"
#include "slb/error.hpp"
#include "slb/schwarz.hpp"

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

cplx m0(const ContourGrid& g) {
  cplx acc{0.0};
  for (std::size_t j = 0; j < g.n; ++j) acc += std::conj(g.z[j]) * g.dz[j];
  return acc * g.weight / (2.0 * kPi * kI);
}

}  // namespace

TEST_CASE("build_circle maps") {
  const auto unit = build_circle(0.0, 1.0);
  CHECK(unit.map().degree() == 1);
  CHECK(std::abs(unit.map().coeff(1) - 1.0) == 0.0);
  const auto shifted = build_circle({2.0, 1.0}, 0.5);
  CHECK(std::abs(shifted.point(0.0) - cplx{2.0, 1.0}) < 1e-15);
  CHECK(std::abs(shifted.point(1.0) - cplx{2.5, 1.0}) < 1e-15);
  CHECK(code_of([] { (void)build_circle(0.0, -1.0); }) == Errc::NonPositiveRadius);
  CHECK(code_of([] { (void)build_circle(0.0, 0.0); }) == Errc::NonPositiveRadius);
}

TEST_CASE("build_polynomial_curve validation") {
  CHECK_NOTHROW((void)build_polynomial_curve({0.0, 1.0, 0.3}, 0.9));
  CHECK_NOTHROW((void)build_polynomial_curve({0.0, 1.0}, 0.5));
  CHECK(code_of([] { (void)build_polynomial_curve({0.0, 1.0, 0.6}, 0.8); }) == Errc::CurveNotSimple);
  // phi' vanishes inside the disk although not on the annulus.
  CHECK(code_of([] { (void)build_polynomial_curve({0.0, 1.0, 0.6}, 0.95); }) == Errc::CurveNotSimple);
  CHECK(code_of([] { (void)build_polynomial_curve({1.0}, 0.5); }) == Errc::CurveNotSimple);
  CHECK(code_of([] { (void)build_polynomial_curve({0.0, 1.0}, 1.0); }) == Errc::InvalidArgument);
}

TEST_CASE("polygon validation") {
  CHECK_NOTHROW((void)build_polygon({0.0, 1.0, {1.0, 1.0}, {0.0, 1.0}}));
  CHECK(code_of([] { (void)build_polygon({0.0, 1.0}); }) == Errc::InvalidArgument);
  CHECK(code_of([] { (void)build_polygon({0.0, {0.0, 1.0}, {1.0, 1.0}, 1.0}); }) == Errc::InvalidArgument);
  CHECK(code_of([] { (void)build_polygon({0.0, {1.0, 1.0}, 1.0, {0.0, 1.0}}); }) == Errc::CurveNotSimple);
  CHECK(code_of([] { (void)build_polygon({0.0, 1.0, 1.0, {0.0, 1.0}}); }) == Errc::CurveNotSimple);
}

TEST_CASE("sample unit circle") {
  const auto g = sample(build_circle(0.0, 1.0), 16);
  REQUIRE(g.n == 16);
  for (std::size_t j = 0; j < 16; ++j) {
    const cplx expected = std::polar(1.0, 2.0 * kPi * static_cast<double>(j) / 16.0);
    CHECK(std::abs(g.z[j] - expected) < 1e-15);
    CHECK(std::abs(g.dz[j] - kI * expected) < 1e-15);
  }
  CHECK(g.weight == doctest::Approx(2.0 * kPi / 16.0));
  CHECK(code_of([] { (void)sample(build_circle(0.0, 1.0), 12); }) == Errc::BadNodeCount);
  CHECK(code_of([] { (void)sample(build_circle(0.0, 1.0), 8); }) == Errc::BadNodeCount);
}

TEST_CASE("grid closure and exclusion band") {
  const auto card = build_polynomial_curve({0.0, 1.0, 0.3}, 0.7);
  const auto square = build_polygon({0.0, 1.0, {1.0, 1.0}, {0.0, 1.0}});
  for (const auto& g : {sample(card, 256), sample(square, 256), sample(build_circle({0.3, -0.2}, 2.0), 64)}) {
    cplx sum{0.0};
    double total = 0.0;
    double spacing = 0.0;
    for (std::size_t j = 0; j < g.n; ++j) {
      sum += g.dz[j] * g.weight;
      total += std::abs(g.dz[j]) * g.weight;
      spacing = std::max(spacing, std::abs(g.z[(j + 1) % g.n] - g.z[j]));
    }
    CHECK(std::abs(sum) < 1e-12 * total);
    CHECK(g.exclusion_band == doctest::Approx(5.0 * spacing));
  }
}

TEST_CASE("refinement changes the area moment negligibly") {
  const auto card = build_polynomial_curve({0.0, 1.0, 0.3}, 0.7);
  for (std::size_t n = 64; n <= 1024; n *= 2)
    CHECK(std::abs(m0(sample(card, n)) - m0(sample(card, 2 * n))) < 1e-10);
}

TEST_CASE("trapezoidal error contracts under doubling") {
  const auto card = build_polynomial_curve({0.0, 1.0, 0.3}, 0.7);
  // Singularity just outside the curve slows convergence to a visible rate.
  const cplx p = card.point(1.15);
  auto integral = [&](std::size_t n) {
    const auto g = sample(card, n);
    cplx acc{0.0};
    for (std::size_t j = 0; j < g.n; ++j) acc += std::conj(g.z[j]) / (g.z[j] - p) * g.dz[j];
    return acc * g.weight / (2.0 * kPi * kI);
  };
  const cplx ref = integral(1024);
  double prev = std::abs(integral(16) - ref);
  for (std::size_t n = 32; n <= 128; n *= 2) {
    const double e = std::abs(integral(n) - ref);
    CHECK(e < 0.5 * prev);
    prev = e;
  }
  CHECK(std::abs(m0(sample(card, 64)).real() - oracle::area_over_pi({0.0, 1.0, 0.3})) < 1e-12);
}

TEST_CASE("locate") {
  const auto g = sample(build_circle(0.0, 1.0), 256);
  CHECK(locate(g, 0.0) == Location::Interior);
  CHECK(locate(g, 3.0) == Location::Exterior);
  CHECK(locate(g, 1.0 + 1e-15) == Location::NearBoundary);
  const auto card = sample(build_polynomial_curve({0.0, 1.0, 0.3}, 0.7), 512);
  for (double r : {0.2, 0.5, 0.8}) {
    const double wn = winding_number(card, build_polynomial_curve({0.0, 1.0, 0.3}, 0.7).point(r * kI));
    CHECK(std::abs(wn - 1.0) < 1e-6);
  }
  CHECK(std::abs(winding_number(card, {3.0, 1.0})) < 1e-6);
}

TEST_CASE("unit tangent") {
  const auto unit = build_circle(0.0, 1.0);
  CHECK(std::abs(unit_tangent(unit, 0.0) - kI) < 1e-15);
  CHECK(std::abs(unit_tangent(unit, kPi / 2) + 1.0) < 1e-15);
  const auto g = sample(unit, 64);
  for (std::size_t j = 0; j < 64; ++j) {
    const cplx T = unit_tangent(unit, g.t[j]);
    const cplx sp = -1.0 / (g.z[j] * g.z[j]);
    CHECK(std::abs(sp - 1.0 / (T * T)) < 1e-12);
  }
  const auto card = build_polynomial_curve({0.0, 1.0, 0.3}, 0.7);
  for (std::size_t j = 0; j < 128; ++j) CHECK(std::abs(std::abs(unit_tangent(card, 0.05 * j)) - 1.0) < 1e-14);
  const auto square = build_polygon({0.0, 1.0, {1.0, 1.0}, {0.0, 1.0}});
  CHECK(std::abs(unit_tangent(square, 0.1) - 1.0) < 1e-15);
}

TEST_CASE("adaptive_refine") {
  const AnalyticCurve unit = build_circle(0.0, 1.0);
  const auto g = adaptive_refine(unit, m0, 1e-10);
  CHECK(g.n <= 64);
  const AnalyticCurve card = build_polynomial_curve({0.0, 1.0, 0.3}, 0.7);
  const auto gc = adaptive_refine(card, m0, 1e-10);
  CHECK(std::abs(m0(gc) - 1.18) < 1e-10);

  const GridFunctional probe = [](const ContourGrid& grid) -> cplx {
    if (locate(grid, 1.0 + 1e-9) == Location::NearBoundary)
      throw Error(Errc::NearBoundary, "probe in band");
    return 0.0;
  };
  const Errc c = code_of([&] { (void)adaptive_refine(unit, probe, 1e-10); });
  CHECK((c == Errc::NearBoundary || c == Errc::NoConvergence));
  CHECK(code_of([&] { (void)adaptive_refine(unit, m0, 0.0); }) == Errc::InvalidArgument);
}
