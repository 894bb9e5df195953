#include "doctest.h"
#include "oracles.hpp"
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

}  // namespace

TEST_CASE("schwarz_boundary") {
  const auto unit = build_circle(0.0, 1.0);
  CHECK(std::abs(schwarz_boundary(unit, 0.0) - 1.0) < 1e-15);
  CHECK(std::abs(schwarz_boundary(unit, kPi / 2) + kI) < 1e-15);
  const auto card = build_polynomial_curve({0.0, 1.0, 0.3}, 0.7);
  CHECK(std::abs(schwarz_boundary(card, 0.0) - 1.3) < 1e-15);
}

TEST_CASE("schwarz_near closed forms") {
  const auto unit = build_circle(0.0, 1.0);
  CHECK(std::abs(schwarz_near(unit, 0.9) - 1.0 / 0.9) < 1e-13);
  const auto big = build_circle(0.0, 2.0);
  CHECK(std::abs(schwarz_near(big, 2.5) - 1.6) < 1e-13);
  const auto off = build_circle({0.5, -0.25}, 1.5);
  const cplx z{1.9, 0.3};
  CHECK(std::abs(schwarz_near(off, z) - (std::conj(cplx{0.5, -0.25}) + 2.25 / (z - cplx{0.5, -0.25}))) < 1e-12);
  CHECK(code_of([&] { (void)schwarz_near(unit, 0.05); }) == Errc::OutsideAnnulus);
  CHECK(code_of([&] { (void)schwarz_near(unit, 20.0); }) == Errc::OutsideAnnulus);
}

TEST_CASE("schwarz_prime closed forms") {
  const auto unit = build_circle(0.0, 1.0);
  CHECK(std::abs(schwarz_prime(unit, 0.9) + 1.0 / 0.81) < 1e-12);
  const auto big = build_circle(0.0, 2.0);
  CHECK(std::abs(schwarz_prime(big, 2.5) + 4.0 / 6.25) < 1e-12);
  const auto g = sample(unit, 128);
  for (std::size_t j = 0; j < g.n; ++j) {
    const cplx T = unit_tangent(unit, g.t[j]);
    CHECK(std::abs(schwarz_prime(unit, g.z[j]) - 1.0 / (T * T)) < 1e-10);
  }
}

TEST_CASE("boundary invariants on a non-circular curve") {
  const auto card = build_polynomial_curve({0.0, 1.0, 0.3}, 0.7);
  const SchwarzEvaluator s(card);
  const auto g = sample(card, 256);
  for (std::size_t j = 0; j < g.n; ++j) {
    CHECK(std::abs(s.value(g.z[j]) - std::conj(g.z[j])) < 1e-12);
    CHECK(std::abs(schwarz_near(card, g.z[j]) - schwarz_boundary(card, g.t[j])) < 1e-10);
    const cplx T = unit_tangent(card, g.t[j]);
    CHECK(std::abs(s.prime(g.z[j]) - 1.0 / (T * T)) < 1e-10);
    CHECK(std::abs(s.tangent(g.z[j]) - T) < 1e-10);
  }
}

TEST_CASE("reflection is an involution") {
  for (const auto& curve : {build_circle(0.0, 1.0), build_polynomial_curve({0.0, 1.0, 0.3}, 0.7),
                            build_polynomial_curve({0.1, 1.0, 0.1, 0.1}, 0.85)}) {
    const SchwarzEvaluator s(curve);
    for (int i = 0; i < 40; ++i) {
      const double r = 0.88 + 0.006 * i;
      const cplx z = curve.point(std::polar(r, 0.37 * i));
      CHECK(std::abs(s.reflect(s.reflect(z)) - z) < 1e-10);
    }
  }
}

TEST_CASE("schwarz_prime against central differences") {
  const auto card = build_polynomial_curve({0.0, 1.0, 0.3}, 0.7);
  for (int i = 0; i < 16; ++i) {
    const cplx z = card.point(std::polar(0.9 + 0.02 * (i % 5), 0.4 * i));
    const cplx fd = oracle::central_difference([&](cplx x) { return schwarz_near(card, x); }, z, 1e-6);
    const cplx exact = schwarz_prime(card, z);
    CHECK(std::abs(fd - exact) < 1e-6 * std::abs(exact));
  }
}

TEST_CASE("polygon_schwarz edges") {
  const auto square = build_polygon({0.0, 2.0, {2.0, 2.0}, {0.0, 2.0}});
  auto e0 = polygon_schwarz(square, 0);  // real axis
  CHECK(std::abs(e0.alpha - 1.0) < 1e-15);
  CHECK(std::abs(e0.beta) < 1e-15);
  auto e1 = polygon_schwarz(square, 1);  // x = 2
  CHECK(std::abs(e1.alpha + 1.0) < 1e-15);
  CHECK(std::abs(e1.beta - 4.0) < 1e-15);
  const auto tri = build_polygon({0.0, 1.0, {1.0, 1.0}});
  auto diag = polygon_schwarz(tri, 2);  // from 1+i back to 0, along y = x
  CHECK(std::abs(diag.alpha + kI) < 1e-15);
  CHECK(std::abs(diag.beta) < 1e-15);
  // On each edge S(z) = conj(z).
  for (std::size_t e = 0; e < square.size(); ++e) {
    const auto s = polygon_schwarz(square, e);
    const cplx z = square.vertex(e) + 0.3 * square.edge(e);
    CHECK(std::abs(s.alpha * z + s.beta - std::conj(z)) < 1e-14);
  }
  CHECK(code_of([&] { (void)polygon_schwarz(square, 4); }) == Errc::InvalidArgument);
}
