#include <doctest.h>

#include <cmath>
#include <complex>

#include "fracrod/errors.hpp"
#include "fracrod/oracle.hpp"
#include "support.hpp"

using namespace fracrod;
using testing_support::kReference;

namespace {

LaplaceTransform step() {
  return LaplaceTransform([](auto s) { return decltype(s)(1) / s; });
}
LaplaceTransform ramp() {
  return LaplaceTransform([](auto s) { return decltype(s)(1) / (s * s); });
}
LaplaceTransform decay() {
  return LaplaceTransform([](auto s) { return decltype(s)(1) / (s + decltype(s)(1)); });
}
LaplaceTransform sine() {
  return LaplaceTransform([](auto s) { return decltype(s)(1) / (s * s + decltype(s)(1)); });
}

OracleConfig qd() {
  OracleConfig c;
  c.method = OracleMethod::rational_collocation;
  c.nodes = 81;
  return c;
}

} // namespace

TEST_SUITE("oracle") {

TEST_CASE("config and names") {
  CHECK(oracle_method_from_string(to_string(OracleMethod::rational_collocation)) ==
        OracleMethod::rational_collocation);
  CHECK_THROWS_AS(oracle_method_from_string("talbot"), ConfigError);
  OracleConfig c;
  CHECK_NOTHROW(c.validate());
  c.nodes = 10;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = {};
  c.abscissa = -1;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = qd();
  c.nodes = 2001;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  CHECK_THROWS_AS(invert(step(), 0.0), DomainError);
}

TEST_CASE("textbook pairs") {
  for (const OracleConfig& c : {OracleConfig{}, qd()}) {
    CHECK(invert(step(), 1.0, c).value == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(invert(ramp(), 3.0, c).value == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(invert(decay(), 2.0, c).value == doctest::Approx(std::exp(-2.0)).epsilon(1e-8));
    CHECK(invert(sine(), 1.3, c).value == doctest::Approx(std::sin(1.3)).epsilon(1e-8));
  }
}

TEST_CASE("working precision") {
  OracleConfig d;
  d.precision = Precision::double_precision;
  const auto lo = invert(decay(), 2.0, d);
  const auto hi = invert(decay(), 2.0);
  CHECK(std::abs(lo.value - std::exp(-2.0)) <= std::max(lo.error_estimate, 1e-9));
  CHECK(std::abs(hi.value - std::exp(-2.0)) <= std::max(hi.error_estimate, 1e-12));
}

TEST_CASE("doubling nodes stays within the reported error") {
  for (const LaplaceTransform& F : {step(), ramp(), decay(), sine(), image_P(0.5, kReference), image_T(0.25, kReference)}) {
    OracleConfig c;
    c.nodes = 8192;
    const auto r1 = invert(F, 2.0, c);
    c.nodes = 16384;
    const auto r2 = invert(F, 2.0, c);
    CHECK(std::abs(r2.value - r1.value) <= r1.error_estimate);
    CHECK(r2.nodes == 16384);
  }
}

TEST_CASE("abscissa independence") {
  for (const LaplaceTransform& F : {image_P(0.5, kReference), image_T(0.75, kReference), sine()}) {
    OracleConfig c;
    c.abscissa = 0.5;
    const auto r1 = invert(F, 2.0, c);
    c.abscissa = 1.0;
    const auto r2 = invert(F, 2.0, c);
    CHECK(std::abs(r1.value - r2.value) <= r1.error_estimate + r2.error_estimate);
  }
}

TEST_CASE("both methods agree on the rod transforms") {
  for (double t : {1.0, 5.0}) {
    const auto a = invert(image_T(0.25, kReference), t);
    const auto b = invert(image_T(0.25, kReference), t, qd());
    CHECK(std::abs(a.value - b.value) <= 1e-6 * std::abs(a.value));
  }
}

TEST_CASE("image builders") {
  ForcingSpec f{2.0, ForcingKind::poly_exp, 0.1, 1.0};
  const std::complex<double> s(0.8, 1.1);
  const std::complex<double> p = image_P(0.3, kReference)(s);
  const std::complex<double> t = image_T(0.3, kReference)(s);
  const std::complex<double> fs = f.F_laplace(s);
  CHECK(std::abs(image_displacement(0.3, f, kReference)(s) - (2.0 / s + fs) * p) < 1e-14);
  CHECK(std::abs(image_stress(0.3, f, kReference)(s) - s * (2.0 / s + fs) * t) < 1e-14);
  CHECK_THROWS_AS(image_P(1.5, kReference), DomainError);
}

} // TEST_SUITE
