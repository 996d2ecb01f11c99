#include <doctest.h>

#include <cmath>
#include <complex>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "fracrod/errors.hpp"
#include "fracrod/forcing.hpp"

using namespace fracrod;

TEST_SUITE("forcing") {

TEST_CASE("kind names round-trip") {
  for (ForcingKind k : {ForcingKind::none, ForcingKind::exp_saturation, ForcingKind::poly_exp})
    CHECK(forcing_kind_from_string(to_string(k)) == k);
  CHECK_THROWS_AS(forcing_kind_from_string("ramp"), ConfigError);
}

TEST_CASE("validation") {
  ForcingSpec f;
  CHECK_NOTHROW(f.validate());
  f.upsilon0 = -1;
  CHECK_THROWS_AS(f.validate(), ConfigError);
  f = {};
  f.tau = 0;
  CHECK_THROWS_AS(f.validate(), ConfigError);
  f = {};
  f.c = NAN;
  CHECK_THROWS_AS(f.validate(), ConfigError);
}

TEST_CASE("admissibility and extras") {
  ForcingSpec f;
  CHECK_FALSE(f.has_extra());
  CHECK(f.admissible_for_displacement());
  f.kind = ForcingKind::poly_exp;
  CHECK_FALSE(f.has_extra());
  f.c = 0.1;
  CHECK(f.has_extra());
  CHECK(f.admissible_for_displacement());
  f.kind = ForcingKind::exp_saturation;
  CHECK_FALSE(f.admissible_for_displacement());
  f.tau = 4.0;
  CHECK(f.rate() == 0.25);
}

TEST_CASE("time-domain values vanish before the origin") {
  for (ForcingKind k : {ForcingKind::exp_saturation, ForcingKind::poly_exp}) {
    ForcingSpec f{1.0, k, 0.3, 2.0};
    CHECK(f.F(-1.0) == 0.0);
    CHECK(f.F(0.0) == 0.0);
    CHECK(f.F_prime(-1.0) == 0.0);
    // derivative by central difference
    const double t = 1.7, h = 1e-5;
    CHECK(f.F_prime(t) == doctest::Approx((f.F(t + h) - f.F(t - h)) / (2 * h)).epsilon(1e-8));
  }
}

// Laplace transforms against direct numerical integration of F e^{-st}.
TEST_CASE("closed-form transforms") {
  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  for (ForcingKind k : {ForcingKind::exp_saturation, ForcingKind::poly_exp})
    for (std::complex<double> s : {std::complex<double>(2.0, 0.0), std::complex<double>(0.7, 3.0)}) {
      ForcingSpec f{1.0, k, 0.3, 1.5};
      auto re = [&](double t) { return (f.F(t) * std::exp(-s * t)).real(); };
      auto im = [&](double t) { return (f.F(t) * std::exp(-s * t)).imag(); };
      const std::complex<double> num(GK::integrate(re, 0.0, 80.0, 20, 1e-13), GK::integrate(im, 0.0, 80.0, 20, 1e-13));
      const std::complex<double> closed = f.F_laplace(s);
      CHECK(std::abs(closed - num) < 1e-10);
      const std::complex<long double> sl(s.real(), s.imag());
      CHECK(std::abs(std::complex<double>(f.F_laplace(sl)) - closed) < 1e-15);
    }
  ForcingSpec none;
  CHECK(none.F_laplace(std::complex<double>(1.0, 1.0)) == std::complex<double>(0.0));
}

} // TEST_SUITE
