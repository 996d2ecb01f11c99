#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "fracrod/errors.hpp"
#include "fracrod/poles.hpp"
#include "mp_reference.hpp"
#include "support.hpp"

using namespace fracrod;
using testing_support::kReference;
using testing_support::rel_diff;

namespace {

constexpr double pi = std::numbers::pi;

// s M(s) - i n pi straight from the formula, principal branches, no series.
complex g_naive(complex s, int n, double a, double b) {
  const complex m2 = std::log(b * s) / std::log(a * s) * (a * s - 1.0) / (b * s - 1.0);
  return s * std::sqrt(m2) - complex(0.0, n * pi);
}

struct Box {
  double x0, x1, y0, y1;
};

// Change of arg g along a segment, refined until consecutive samples turn
// by less than half a radian.
double arg_change(complex s0, complex s1, complex g0, complex g1, int n, int depth) {
  const double d = std::arg(g1 / g0);
  if (std::abs(d) < 0.5 || depth > 40) return d;
  const complex sm = 0.5 * (s0 + s1);
  const complex gm = g_naive(sm, n, 0.045, 0.5);
  return arg_change(s0, sm, g0, gm, n, depth + 1) + arg_change(sm, s1, gm, g1, n, depth + 1);
}

int winding(const Box& b, int n) {
  const complex c[5] = {{b.x0, b.y0}, {b.x1, b.y0}, {b.x1, b.y1}, {b.x0, b.y1}, {b.x0, b.y0}};
  double total = 0.0;
  for (int e = 0; e < 4; ++e) {
    const int k = 64;
    for (int i = 0; i < k; ++i) {
      const complex s0 = c[e] + (c[e + 1] - c[e]) * (double(i) / k);
      const complex s1 = c[e] + (c[e + 1] - c[e]) * (double(i + 1) / k);
      total += arg_change(s0, s1, g_naive(s0, n, 0.045, 0.5), g_naive(s1, n, 0.045, 0.5), n, 0);
    }
  }
  return static_cast<int>(std::lround(total / (2 * pi)));
}

// Two-dimensional bisection: keep the quadrant whose boundary winds once.
complex bisect_root(Box b, int n) {
  while (b.x1 - b.x0 > 1e-10 || b.y1 - b.y0 > 1e-10) {
    const double xm = 0.5 * (b.x0 + b.x1), ym = 0.5 * (b.y0 + b.y1);
    const Box q[4] = {{b.x0, xm, b.y0, ym}, {xm, b.x1, b.y0, ym}, {b.x0, xm, ym, b.y1}, {xm, b.x1, ym, b.y1}};
    bool found = false;
    for (const Box& c : q)
      if (winding(c, n) == 1) {
        b = c;
        found = true;
        break;
      }
    // A root on a shared edge: nudge the split point and retry.
    if (!found) {
      const double w = b.x1 - b.x0, h = b.y1 - b.y0;
      b = {b.x0 - 1e-3 * w, b.x1 + 1.7e-3 * w, b.y0 - 1.3e-3 * h, b.y1 + 1e-3 * h};
    }
  }
  return {0.5 * (b.x0 + b.x1), 0.5 * (b.y0 + b.y1)};
}

// d/ds[s M(s)] at 50 digits by a central difference with a tiny step.
mpref::cplx mp_dsM(const mpref::cplx& s, double a, double b) {
  auto sm = [&](const mpref::cplx& z) {
    const mpref::cplx la = log(mpref::real(a) * z), lb = log(mpref::real(b) * z);
    return z * sqrt(lb / la * (mpref::real(a) * z - 1) / (mpref::real(b) * z - 1));
  };
  const mpref::real h("1e-18");
  return (sm(s + h) - sm(s - h)) / (2 * h);
}

const PoleSet& reference_poles() {
  static const PoleSet set = build_pole_set(400, kReference);
  return set;
}

} // namespace

TEST_SUITE("poles") {

TEST_CASE("asymptotic guess") {
  const MaterialParams h(0.1, 0.1);
  CHECK(asymptotic_guess(3, h) == complex(0.0, 3 * pi));
  const complex g = asymptotic_guess(10, kReference);
  CHECK(g.imag() == doctest::Approx(104.72).epsilon(1e-4));
  CHECK(g.real() < 0.0);
  CHECK_THROWS_AS(asymptotic_guess(0, kReference), DomainError);
}

TEST_CASE("Hooke poles are exact") {
  const MaterialParams h(0.1, 0.1);
  const Pole p = refine_pole(complex(0.0, 5 * pi), 5, h);
  CHECK(std::abs(p.location - complex(0.0, 5 * pi)) < 1e-14 * 5 * pi);
  CHECK(rel_diff(p.derivative_at_pole, complex(-1.0)) < 1e-14);
  CHECK(p.simple);

  const PoleSet set = build_pole_set(400, h);
  REQUIRE(set.size() == 400);
  for (const Pole& q : set.poles()) {
    CHECK(q.location == complex(0.0, q.n * pi));
    CHECK(q.simple);
  }
}

TEST_CASE("first pole agrees with a winding-number bisection") {
  const Pole p = refine_pole(asymptotic_guess(1, kReference), 1, kReference);
  CHECK(p.residual < 1e-12);
  CHECK(p.location.real() < 0.0);
  CHECK(p.simple);

  const complex g = asymptotic_guess(1, kReference);
  const double r = std::abs(g);
  const Box box{g.real() - r, g.real() + r, 0.05 * r, g.imag() + r};
  REQUIRE(winding(box, 1) == 1);
  const complex root = bisect_root(box, 1);
  CHECK(std::abs(root - p.location) < 1e-9 * std::abs(root));
}

TEST_CASE("refine_pole reports failures") {
  PoleOptions one;
  one.max_iterations = 1;
  CHECK_THROWS_AS(refine_pole(complex(300.0, 2.0), 7, kReference, one), NumericalError);
  CHECK_THROWS_AS(refine_pole(complex(1.0, 1.0), 0, kReference), DomainError);
}

TEST_CASE("reference pole set invariants") {
  const PoleSet& set = reference_poles();
  REQUIRE(set.size() == 400);
  double prev_im = 0.0;
  for (const Pole& p : set.poles()) {
    CHECK(p.residual < 1e-12);
    CHECK(p.location.real() < 0.0);
    CHECK(p.location.imag() > prev_im);
    CHECK(p.simple);
    CHECK(std::abs(p.derivative_at_pole) > kSimplicityFloor);
    prev_im = p.location.imag();
  }
  CHECK(set.at(1).location == set.poles().front().location);
  CHECK_THROWS_AS(set.at(0), DomainError);
  CHECK_THROWS_AS(set.at(401), DomainError);
  const PoleSet head = set.truncated(10);
  CHECK(head.size() == 10);
  CHECK(head.at(10).location == set.at(10).location);
  CHECK_THROWS_AS(set.truncated(401), DomainError);
}

TEST_CASE("stored derivative is d/ds sinh(sM) at the root, at 50 digits") {
  for (int n : {1, 2, 17, 250}) {
    const Pole& p = reference_poles().at(n);
    const mpref::cplx s(p.location.real(), p.location.imag());
    const mpref::cplx m = mpref::M(mpref::from(p.location), 0.045, 0.5);
    const complex want = mpref::to_double(cosh(s * m) * mp_dsM(s, 0.045, 0.5));
    CHECK(rel_diff(p.derivative_at_pole, want) < 1e-10);
  }
}

TEST_CASE("serial and parallel builds are identical") {
  const PoleSet ser = build_pole_set(120, kReference, {}, Execution::serial);
  const PoleSet par = build_pole_set(120, kReference, {}, Execution::parallel);
  for (int n = 1; n <= 120; ++n) {
    CHECK(ser.at(n).location == par.at(n).location);
    CHECK(ser.at(n).residual == par.at(n).residual);
    CHECK(ser.at(n).seed == par.at(n).seed);
  }
}

TEST_CASE("pole set construction validates its input") {
  const Pole p1 = reference_poles().at(1), p2 = reference_poles().at(2);
  CHECK_THROWS_AS(PoleSet(kReference, 1e-12, {p2, p1}), NumericalError);
  Pole bad = p1;
  bad.residual = 1.0;
  CHECK_THROWS_AS(PoleSet(kReference, 1e-12, {bad}), NumericalError);
  bad = p1;
  bad.location = std::conj(bad.location);
  CHECK_THROWS_AS(PoleSet(kReference, 1e-12, {bad}), NumericalError);
  CHECK_THROWS_AS(build_pole_set(0, kReference), DomainError);
}

// The imaginary parts approach sqrt(b/a) n pi only logarithmically; what can
// be checked is that the relative gap shrinks steadily with n.
TEST_CASE("large-n poles drift toward the leading asymptotics") {
  const PoleSet& set = reference_poles();
  const double k = std::sqrt(kReference.b() / kReference.a());
  double prev_ratio = 0.0, prev_gap = INFINITY;
  for (int n = 25; n <= 400; n += 25) {
    const complex s = set.at(n).location;
    const double ratio = s.imag() / (k * n * pi);
    const double gap = std::abs(s - asymptotic_guess(n, kReference)) / std::abs(s);
    CHECK(ratio < 1.0);
    CHECK(ratio > prev_ratio);
    CHECK(gap < prev_gap);
    prev_ratio = ratio;
    prev_gap = gap;
  }
}

TEST_CASE("residue forms agree") {
  const PoleSet& set = reference_poles();
  const Pole& p1 = set.at(1);
  CHECK(rel_diff(residue_P(0.5, p1, 1.0, kReference), residue_P_quotient(0.5, p1, 1.0, kReference)) < 1e-8);
  // Where n x is an integer one factor vanishes, so compare against the
  // size of the x-independent part instead of the value itself.
  for (int n : {1, 2, 3, 10, 57, 200, 400})
    for (double x : {0.1, 0.37, 0.5, 0.9}) {
      const Pole& p = set.at(n);
      const double scaleT = std::abs(residue_T(0.0, p, 0.7, kReference));
      const double scaleP = scaleT * n * pi / std::abs(p.location);
      CHECK(std::abs(residue_P(x, p, 0.7, kReference) - residue_P_quotient(x, p, 0.7, kReference)) < 1e-8 * scaleP);
      CHECK(std::abs(residue_T(x, p, 0.7, kReference) - residue_T_quotient(x, p, 0.7, kReference)) < 1e-8 * scaleT);
    }
}

TEST_CASE("residue special values") {
  const PoleSet& set = reference_poles();
  // odd n only, so that sin(n pi / 2) = +-1 gives the scale
  for (int n = 1; n <= 400; n += 38) {
    const Pole& p = set.at(n);
    CHECK(residue_P(0.0, p, 1.0, kReference) == complex(0.0));
    const double scale = std::abs(residue_P(0.5, p, 1.0, kReference)) * n;
    CHECK(std::abs(residue_P(1.0, p, 1.0, kReference)) <= 1e-13 * scale);
  }
  const MaterialParams h(0.2, 0.2);
  const PoleSet hs = build_pole_set(6, h);
  for (const Pole& p : hs.poles())
    CHECK(rel_diff(residue_T(0.0, p, 0.0, h), complex(p.n % 2 == 0 ? 1.0 : -1.0)) < 1e-14);
}

// At n = 2, x = 0.75 the numerator cos(n pi x) vanishes, so the comparison is
// scaled by the x = 0 residue.
TEST_CASE("residues against 50 digits") {
  const double t = 2.0;
  for (int n : {1, 2, 9})
    for (double x : {0.0, 0.37, 0.75}) {
      const Pole& p = reference_poles().at(n);
      const mpref::cplx s(p.location.real(), p.location.imag());
      const mpref::cplx m = mpref::M(mpref::from(p.location), 0.045, 0.5);
      const mpref::cplx denom = cosh(s * m) * mp_dsM(s, 0.045, 0.5);
      const mpref::cplx e = exp(s * mpref::real(t));
      const complex wantT = mpref::to_double(cosh(mpref::real(x) * s * m) * e / (m * denom));
      const complex wantP = mpref::to_double(sinh(mpref::real(x) * s * m) * e / denom);
      const double scale = std::abs(mpref::to_double(e / (m * denom)));
      CHECK(std::abs(residue_T(x, p, t, kReference) - wantT) < 1e-10 * scale);
      CHECK(std::abs(residue_P(x, p, t, kReference) - wantP) < 1e-10 * scale * std::abs(p.location));
    }
}

TEST_CASE("conjugate partner contributes the conjugate residue") {
  // Residue at the lower pole from the quotient formula written out directly.
  for (int n : {1, 5, 40}) {
    const Pole& p = reference_poles().at(n);
    const complex sl = std::conj(p.location);
    const mpref::cplx s(sl.real(), sl.imag());
    const mpref::cplx m = mpref::M(mpref::from(sl), 0.045, 0.5);
    const mpref::cplx lower =
        cosh(mpref::real(0.37) * s * m) * exp(s * mpref::real(1.5)) / (m * cosh(s * m) * mp_dsM(s, 0.045, 0.5));
    const complex upper = residue_T(0.37, p, 1.5, kReference);
    const complex total = upper + mpref::to_double(lower);
    CHECK(std::abs(total.imag()) <= 1e-10 * std::abs(upper));
    CHECK(std::abs(total.real() - pair_sum(upper)) <= 1e-10 * std::abs(upper));
  }
}

TEST_CASE("pair_sum") {
  CHECK(pair_sum(complex(0.0, 3.0)) == 0.0);
  CHECK(pair_sum(complex(1.5, 0.0)) == 3.0);
  const complex r(0.7, -2.1);
  CHECK(pair_sum(r) == (r + std::conj(r)).real());
}

TEST_CASE("non-simple poles and bad x are refused") {
  Pole p = reference_poles().at(3);
  CHECK_THROWS_AS(residue_P(1.2, p, 1.0, kReference), DomainError);
  p.simple = false;
  CHECK_THROWS_AS(residue_P(0.5, p, 1.0, kReference), DomainError);
  CHECK_THROWS_AS(residue_T(0.5, p, 1.0, kReference), DomainError);
  CHECK_THROWS_AS(residue_P_quotient(0.5, p, 1.0, kReference), DomainError);
  CHECK_THROWS_AS(residue_T_quotient(0.5, p, 1.0, kReference), DomainError);
}

// Least-squares fit of ln|term_n| = ln K - C t sqrt(n); the fitted rate must be
// positive and the envelope through the worst point must dominate every term.
TEST_CASE("residue pair sums decay in n") {
  const PoleSet& set = reference_poles();
  for (double t : {0.5, 1.0, 3.0}) {
    std::vector<double> u, v;
    for (int n = 1; n <= 400; ++n) {
      const double term = std::abs(pair_sum(residue_P(0.3, set.at(n), t, kReference)));
      if (term == 0.0) continue;
      u.push_back(t * std::sqrt(double(n)));
      v.push_back(std::log(term));
    }
    const double m = double(u.size());
    double su = 0, sv = 0, suu = 0, suv = 0;
    for (std::size_t i = 0; i < u.size(); ++i) {
      su += u[i];
      sv += v[i];
      suu += u[i] * u[i];
      suv += u[i] * v[i];
    }
    const double C = -(m * suv - su * sv) / (m * suu - su * su);
    CHECK(C > 0.0);
    double lnK = -INFINITY;
    for (std::size_t i = 0; i < u.size(); ++i) lnK = std::max(lnK, v[i] + C * u[i]);
    for (std::size_t i = 0; i < u.size(); ++i) CHECK(v[i] <= lnK - C * u[i] + 1e-12);
    CHECK(std::isfinite(lnK));
  }
}

} // TEST_SUITE
