#pragma once

// Precision-generic building blocks of the kernel. Everything here works on
// a point s together with the two logarithms ln(as), ln(bs), so callers can
// choose the branch (principal, or an explicit cut side) before entering.

#include <cmath>
#include <complex>

namespace fracrod::detail {

template <class R>
using cplx = std::complex<R>;

// Neighbourhood of z = 1 inside which ln(z)/(z-1) is summed as a series.
template <class R>
constexpr R removable_radius = R(1e-4);

// e^w - 1 without cancellation for small |w|.
template <class R>
cplx<R> expm1c(cplx<R> w) {
  const R re = w.real(), im = w.imag();
  const R sh = std::sin(im / 2);
  return {std::expm1(re) * std::cos(im) - 2 * sh * sh, std::exp(re) * std::sin(im)};
}

// ln(z)/(z-1) given z and a branch value of ln z. Finite at z = 1.
template <class R>
cplx<R> log_quotient(cplx<R> z, cplx<R> log_z) {
  const cplx<R> w = z - R(1);
  if (std::abs(w) < removable_radius<R>) {
    // ln(1+w)/w = sum (-w)^n/(n+1)
    cplx<R> term(1), sum(0);
    for (int n = 0; n < 10; ++n) {
      sum += term / R(n + 1);
      term *= -w;
    }
    return sum;
  }
  if (std::abs(w) < R(0.5)) {
    // The library log loses relative accuracy as z -> 1; log1p keeps it.
    // Near z = 1 the branch is the principal one.
    const cplx<R> l(std::log1p(w.real() * (R(2) + w.real()) + w.imag() * w.imag()) / R(2),
                    std::atan2(w.imag(), R(1) + w.real()));
    return l / w;
  }
  return log_z / w;
}

// M(s)^2 = [ln(bs)/(bs-1)] / [ln(as)/(as-1)]
template <class R>
cplx<R> M_squared(cplx<R> s, cplx<R> la, cplx<R> lb, R a, R b) {
  return log_quotient<R>(b * s, lb) / log_quotient<R>(a * s, la);
}

template <class R>
cplx<R> M_value(cplx<R> s, cplx<R> la, cplx<R> lb, R a, R b) {
  if (a == b) return cplx<R>(1);
  return std::sqrt(M_squared<R>(s, la, lb, a, b));
}

// D(s) with d/ds[s M(s)] = M(s) D(s).
template <class R>
cplx<R> D_value(cplx<R> s, cplx<R> la, cplx<R> lb, R a, R b) {
  if (a == b) return cplx<R>(1);
  const R lba = std::log(b / a);
  return R(1) - lba / (R(2) * la * lb) + (b - a) * s / (R(2) * (a * s - R(1)) * (b * s - R(1)));
}

// sinh(xz)/sinh(z), even in z.
template <class R>
cplx<R> sinh_ratio(R x, cplx<R> z) {
  if (x == R(0)) return cplx<R>(0);
  if (x == R(1)) return cplx<R>(1);
  if (std::abs(z) < R(1)) return std::sinh(x * z) / std::sinh(z);
  if (z.real() < 0) z = -z;
  return std::exp(-(R(1) - x) * z) * expm1c<R>(-R(2) * x * z) / expm1c<R>(-R(2) * z);
}

// cosh(xz)/sinh(z), odd in z.
template <class R>
cplx<R> cosh_ratio(R x, cplx<R> z) {
  if (std::abs(z) < R(1)) return std::cosh(x * z) / std::sinh(z);
  R sign = 1;
  if (z.real() < 0) {
    z = -z;
    sign = -1;
  }
  return sign * std::exp(-(R(1) - x) * z) * (R(1) + std::exp(-R(2) * x * z)) / -expm1c<R>(-R(2) * z);
}

// coth(z), odd in z.
template <class R>
cplx<R> coth_safe(cplx<R> z) {
  if (std::abs(z) < R(1)) return std::cosh(z) / std::sinh(z);
  R sign = 1;
  if (z.real() < 0) {
    z = -z;
    sign = -1;
  }
  return sign * (R(1) + std::exp(-R(2) * z)) / -expm1c<R>(-R(2) * z);
}

// |sinh z| without overflow, returned as log so huge arguments stay finite.
template <class R>
R log_abs_sinh(cplx<R> z) {
  if (std::abs(z) < R(1)) return std::log(std::abs(std::sinh(z)));
  if (z.real() < 0) z = -z;
  return z.real() + std::log(std::abs(expm1c<R>(-R(2) * z))) - std::log(R(2));
}

} // namespace fracrod::detail
