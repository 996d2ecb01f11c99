#include "fracrod/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "fracrod/detail/kernel_core.hpp"
#include "fracrod/errors.hpp"

namespace fracrod {

std::string to_string(OracleMethod m) {
  return m == OracleMethod::bromwich_trapezoid ? "bromwich_trapezoid" : "rational_collocation";
}

OracleMethod oracle_method_from_string(const std::string& name) {
  if (name == "bromwich_trapezoid") return OracleMethod::bromwich_trapezoid;
  if (name == "rational_collocation") return OracleMethod::rational_collocation;
  throw ConfigError("oracle.method: unknown method '" + name + "'");
}

void OracleConfig::validate() const {
  if (!(abscissa >= 0.0) || !std::isfinite(abscissa)) throw ConfigError("oracle.abscissa must be >= 0 (0 = automatic)");
  if (method == OracleMethod::bromwich_trapezoid && nodes < 64) throw ConfigError("oracle.nodes must be >= 64");
  if (method == OracleMethod::rational_collocation && (nodes < 9 || nodes > 1001))
    throw ConfigError("oracle.nodes must lie in [9, 1001] for rational_collocation");
}

namespace {

// exp(-2 c T) = e^{-32} bounds the aliasing from the periodic extension.
constexpr double kAliasExponent = 16.0;

struct Line {
  double c;
  double T; // half period
};

Line choose_line(double t, const OracleConfig& cfg) {
  Line l;
  l.T = 2.0 * t;
  if (cfg.abscissa > 0.0) {
    l.c = cfg.abscissa;
    l.T = std::max(l.T, kAliasExponent / l.c);
  } else {
    l.c = kAliasExponent / l.T;
  }
  return l;
}

template <class R>
std::vector<std::complex<R>> line_values(const LaplaceTransform& F, const Line& l, int count) {
  std::vector<std::complex<R>> a(static_cast<std::size_t>(count));
  const R c = static_cast<R>(l.c);
  const R w = std::numbers::pi_v<R> / static_cast<R>(l.T);
  for (int k = 0; k < count; ++k) {
    const std::complex<R> v = F(std::complex<R>(c, w * k));
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw NumericalError("transform is not finite on the inversion line");
    a[static_cast<std::size_t>(k)] = v;
  }
  a[0] /= R(2);
  return a;
}

// Wynn epsilon on a run of partial sums; returns the last even-column entry.
template <class R>
std::complex<R> wynn(std::vector<std::complex<R>> s) {
  const std::size_t n = s.size();
  std::vector<std::complex<R>> prev(n + 1, std::complex<R>(0));
  std::complex<R> best = s.back();
  for (std::size_t k = 1; k < n; ++k) {
    std::vector<std::complex<R>> next(n - k);
    for (std::size_t j = 0; j + k < n; ++j) {
      const std::complex<R> diff = s[j + 1] - s[j];
      if (std::abs(diff) == R(0)) return (k - 1) % 2 == 0 ? s[j] : best;
      next[j] = prev[j + 1] + R(1) / diff;
    }
    prev.assign(s.begin(), s.end());
    s = std::move(next);
    if (k % 2 == 0 && !s.empty()) best = s.back();
  }
  return best;
}

template <class R>
double trapezoid_sum(const std::vector<std::complex<R>>& a, int count, const Line& l, double t) {
  const R theta = std::numbers::pi_v<R> * static_cast<R>(t / l.T);
  constexpr int kRun = 25;
  std::vector<std::complex<R>> partial;
  partial.reserve(kRun);
  std::complex<R> sum(0);
  for (int k = 0; k < count; ++k) {
    sum += a[static_cast<std::size_t>(k)] * std::polar(R(1), theta * static_cast<R>(k));
    if (k >= count - kRun) partial.push_back(sum);
  }
  const std::complex<R> acc = wynn<R>(partial);
  return static_cast<double>(std::exp(static_cast<R>(l.c * t)) / static_cast<R>(l.T) * acc.real());
}

template <class R>
OracleResult trapezoid(const LaplaceTransform& F, double t, const OracleConfig& cfg) {
  const Line l = choose_line(t, cfg);
  const auto a = line_values<R>(F, l, cfg.nodes);
  OracleResult r;
  r.value = trapezoid_sum<R>(a, cfg.nodes, l, t);
  const double coarse = trapezoid_sum<R>(a, cfg.nodes / 2, l, t);
  // rounding in the sum is amplified by e^{ct}
  long double mass = 0;
  for (const auto& v : a) mass += std::abs(v);
  const double floor = std::exp(l.c * t) / l.T * static_cast<double>(mass) * std::numeric_limits<R>::epsilon() +
                       std::numeric_limits<double>::epsilon() * std::abs(r.value);
  // first image of the periodic extension, f(t + 2T) e^{-2cT}, allowing f
  // to grow linearly
  const double alias = std::exp(-2.0 * l.c * l.T) * std::max(1.0, std::abs(r.value)) * (1.0 + 2.0 * l.T / t);
  r.error_estimate = std::abs(r.value - coarse) + floor + alias;
  r.nodes = cfg.nodes;
  return r;
}

// Continued fraction from the quotient-difference table of the power
// series sum a_k z^k, with the accelerated remainder of the last level.
template <class R>
double qd_sum(const std::vector<std::complex<R>>& coeff, int M, const Line& l, double t) {
  using C = std::complex<R>;
  const int n2 = 2 * M;
  std::vector<std::vector<C>> e(static_cast<std::size_t>(n2 + 1), std::vector<C>(static_cast<std::size_t>(M + 1)));
  std::vector<std::vector<C>> q(static_cast<std::size_t>(n2 + 1), std::vector<C>(static_cast<std::size_t>(M + 1)));
  for (int i = 0; i < n2; ++i) q[i][1] = coeff[static_cast<std::size_t>(i + 1)] / coeff[static_cast<std::size_t>(i)];
  for (int r = 1; r <= M; ++r) {
    for (int i = 0; i <= n2 - 2 * r; ++i) e[i][r] = q[i + 1][r] - q[i][r] + e[i + 1][r - 1];
    if (r < M)
      for (int i = 0; i <= n2 - 2 * r - 1; ++i) q[i][r + 1] = q[i + 1][r] * e[i + 1][r] / e[i][r];
  }
  std::vector<C> d(static_cast<std::size_t>(n2 + 1));
  d[0] = coeff[0];
  for (int m = 1; m <= M; ++m) {
    d[static_cast<std::size_t>(2 * m - 1)] = -q[0][m];
    d[static_cast<std::size_t>(2 * m)] = -e[0][m];
  }
  const R theta = std::numbers::pi_v<R> * static_cast<R>(t / l.T);
  const C z = std::polar(R(1), theta);
  std::vector<C> A(static_cast<std::size_t>(n2 + 2)), B(static_cast<std::size_t>(n2 + 2));
  A[0] = C(0);
  B[0] = C(1);
  A[1] = d[0];
  B[1] = C(1);
  for (int n = 2; n <= n2; ++n) {
    const C dz = d[static_cast<std::size_t>(n - 1)] * z;
    A[n] = A[n - 1] + dz * A[n - 2];
    B[n] = B[n - 1] + dz * B[n - 2];
  }
  const C h = R(0.5) * (R(1) + z * (d[n2 - 1] - d[n2]));
  const C rem = -h * (R(1) - std::sqrt(R(1) + z * d[n2] / (h * h)));
  const C An = A[n2] + rem * A[n2 - 1];
  const C Bn = B[n2] + rem * B[n2 - 1];
  return static_cast<double>(std::exp(static_cast<R>(l.c * t)) / static_cast<R>(l.T) * (An / Bn).real());
}

template <class R>
OracleResult collocation(const LaplaceTransform& F, double t, const OracleConfig& cfg) {
  const Line l = choose_line(t, cfg);
  const int M = (cfg.nodes - 1) / 2;
  const auto a = line_values<R>(F, l, 2 * M + 1);
  OracleResult r;
  r.value = qd_sum<R>(a, M, l, t);
  const double coarse = qd_sum<R>(a, M / 2, l, t);
  r.error_estimate = std::abs(r.value - coarse);
  r.nodes = 2 * M + 1;
  if (!std::isfinite(r.value)) throw NumericalError("continued-fraction inversion broke down");
  return r;
}

} // namespace

OracleResult invert(const LaplaceTransform& F, double t, const OracleConfig& cfg) {
  cfg.validate();
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("inversion needs finite t > 0");
  const bool ext = cfg.precision == Precision::extended;
  if (cfg.method == OracleMethod::bromwich_trapezoid)
    return ext ? trapezoid<long double>(F, t, cfg) : trapezoid<double>(F, t, cfg);
  return ext ? collocation<long double>(F, t, cfg) : collocation<double>(F, t, cfg);
}

namespace {

template <class R>
std::complex<R> kernel_M(std::complex<R> s, R a, R b) {
  return detail::M_value<R>(s, std::log(a * s), std::log(b * s), a, b);
}

void check_x(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("x must lie in [0, 1]");
}

} // namespace

LaplaceTransform image_P(double x, const MaterialParams& params) {
  check_x(x);
  const double a = params.a(), b = params.b();
  return LaplaceTransform([=](auto s) {
    using R = typename decltype(s)::value_type;
    const auto M = kernel_M<R>(s, R(a), R(b));
    return detail::sinh_ratio<R>(R(x), s * M);
  });
}

LaplaceTransform image_T(double x, const MaterialParams& params) {
  check_x(x);
  const double a = params.a(), b = params.b();
  return LaplaceTransform([=](auto s) {
    using R = typename decltype(s)::value_type;
    const auto M = kernel_M<R>(s, R(a), R(b));
    return detail::cosh_ratio<R>(R(x), s * M) / M;
  });
}

LaplaceTransform image_displacement(double x, const ForcingSpec& forcing, const MaterialParams& params) {
  check_x(x);
  const double a = params.a(), b = params.b();
  return LaplaceTransform([=](auto s) {
    using R = typename decltype(s)::value_type;
    const auto M = kernel_M<R>(s, R(a), R(b));
    const auto U = R(forcing.upsilon0) / s + forcing.F_laplace<R>(s);
    return U * detail::sinh_ratio<R>(R(x), s * M);
  });
}

LaplaceTransform image_stress(double x, const ForcingSpec& forcing, const MaterialParams& params) {
  check_x(x);
  const double a = params.a(), b = params.b();
  return LaplaceTransform([=](auto s) {
    using R = typename decltype(s)::value_type;
    const auto M = kernel_M<R>(s, R(a), R(b));
    const auto sU = R(forcing.upsilon0) + s * forcing.F_laplace<R>(s);
    return sU * detail::cosh_ratio<R>(R(x), s * M) / M;
  });
}

} // namespace fracrod
