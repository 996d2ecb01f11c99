#include "fracrod/poles.hpp"

#include <cmath>
#include <numbers>
#include <optional>
#include <string>

#include "fracrod/detail/kernel_core.hpp"
#include "fracrod/errors.hpp"

namespace fracrod {

namespace {

using ld = long double;
using cld = std::complex<ld>;

constexpr ld kPi = std::numbers::pi_v<ld>;

struct Eval {
  cld M, D, g;
};

// Points visited by the iteration stay in the open upper half plane, where
// the principal logarithm is the right branch.
Eval eval_g(cld s, int n, ld a, ld b) {
  const cld la = std::log(a * s), lb = std::log(b * s);
  Eval e;
  e.M = detail::M_value<ld>(s, la, lb, a, b);
  e.D = detail::D_value<ld>(s, la, lb, a, b);
  e.g = s * e.M - cld(0, n * kPi);
  return e;
}

double sign_n(int n) { return n % 2 == 0 ? 1.0 : -1.0; }

std::optional<Pole> try_refine(complex guess, int n, const MaterialParams& params,
                               const PoleOptions& opts, std::string* why) {
  const ld a = params.a(), b = params.b();
  cld s(guess.real(), guess.imag());
  if (!(s.imag() > 0)) {
    if (why) *why = "seed not in the upper half plane";
    return std::nullopt;
  }
  Eval e = eval_g(s, n, a, b);
  bool converged = false;
  int it = 0;
  for (; it < opts.max_iterations; ++it) {
    const cld deriv = e.M * e.D;
    if (std::abs(deriv) == 0 || !std::isfinite(std::abs(e.g))) break;
    const cld step = e.g / deriv;
    ld lambda = 1;
    bool accepted = false;
    cld s_new;
    Eval e_new;
    for (int h = 0; h < 40; ++h, lambda /= 2) {
      s_new = s - lambda * step;
      if (!(s_new.imag() > 0)) continue;
      e_new = eval_g(s_new, n, a, b);
      if (std::abs(e_new.g) <= std::abs(e.g) || std::abs(lambda * step) < 1e-15L * std::abs(s)) {
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
    const ld moved = std::abs(s_new - s);
    s = s_new;
    e = e_new;
    if (moved <= 1e-17L * std::abs(s)) {
      converged = true;
      ++it;
      break;
    }
  }
  if (!converged) {
    if (why) *why = "Newton iteration did not converge";
    return std::nullopt;
  }

  Pole p;
  p.n = n;
  p.location = complex(static_cast<double>(s.real()), static_cast<double>(s.imag()));
  p.iterations = it;
  // residual and derivative at the stored (rounded) location
  const cld sd(p.location.real(), p.location.imag());
  const Eval at = eval_g(sd, n, a, b);
  const cld z = sd * at.M;
  p.residual = static_cast<double>(std::abs(std::sinh(z)));
  const cld fprime = at.M * at.D * std::cosh(z);
  p.derivative_at_pole = complex(static_cast<double>(fprime.real()), static_cast<double>(fprime.imag()));
  p.simple = std::abs(p.derivative_at_pole) > kSimplicityFloor;
  if (!(p.location.imag() > 0.0)) {
    if (why) *why = "root escaped to the cut";
    return std::nullopt;
  }
  if (!(p.residual < opts.tol)) {
    if (why) *why = "residual " + std::to_string(p.residual) + " above tolerance";
    return std::nullopt;
  }
  return p;
}

// s <- i n pi / M(s), started on the imaginary axis at the large-n height.
complex fixed_point_seed(int n, const MaterialParams& params) {
  const ld a = params.a(), b = params.b();
  cld s(0, std::sqrt(b / a) * n * kPi);
  for (int i = 0; i < 200; ++i) {
    const cld la = std::log(a * s), lb = std::log(b * s);
    const cld next = cld(0, n * kPi) / detail::M_value<ld>(s, la, lb, a, b);
    if (!(next.imag() > 0)) break;
    const ld moved = std::abs(next - s);
    s = next;
    if (moved < 1e-12L * std::abs(s)) break;
  }
  return complex(static_cast<double>(s.real()), static_cast<double>(s.imag()));
}

Pole exact_hooke_pole(int n) {
  Pole p;
  p.n = n;
  p.location = complex(0.0, n * std::numbers::pi);
  p.derivative_at_pole = complex(sign_n(n), 0.0);
  p.residual = 0.0;
  p.simple = true;
  p.seed = PoleSeed::exact;
  p.iterations = 0;
  return p;
}

std::optional<Pole> refine_independent(int n, const MaterialParams& params, const PoleOptions& opts) {
  if (auto p = try_refine(asymptotic_guess(n, params), n, params, opts, nullptr)) {
    p->seed = PoleSeed::asymptotic;
    return p;
  }
  if (auto p = try_refine(fixed_point_seed(n, params), n, params, opts, nullptr)) {
    p->seed = PoleSeed::fixed_point;
    return p;
  }
  return std::nullopt;
}

} // namespace

PoleSet::PoleSet(MaterialParams params, double tol, std::vector<Pole> poles)
    : params_(params), tol_(tol), poles_(std::move(poles)) {
  for (std::size_t i = 0; i < poles_.size(); ++i) {
    const Pole& p = poles_[i];
    if (p.n != static_cast<int>(i + 1)) throw NumericalError("pole set indices must run 1..N");
    if (!(p.location.imag() > 0.0)) throw NumericalError("pole " + std::to_string(p.n) + " not in upper half plane");
    if (!(p.residual < tol_)) throw NumericalError("pole " + std::to_string(p.n) + " residual above tolerance");
    if (i > 0 && !(p.location.imag() > poles_[i - 1].location.imag()))
      throw NumericalError("pole " + std::to_string(p.n) + " breaks the Im ordering");
  }
}

const Pole& PoleSet::at(int n) const {
  if (n < 1 || static_cast<std::size_t>(n) > poles_.size()) throw DomainError("pole index out of range");
  return poles_[static_cast<std::size_t>(n - 1)];
}

PoleSet PoleSet::truncated(std::size_t N) const {
  if (N > poles_.size()) throw DomainError("cannot truncate a pole set to more poles than it holds");
  return PoleSet(params_, tol_, std::vector<Pole>(poles_.begin(), poles_.begin() + static_cast<std::ptrdiff_t>(N)));
}

complex asymptotic_guess(int n, const MaterialParams& params) {
  if (n < 1) throw DomainError("pole index must be positive");
  const double a = params.a(), b = params.b();
  const double R = std::sqrt(b / a) * n * std::numbers::pi;
  if (params.is_hookean()) return complex(0.0, n * std::numbers::pi);
  const double re = -(std::numbers::pi / 4 * std::log(b / a) * R) /
                    (std::log(std::sqrt(a * b) * n * std::numbers::pi) * std::log(b * R));
  return complex(re, R);
}

Pole refine_pole(complex guess, int n, const MaterialParams& params, const PoleOptions& opts) {
  if (n < 1) throw DomainError("pole index must be positive");
  if (params.is_hookean()) return exact_hooke_pole(n);
  std::string why;
  auto p = try_refine(guess, n, params, opts, &why);
  if (!p) throw NumericalError("pole " + std::to_string(n) + ": " + why);
  return *p;
}

PoleSet build_pole_set(int N, const MaterialParams& params, const PoleOptions& opts, Execution exec) {
  if (N < 1) throw DomainError("number of poles must be at least 1");
  std::vector<Pole> poles(static_cast<std::size_t>(N));
  std::vector<char> ok(static_cast<std::size_t>(N), 0);

  if (params.is_hookean()) {
    for (int n = 1; n <= N; ++n) poles[static_cast<std::size_t>(n - 1)] = exact_hooke_pole(n);
    return PoleSet(params, opts.tol, std::move(poles));
  }

  // Each index is an independent problem; the result does not depend on the
  // schedule.
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 4)
    for (int n = 1; n <= N; ++n) {
      if (auto p = refine_independent(n, params, opts)) {
        poles[static_cast<std::size_t>(n - 1)] = *p;
        ok[static_cast<std::size_t>(n - 1)] = 1;
      }
    }
  } else {
    for (int n = 1; n <= N; ++n) {
      if (auto p = refine_independent(n, params, opts)) {
        poles[static_cast<std::size_t>(n - 1)] = *p;
        ok[static_cast<std::size_t>(n - 1)] = 1;
      }
    }
  }

  // Continuation repair in increasing n.
  const double spacing = std::sqrt(params.b() / params.a()) * std::numbers::pi;
  for (int n = 1; n <= N; ++n) {
    const auto i = static_cast<std::size_t>(n - 1);
    if (ok[i]) continue;
    std::string why = "no seed converged";
    if (n >= 2 && ok[i - 1]) {
      complex seed = poles[i - 1].location + complex(0.0, spacing);
      if (n >= 3 && ok[i - 2]) seed = 2.0 * poles[i - 1].location - poles[i - 2].location;
      if (auto p = try_refine(seed, n, params, opts, &why)) {
        p->seed = PoleSeed::continuation;
        poles[i] = *p;
        ok[i] = 1;
        continue;
      }
    }
    throw NumericalError("pole " + std::to_string(n) + ": " + why);
  }

  for (int n = 2; n <= N; ++n) {
    const auto i = static_cast<std::size_t>(n - 1);
    if (std::abs(poles[i].location - poles[i - 1].location) <= opts.tol * std::abs(poles[i].location))
      throw NumericalError("poles " + std::to_string(n - 1) + " and " + std::to_string(n) + " collided");
  }
  return PoleSet(params, opts.tol, std::move(poles));
}

namespace {

complex pole_D(const Pole& pole, const MaterialParams& params) {
  return dispersion_factor(CutPlanePoint::from_complex(pole.location), params);
}

void require_simple(const Pole& pole) {
  if (!pole.simple) throw DomainError("residue requested at non-simple pole " + std::to_string(pole.n));
}

void require_x(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("x must lie in [0, 1]");
}

} // namespace

complex residue_P(double x, const Pole& pole, double t, const MaterialParams& params) {
  require_simple(pole);
  require_x(x);
  const double npi = pole.n * std::numbers::pi;
  const complex s = pole.location;
  return sign_n(pole.n) * std::sin(npi * x) / npi * s * std::exp(s * t) / pole_D(pole, params);
}

complex residue_P_quotient(double x, const Pole& pole, double t, const MaterialParams& params) {
  require_simple(pole);
  require_x(x);
  const complex s = pole.location;
  const complex M = eval_M(s, params);
  return std::sinh(x * s * M) * std::exp(s * t) / pole.derivative_at_pole;
}

complex residue_T(double x, const Pole& pole, double t, const MaterialParams& params) {
  require_simple(pole);
  require_x(x);
  const double npi = pole.n * std::numbers::pi;
  const complex s = pole.location;
  return -sign_n(pole.n) * std::cos(npi * x) * s * s * std::exp(s * t) / (npi * npi * pole_D(pole, params));
}

complex residue_T_quotient(double x, const Pole& pole, double t, const MaterialParams& params) {
  require_simple(pole);
  require_x(x);
  const complex s = pole.location;
  const complex M = eval_M(s, params);
  return std::cosh(x * s * M) * std::exp(s * t) / (M * pole.derivative_at_pole);
}

} // namespace fracrod
