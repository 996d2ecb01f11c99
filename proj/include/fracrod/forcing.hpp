#pragma once

#include <complex>
#include <string>

namespace fracrod {

enum class ForcingKind {
  none,
  exp_saturation, // F = c (1 - e^{-t/tau}),  F~ = c / (s (1 + tau s))
  poly_exp,       // F = c t e^{-t/tau},       F~ = c tau^2 / (1 + tau s)^2
};

std::string to_string(ForcingKind k);
ForcingKind forcing_kind_from_string(const std::string& name);

/// Boundary displacement Upsilon(t) = upsilon0 H(t) + F(t).
struct ForcingSpec {
  double upsilon0 = 1.0;
  ForcingKind kind = ForcingKind::none;
  double c = 0.0;
  double tau = 1.0;

  /// Throws ConfigError for negative upsilon0, non-finite c or tau <= 0.
  void validate() const;

  bool has_extra() const noexcept { return kind != ForcingKind::none && c != 0.0; }

  /// F~ analytic off the cut, |F~| ~ |s|^{-alpha} with alpha > 1, s F~ -> 0
  /// at the origin. exp_saturation fails the last requirement.
  bool admissible_for_displacement() const noexcept { return kind != ForcingKind::exp_saturation; }

  /// 1/tau: F~ has its pole at s = -rate, on the cut.
  double rate() const noexcept { return 1.0 / tau; }

  double F(double t) const;
  double F_prime(double t) const;

  template <class R>
  std::complex<R> F_laplace(std::complex<R> s) const {
    const R cc = static_cast<R>(c), tt = static_cast<R>(tau);
    switch (kind) {
    case ForcingKind::none:
      return std::complex<R>(0);
    case ForcingKind::exp_saturation:
      return cc / (s * (R(1) + tt * s));
    case ForcingKind::poly_exp: {
      const std::complex<R> d = R(1) + tt * s;
      return cc * tt * tt / (d * d);
    }
    }
    return std::complex<R>(0);
  }
};

} // namespace fracrod
