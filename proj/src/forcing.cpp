#include "fracrod/forcing.hpp"

#include <cmath>

#include "fracrod/errors.hpp"

namespace fracrod {

std::string to_string(ForcingKind k) {
  switch (k) {
  case ForcingKind::none:
    return "none";
  case ForcingKind::exp_saturation:
    return "exp_saturation";
  case ForcingKind::poly_exp:
    return "poly_exp";
  }
  return "none";
}

ForcingKind forcing_kind_from_string(const std::string& name) {
  if (name == "none") return ForcingKind::none;
  if (name == "exp_saturation") return ForcingKind::exp_saturation;
  if (name == "poly_exp") return ForcingKind::poly_exp;
  throw ConfigError("forcing.kind: unknown family '" + name + "' (expected none, exp_saturation or poly_exp)");
}

void ForcingSpec::validate() const {
  if (!(upsilon0 >= 0.0) || !std::isfinite(upsilon0)) throw ConfigError("forcing.upsilon0 must be finite and >= 0");
  if (!std::isfinite(c)) throw ConfigError("forcing.c must be finite");
  if (!(tau > 0.0) || !std::isfinite(tau)) throw ConfigError("forcing.tau must be positive");
}

double ForcingSpec::F(double t) const {
  if (t <= 0.0) return 0.0;
  switch (kind) {
  case ForcingKind::none:
    return 0.0;
  case ForcingKind::exp_saturation:
    return -c * std::expm1(-t / tau);
  case ForcingKind::poly_exp:
    return c * t * std::exp(-t / tau);
  }
  return 0.0;
}

double ForcingSpec::F_prime(double t) const {
  if (t < 0.0) return 0.0;
  switch (kind) {
  case ForcingKind::none:
    return 0.0;
  case ForcingKind::exp_saturation:
    return c / tau * std::exp(-t / tau);
  case ForcingKind::poly_exp:
    return c * (1.0 - t / tau) * std::exp(-t / tau);
  }
  return 0.0;
}

} // namespace fracrod
