#include "fracrod/nondim.hpp"

#include <cmath>

#include "fracrod/errors.hpp"

namespace fracrod {

namespace {

double time_unit(double L, double rho, double E) {
  if (!(L > 0.0) || !(rho > 0.0) || !(E > 0.0) || !std::isfinite(L) || !std::isfinite(rho) || !std::isfinite(E))
    throw DomainError("L, rho and E must be finite and positive");
  return L * std::sqrt(rho / E);
}

} // namespace

DimensionlessState nondimensionalize(const PhysicalState& p) {
  const double t0 = time_unit(p.L, p.rho, p.E);
  DimensionlessState d;
  d.time_unit = t0;
  d.x = p.x / p.L;
  d.t = p.t / t0;
  d.u = p.u / p.L;
  d.sigma = p.sigma / p.E;
  d.upsilon = p.upsilon / p.L;
  // a^alpha D_t^alpha = (a/t0)^alpha D_{t/t0}^alpha
  d.a = p.a_phys / t0;
  d.b = p.b_phys / t0;
  return d;
}

PhysicalState dimensionalize(const DimensionlessState& d, double L, double rho, double E) {
  const double t0 = time_unit(L, rho, E);
  PhysicalState p;
  p.L = L;
  p.rho = rho;
  p.E = E;
  p.x = d.x * L;
  p.t = d.t * t0;
  p.u = d.u * L;
  p.sigma = d.sigma * E;
  p.upsilon = d.upsilon * L;
  p.a_phys = d.a * t0;
  p.b_phys = d.b * t0;
  return p;
}

} // namespace fracrod
