#pragma once

namespace fracrod {

/// Rod length L, density rho, modulus E and a state in physical units.
/// a_phys, b_phys carry the time dimension of the weight bases.
struct PhysicalState {
  double L = 1.0;
  double rho = 1.0;
  double E = 1.0;
  double x = 0.0;
  double t = 0.0;
  double u = 0.0;
  double sigma = 0.0;
  double upsilon = 0.0;
  double a_phys = 1.0;
  double b_phys = 1.0;
};

struct DimensionlessState {
  double x = 0.0;
  double t = 0.0;
  double u = 0.0;
  double sigma = 0.0;
  double upsilon = 0.0;
  double a = 1.0;
  double b = 1.0;
  /// L sqrt(rho/E).
  double time_unit = 1.0;
};

/// x/L, t/t0, u/L, sigma/E, Upsilon/L and a/t0, b/t0 with t0 = L sqrt(rho/E).
/// Throws DomainError for non-positive L, rho or E.
DimensionlessState nondimensionalize(const PhysicalState& p);

/// Inverse of nondimensionalize for the given L, rho, E.
PhysicalState dimensionalize(const DimensionlessState& d, double L, double rho, double E);

} // namespace fracrod
