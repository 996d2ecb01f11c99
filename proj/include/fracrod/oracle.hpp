#pragma once

#include <complex>
#include <functional>
#include <string>

#include "fracrod/forcing.hpp"
#include "fracrod/material.hpp"

namespace fracrod {

enum class OracleMethod {
  bromwich_trapezoid,   // Fourier-series trapezoid on Re s = c, Wynn-epsilon tail
  rational_collocation, // quotient-difference continued fraction (de Hoog et al.)
};

enum class Precision { double_precision, extended };

std::string to_string(OracleMethod m);
OracleMethod oracle_method_from_string(const std::string& name);

struct OracleConfig {
  OracleMethod method = OracleMethod::bromwich_trapezoid;
  /// Re s of the inversion line; 0 selects it from t.
  double abscissa = 0.0;
  /// Trapezoid nodes, or 2M+1 coefficients for the continued fraction. The
  /// error estimate compares against half as many.
  int nodes = 16384;
  Precision precision = Precision::extended;

  void validate() const;
};

struct OracleResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int nodes = 0;
};

/// A Laplace-domain function usable at double and extended precision.
class LaplaceTransform {
public:
  template <class F>
  explicit LaplaceTransform(F f) : d_(f), l_(f) {}

  std::complex<double> operator()(std::complex<double> s) const { return d_(s); }
  std::complex<long double> operator()(std::complex<long double> s) const { return l_(s); }

private:
  std::function<std::complex<double>(std::complex<double>)> d_;
  std::function<std::complex<long double>(std::complex<long double>)> l_;
};

/// Inverse Laplace transform at t > 0 along a vertical line. Never looks at
/// poles or cut integrals of the transform.
OracleResult invert(const LaplaceTransform& F, double t, const OracleConfig& cfg = {});

/// P~(x, s).
LaplaceTransform image_P(double x, const MaterialParams& params);
/// T~(x, s).
LaplaceTransform image_T(double x, const MaterialParams& params);
/// (upsilon0/s + F~(s)) P~(x, s): total displacement.
LaplaceTransform image_displacement(double x, const ForcingSpec& forcing, const MaterialParams& params);
/// s (upsilon0/s + F~(s)) T~(x, s): total stress.
LaplaceTransform image_stress(double x, const ForcingSpec& forcing, const MaterialParams& params);

} // namespace fracrod
