#pragma once

#include <complex>

#include "fracrod/material.hpp"

namespace fracrod {

using complex = std::complex<double>;

enum class CutSide { none, upper, lower };

/// A point of the cut plane C \ (-inf, 0] in polar form. Points on the
/// negative real axis are only representable with an explicit side flag;
/// the lower side stores argument -pi so that ln(s) = ln|s| + i*argument
/// holds on both sides.
class CutPlanePoint {
public:
  /// Throws DomainError for s == 0 and for s on the negative real axis.
  static CutPlanePoint from_complex(complex s);
  /// The point q*e^{+i pi} (upper) or q*e^{-i pi} (lower), q > 0.
  static CutPlanePoint on_cut(double q, CutSide side);

  double modulus() const noexcept { return modulus_; }
  double argument() const noexcept { return argument_; }
  CutSide side() const noexcept { return side_; }
  bool on_upper_cut() const noexcept { return side_ == CutSide::upper; }
  bool on_lower_cut() const noexcept { return side_ == CutSide::lower; }

  /// Cartesian value; -q for both cut sides.
  complex value() const noexcept { return value_; }
  /// ln(c*s) on the branch fixed by the argument, c > 0.
  complex log_scaled(double c) const noexcept;

private:
  CutPlanePoint(double modulus, double argument, CutSide side, complex value)
      : modulus_(modulus), argument_(argument), side_(side), value_(value) {}

  double modulus_;
  double argument_;
  CutSide side_;
  complex value_;
};

struct TransferValue {
  complex value;
  /// 1/|sinh(sM(s))| clamped to kConditionClamp; large near poles.
  double condition_estimate;
};

inline constexpr double kConditionClamp = 1e300;
/// Transfer functions refuse points where |sinh(sM(s))| falls below this.
inline constexpr double kPoleProximity = 1e-13;

complex eval_M(const CutPlanePoint& s, const MaterialParams& params);
complex eval_M(complex s, const MaterialParams& params);

/// d/ds[s M(s)] / M(s).
complex dispersion_factor(const CutPlanePoint& s, const MaterialParams& params);

/// Large-|Im s| form of M at s = p + sign*i*R. Phase is half the argument of
/// the leading-order M^2, so the result tracks eval_M as R grows.
complex eval_M_asymptotic(double p, double R, int sign, const MaterialParams& params);

/// sinh(x s M)/sinh(s M).
TransferValue eval_P_tilde(double x, const CutPlanePoint& s, const MaterialParams& params);
/// cosh(x s M)/(M sinh(s M)).
TransferValue eval_T_tilde(double x, const CutPlanePoint& s, const MaterialParams& params);

/// Transfer function together with its s-derivative at the same point.
struct TransferJet {
  complex value;
  complex derivative;
};

TransferJet eval_P_tilde_jet(double x, const CutPlanePoint& s, const MaterialParams& params);
TransferJet eval_T_tilde_jet(double x, const CutPlanePoint& s, const MaterialParams& params);

} // namespace fracrod
