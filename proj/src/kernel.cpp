#include "fracrod/kernel.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "fracrod/detail/kernel_core.hpp"
#include "fracrod/errors.hpp"

namespace fracrod {

MaterialParams::MaterialParams(double a, double b) : a_(a), b_(b) {
  if (!std::isfinite(a) || !std::isfinite(b) || !(a > 0.0) || !(b > 0.0))
    throw DomainError("material parameters a, b must be finite and positive");
  if (a > b) throw DomainError("material parameters must satisfy a <= b");
}

CutPlanePoint CutPlanePoint::from_complex(complex s) {
  if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) throw DomainError("non-finite s");
  if (s == complex(0.0)) throw DomainError("s = 0 is the branch point");
  if (s.imag() == 0.0 && s.real() < 0.0)
    throw DomainError("s on the negative real axis needs an explicit cut side");
  return CutPlanePoint(std::abs(s), std::arg(s), CutSide::none, s);
}

CutPlanePoint CutPlanePoint::on_cut(double q, CutSide side) {
  if (!(q > 0.0) || !std::isfinite(q)) throw DomainError("cut point needs finite q > 0");
  if (side == CutSide::none) throw DomainError("on_cut requires the upper or lower side");
  const double arg = side == CutSide::upper ? std::numbers::pi : -std::numbers::pi;
  return CutPlanePoint(q, arg, side, complex(-q, 0.0));
}

complex CutPlanePoint::log_scaled(double c) const noexcept {
  return {std::log(c * modulus_), argument_};
}

namespace {

struct Point {
  complex s, la, lb, M;
};

Point prepare(const CutPlanePoint& p, const MaterialParams& m) {
  Point r;
  r.s = p.value();
  r.la = p.log_scaled(m.a());
  r.lb = p.log_scaled(m.b());
  r.M = detail::M_value<double>(r.s, r.la, r.lb, m.a(), m.b());
  return r;
}

void check_x(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("x must lie in [0, 1]");
}

// Guards the transfer functions against the zeros of sinh(z); there are none
// with |z| < pi, and the origin itself is handled by the direct formulas.
double condition_of(complex z) {
  const double ls = detail::log_abs_sinh<double>(z);
  if (std::abs(z) >= 1.0 && ls < std::log(kPoleProximity))
    throw DomainError("transfer function evaluated at a pole of sinh(sM(s))");
  if (-ls > std::log(kConditionClamp)) return kConditionClamp;
  return std::exp(-ls);
}

} // namespace

complex eval_M(const CutPlanePoint& s, const MaterialParams& params) {
  return prepare(s, params).M;
}

complex eval_M(complex s, const MaterialParams& params) {
  return eval_M(CutPlanePoint::from_complex(s), params);
}

complex dispersion_factor(const CutPlanePoint& s, const MaterialParams& params) {
  const Point p = prepare(s, params);
  return detail::D_value<double>(p.s, p.la, p.lb, params.a(), params.b());
}

complex eval_M_asymptotic(double p, double R, int sign, const MaterialParams& params) {
  (void)p; // enters only at lower order
  const double a = params.a(), b = params.b();
  if (!(R > 0.0) || a * R <= 1.0) throw DomainError("asymptotic form needs R > 1/a");
  if (sign != 1 && sign != -1) throw DomainError("sign must be +1 or -1");
  if (params.is_hookean()) return 1.0;
  const double la = std::log(a * R), lb = std::log(b * R);
  const double X = la * lb;
  const double Y = std::numbers::pi / 2 * std::log(b / a);
  const double mag = std::sqrt(a / b) / la * std::pow(X * X + Y * Y, 0.25);
  return std::polar(mag, -sign * std::atan(Y / X) / 2);
}

TransferValue eval_P_tilde(double x, const CutPlanePoint& s, const MaterialParams& params) {
  check_x(x);
  const Point p = prepare(s, params);
  const complex z = p.s * p.M;
  const double cond = condition_of(z);
  return {detail::sinh_ratio<double>(x, z), cond};
}

TransferValue eval_T_tilde(double x, const CutPlanePoint& s, const MaterialParams& params) {
  check_x(x);
  const Point p = prepare(s, params);
  const complex z = p.s * p.M;
  const double cond = condition_of(z);
  return {detail::cosh_ratio<double>(x, z) / p.M, cond};
}

TransferJet eval_P_tilde_jet(double x, const CutPlanePoint& s, const MaterialParams& params) {
  check_x(x);
  const Point p = prepare(s, params);
  const complex z = p.s * p.M;
  condition_of(z);
  const complex D = detail::D_value<double>(p.s, p.la, p.lb, params.a(), params.b());
  const complex P = detail::sinh_ratio<double>(x, z);
  const complex C = detail::cosh_ratio<double>(x, z);
  const complex dP_dz = x * C - P * detail::coth_safe<double>(z);
  return {P, dP_dz * p.M * D};
}

TransferJet eval_T_tilde_jet(double x, const CutPlanePoint& s, const MaterialParams& params) {
  check_x(x);
  const Point p = prepare(s, params);
  const complex z = p.s * p.M;
  condition_of(z);
  const complex D = detail::D_value<double>(p.s, p.la, p.lb, params.a(), params.b());
  const complex P = detail::sinh_ratio<double>(x, z);
  const complex C = detail::cosh_ratio<double>(x, z);
  const complex T = C / p.M;
  // T = C(z)/M, z' = M D, (1/M)' = -(D - 1)/(s M)
  const complex dT = -(D - 1.0) * C / (p.s * p.M) + D * (x * P - C * detail::coth_safe<double>(z));
  return {T, dT};
}

} // namespace fracrod
