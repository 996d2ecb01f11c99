#pragma once

namespace fracrod {

/// Dimensionless weight bases of the distributed-order constitutive law
///
///   int_0^1 a^alpha D^alpha sigma d(alpha) = int_0^1 b^alpha D^alpha eps d(alpha).
///
/// Admissible values satisfy 0 < a <= b; a == b reduces the law to Hooke's
/// law and is accepted.
class MaterialParams {
public:
  /// Throws DomainError unless 0 < a <= b and both are finite.
  MaterialParams(double a, double b);

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }

  bool is_hookean() const noexcept { return a_ == b_; }

  /// Long-time (static) modulus is 1; the instantaneous one is b/a.
  double instantaneous_modulus() const noexcept { return b_ / a_; }

  friend bool operator==(const MaterialParams&, const MaterialParams&) = default;

private:
  double a_;
  double b_;
};

} // namespace fracrod
