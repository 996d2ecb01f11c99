#pragma once

#include <cstddef>
#include <vector>

#include "fracrod/kernel.hpp"
#include "fracrod/material.hpp"

namespace fracrod {

enum class Execution { serial, parallel };

/// Which starting point produced the accepted root.
enum class PoleSeed { asymptotic, fixed_point, continuation, exact };

/// Upper-half-plane zero of sinh(s M(s)) with s M(s) = i n pi. The conjugate
/// partner is implied.
struct Pole {
  int n = 0;
  complex location;
  /// d/ds sinh(s M(s)) at the root, (-1)^n M D.
  complex derivative_at_pole;
  /// |sinh(s M(s))| at the stored location.
  double residual = 0.0;
  bool simple = false;
  PoleSeed seed = PoleSeed::asymptotic;
  int iterations = 0;
};

inline constexpr double kSimplicityFloor = 1e-6;

struct PoleOptions {
  double tol = 1e-12;
  int max_iterations = 50;
};

class PoleSet {
public:
  PoleSet(MaterialParams params, double tol, std::vector<Pole> poles);

  const MaterialParams& params() const noexcept { return params_; }
  double tol() const noexcept { return tol_; }
  const std::vector<Pole>& poles() const noexcept { return poles_; }
  std::size_t size() const noexcept { return poles_.size(); }
  /// Pole with index n (1-based).
  const Pole& at(int n) const;

  /// Leading poles n = 1..N as a new set; N must not exceed size().
  PoleSet truncated(std::size_t N) const;

private:
  MaterialParams params_;
  double tol_;
  std::vector<Pole> poles_;
};

complex asymptotic_guess(int n, const MaterialParams& params);

/// Damped Newton on g(s) = s M(s) - i n pi in extended precision. Throws
/// NumericalError on non-convergence, residual above tol, or Im(s) <= 0.
Pole refine_pole(complex guess, int n, const MaterialParams& params, const PoleOptions& opts = {});

/// Poles n = 1..N. Each index is tried from the asymptotic guess, then from a
/// fixed-point seed; indices that still fail are repaired serially by
/// continuation from pole n-1. Both execution modes give identical sets.
PoleSet build_pole_set(int N, const MaterialParams& params, const PoleOptions& opts = {},
                       Execution exec = Execution::parallel);

/// Residue of P~(x,s) e^{st} at the pole, simplified form
/// (-1)^n sin(n pi x)/(n pi) * s e^{st} / D(s).
complex residue_P(double x, const Pole& pole, double t, const MaterialParams& params);
/// Same residue as the quotient sinh(x s M) e^{st} / (d/ds sinh(s M)).
complex residue_P_quotient(double x, const Pole& pole, double t, const MaterialParams& params);

/// Residue of T~(x,s) e^{st}, simplified form
/// -(-1)^n cos(n pi x) s^2 e^{st} / (n^2 pi^2 D(s)).
complex residue_T(double x, const Pole& pole, double t, const MaterialParams& params);
/// Same residue as cosh(x s M) e^{st} / (M d/ds sinh(s M)).
complex residue_T_quotient(double x, const Pole& pole, double t, const MaterialParams& params);

/// Real contribution of a conjugate pole pair.
inline double pair_sum(complex residue) { return 2.0 * residue.real(); }

} // namespace fracrod
