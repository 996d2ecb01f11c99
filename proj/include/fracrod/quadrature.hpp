#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "fracrod/material.hpp"

namespace fracrod {

struct QuadratureConfig {
  double q_max = 1000.0;
  double rel_tol = 1e-10;
  double abs_tol = 1e-13;
  int max_subdivisions = 4000;
  /// Lower end of the numerically integrated range; [0, q_min] is covered by
  /// the integrand's limit or by a caller-supplied closed form.
  double q_min = 1e-9;

  void validate() const;
};

struct IntegralResult {
  double value = 0.0;
  double error_estimate = 0.0;
  long evaluations = 0;
  /// Estimate of the discarded tail beyond q_max.
  double truncation_estimate = 0.0;
};

enum class CutWeight {
  exp_decay,     // e^{-qt}
  step_response, // (1 - e^{-qt})/q, equal to t at q = 0
  static_limit,  // 1/q
};

double cut_weight(CutWeight w, double q, double t);

/// -(1/pi) Im P~(x, q e^{i pi}).
double cut_integrand_P(double x, double q, const MaterialParams& params);
/// -(1/pi) Im T~(x, q e^{i pi}), so that T = 1 + int f e^{-qt} dq + residues.
double cut_integrand_T(double x, double q, const MaterialParams& params);

/// Closed form of int_0^{q} cut_integrand_T dq for small q, from the
/// leading behaviour ln(b/a) / (q (ln^2(bq) + pi^2)) at the origin.
double cut_T_origin_mass(double q, const MaterialParams& params);

using Integrand = std::function<double(double)>;

/// int_0^{q_max} f(q) w(q, t) dq. Log-spaced panels on [q_min, 1], doubling
/// panels on [1, q_max]. origin_mass, when given, returns int_0^{q_min} f dq
/// and is multiplied by the weight at 0 (not allowed with the 1/q weight);
/// otherwise f*w is taken as finite there.
IntegralResult integrate_cut(const Integrand& f, CutWeight w, double t, const QuadratureConfig& cfg,
                             const std::function<double(double)>& origin_mass = {});

/// Globally adaptive Gauss-Kronrod (7/15) over the given initial panels.
/// In log mode each panel is an interval in u = ln q and f is integrated
/// in q with dq = q du.
IntegralResult integrate_adaptive(const Integrand& f, const std::vector<std::pair<double, double>>& panels,
                                  double rel_tol, double abs_tol, int max_subdivisions, bool log_variable = false);

} // namespace fracrod
