#pragma once

#include <string>

#include "fracrod/forcing.hpp"
#include "fracrod/poles.hpp"
#include "fracrod/quadrature.hpp"

namespace fracrod {

struct SolverConfig {
  QuadratureConfig quad;
  /// Number of pole pairs summed; the pole set must hold at least this many.
  int n_residues = 400;
  PoleOptions poles;

  void validate() const;
};

/// One field value with its decomposition. value = cut_part + residue_part
/// + constant_part; constant_part is nonzero only for stress (the term 1 of
/// T scaled by upsilon0).
struct FieldSample {
  double x = 0.0;
  double t = 0.0;
  double value = 0.0;
  double cut_part = 0.0;
  double residue_part = 0.0;
  double constant_part = 0.0;
  int n_terms = 0;
  double error_estimate = 0.0;
  /// Set for stress samples at t = 0, where the field jumps; value is the
  /// limit from t > 0.
  bool jump = false;
};

/// Kernel P(x,t) of u = Upsilon * P. x = 1 is rejected (P(1,.) is a delta).
FieldSample compute_P(double x, double t, const PoleSet& poles, const SolverConfig& cfg);

/// int_0^inf cut_integrand_P(x,q)/q dq; depends on x only, so grids compute
/// it once per x and pass it to compute_u_H.
IntegralResult static_cut_moment(double x, const MaterialParams& params, const SolverConfig& cfg);

FieldSample compute_u_H(double x, double t, double upsilon0, const PoleSet& poles, const SolverConfig& cfg,
                        const IntegralResult* static_moment = nullptr);

FieldSample compute_T(double x, double t, const PoleSet& poles, const SolverConfig& cfg);

FieldSample compute_sigma_H(double x, double t, double upsilon0, const PoleSet& poles, const SolverConfig& cfg);

/// Displacement due to the extra forcing F only; the total displacement is
/// compute_u_H + compute_u_F. Families failing the admissibility conditions
/// are rejected.
FieldSample compute_u_F(double x, double t, const ForcingSpec& forcing, const PoleSet& poles,
                        const SolverConfig& cfg);

/// u_H + u_F as one sample.
FieldSample compute_u_total(double x, double t, const ForcingSpec& forcing, const PoleSet& poles,
                            const SolverConfig& cfg, const IntegralResult* static_moment = nullptr);

/// Total stress sigma_H + d/dt (F * T). poly_exp is handled spectrally; other
/// families go through compute_sigma_F_convolution.
FieldSample compute_sigma_F(double x, double t, const ForcingSpec& forcing, const PoleSet& poles,
                            const SolverConfig& cfg);

/// sigma_H + int_0^t F'(tau) T(x, t - tau) d tau with T from compute_T.
/// Accuracy is limited by the residue series of T at short lags.
FieldSample compute_sigma_F_convolution(double x, double t, const ForcingSpec& forcing, const PoleSet& poles,
                                        const SolverConfig& cfg);

/// Error bound for the discarded part of a residue series from the decay of
/// the last computed term magnitudes.
double residue_tail_estimate(const double* magnitudes, int count);

} // namespace fracrod
