#include "fracrod/fields.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <vector>

#include "fracrod/errors.hpp"
#include "fracrod/kernel.hpp"

namespace fracrod {

void SolverConfig::validate() const {
  quad.validate();
  if (n_residues < 1) throw ConfigError("n_residues must be at least 1");
  if (!(poles.tol > 0.0)) throw ConfigError("pole tolerance must be positive");
  if (poles.max_iterations < 1) throw ConfigError("pole max_iterations must be positive");
}

double residue_tail_estimate(const double* mags, int count) {
  if (count <= 0) return 0.0;
  const int block = std::min(10, count / 2);
  if (block < 1) return mags[count - 1] * count;
  double last = 0.0, prev = 0.0;
  for (int i = count - block; i < count; ++i) last = std::max(last, mags[i]);
  for (int i = count - 2 * block; i < count - block; ++i) prev = std::max(prev, mags[i]);
  if (last == 0.0) return 0.0;
  const double cap = last * count;
  if (!(prev > last)) return cap;
  const double rho = std::pow(last / prev, 1.0 / block);
  return std::min(last * rho / (1.0 - rho), cap);
}

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void check_x(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("x must lie in [0, 1]");
}

int terms_for(const PoleSet& poles, const SolverConfig& cfg) {
  if (static_cast<std::size_t>(cfg.n_residues) > poles.size())
    throw ConfigError("n_residues exceeds the number of poles in the pole set");
  return cfg.n_residues;
}

FieldSample zero_sample(double x, double t) {
  FieldSample s;
  s.x = x;
  s.t = t;
  return s;
}

struct SeriesSum {
  double value = 0.0;
  double abs_sum = 0.0;
  double tail = 0.0;
};

// Fixed summation order n = 1..N.
template <class Term>
SeriesSum sum_pairs(const PoleSet& poles, int N, Term term) {
  SeriesSum out;
  std::vector<double> mags(static_cast<std::size_t>(N));
  for (int n = 1; n <= N; ++n) {
    const complex r = term(poles.at(n));
    const double v = pair_sum(r);
    out.value += v;
    out.abs_sum += std::abs(v);
    mags[static_cast<std::size_t>(n - 1)] = 2.0 * std::abs(r);
  }
  out.tail = residue_tail_estimate(mags.data(), N);
  return out;
}

double rounding_floor(double a, double b) { return 64.0 * kEps * (std::abs(a) + std::abs(b)); }

// Contribution of a double pole of F~ sitting on the cut at s = -lambda:
//   -(1/pi) FP int_0^inf Im A(q)/(q - lambda)^2 dq - Re A'(lambda),
// A(q) = K(q e^{i pi}) e^{-qt}. The finite part is taken symmetrically
// around lambda, where the first-order term cancels.
struct OnCutResult {
  double value = 0.0;
  double error = 0.0;
  double truncation = 0.0;
};

OnCutResult on_cut_double_pole(const std::function<TransferJet(const CutPlanePoint&)>& K, double lambda, double t,
                               const QuadratureConfig& qc) {
  if (!(2.0 * lambda < qc.q_max)) throw ConfigError("forcing rate 1/tau must be below q_max/2");
  auto A = [&](double q) {
    const TransferJet j = K(CutPlanePoint::on_cut(q, CutSide::upper));
    const double e = std::exp(-q * t);
    return TransferJet{j.value * e, (-j.derivative - t * j.value) * e};
  };
  auto g = [&](double q) { return A(q).value.imag(); };

  const TransferJet at = A(lambda);
  const double g0 = at.value.imag();

  auto sym = [&](double r) { return (g(lambda + r) + g(lambda - r) - 2.0 * g0) / (r * r); };
  const std::vector<std::pair<double, double>> inner_panels = {
      {0.0, 0.5 * lambda}, {0.5 * lambda, 0.9 * lambda}, {0.9 * lambda, 0.99 * lambda}, {0.99 * lambda, lambda}};
  const IntegralResult inner =
      integrate_adaptive(sym, inner_panels, qc.rel_tol, qc.abs_tol, qc.max_subdivisions, false);

  auto outer_f = [&](double q) {
    const double d = q - lambda;
    return g(q) / (d * d);
  };
  std::vector<std::pair<double, double>> outer_panels;
  for (double lo = 2.0 * lambda; lo < qc.q_max;) {
    const double hi = std::min(2.0 * lo, qc.q_max);
    outer_panels.emplace_back(lo, hi);
    lo = hi;
  }
  const IntegralResult outer =
      integrate_adaptive(outer_f, outer_panels, qc.rel_tol, qc.abs_tol, qc.max_subdivisions, false);

  const double fp = inner.value + g0 * (-2.0 / lambda) + outer.value;
  OnCutResult r;
  r.value = -fp / std::numbers::pi - at.derivative.real();
  r.error = (inner.error_estimate + outer.error_estimate) / std::numbers::pi;
  const double tail_end = std::abs(outer_f(qc.q_max));
  r.truncation = tail_end * qc.q_max / std::numbers::pi;
  return r;
}

} // namespace

FieldSample compute_P(double x, double t, const PoleSet& poles, const SolverConfig& cfg) {
  check_x(x);
  if (x == 1.0) throw DomainError("P(1, t) is a delta distribution, not a function");
  if (t < 0.0) return zero_sample(x, t);
  if (t == 0.0) throw DomainError("P(x, t) is evaluated for t != 0 only");
  const MaterialParams& m = poles.params();
  const int N = terms_for(poles, cfg);
  const IntegralResult cut =
      integrate_cut([&](double q) { return cut_integrand_P(x, q, m); }, CutWeight::exp_decay, t, cfg.quad);
  const SeriesSum res = sum_pairs(poles, N, [&](const Pole& p) { return residue_P(x, p, t, m); });

  FieldSample s;
  s.x = x;
  s.t = t;
  s.cut_part = cut.value;
  s.residue_part = res.value;
  s.value = s.cut_part + s.residue_part;
  s.n_terms = N;
  s.error_estimate = cut.error_estimate + cut.truncation_estimate + res.tail + rounding_floor(cut.value, res.abs_sum);
  return s;
}

IntegralResult static_cut_moment(double x, const MaterialParams& params, const SolverConfig& cfg) {
  check_x(x);
  return integrate_cut([&](double q) { return cut_integrand_P(x, q, params); }, CutWeight::static_limit, 0.0,
                       cfg.quad);
}

FieldSample compute_u_H(double x, double t, double upsilon0, const PoleSet& poles, const SolverConfig& cfg,
                        const IntegralResult* static_moment) {
  check_x(x);
  // continuous at t = 0 with value 0
  if (t <= 0.0 || upsilon0 == 0.0) return zero_sample(x, t);
  const MaterialParams& m = poles.params();
  const int N = terms_for(poles, cfg);

  const IntegralResult cut =
      integrate_cut([&](double q) { return cut_integrand_P(x, q, m); }, CutWeight::step_response, t, cfg.quad);
  const IntegralResult S = static_moment ? *static_moment : static_cut_moment(x, m, cfg);

  // int_0^t of the residue pair is 2 Re(c (e^{st} - 1)/s). The constant
  // -sum 2 Re(c/s) over all poles equals x - S, because the full response
  // integrates to P~(x, 0) = x.
  const SeriesSum res =
      sum_pairs(poles, N, [&](const Pole& p) { return residue_P(x, p, t, m) / p.location; });

  FieldSample s;
  s.x = x;
  s.t = t;
  s.cut_part = upsilon0 * cut.value;
  s.residue_part = upsilon0 * (res.value + (x - S.value));
  s.value = s.cut_part + s.residue_part;
  s.n_terms = N;
  s.error_estimate = upsilon0 * (cut.error_estimate + cut.truncation_estimate + S.error_estimate +
                                 S.truncation_estimate + res.tail +
                                 rounding_floor(cut.value, res.abs_sum + std::abs(x) + std::abs(S.value)));
  return s;
}

FieldSample compute_T(double x, double t, const PoleSet& poles, const SolverConfig& cfg) {
  check_x(x);
  if (t < 0.0) return zero_sample(x, t);
  if (t == 0.0) {
    // no disturbance has reached x < 1 yet; at x = 1 the stress carries a delta
    if (x == 1.0) throw DomainError("T(1, t) is singular at t = 0");
    FieldSample s = zero_sample(x, t);
    s.jump = true;
    return s;
  }
  const MaterialParams& m = poles.params();
  const int N = terms_for(poles, cfg);
  const IntegralResult cut =
      integrate_cut([&](double q) { return cut_integrand_T(x, q, m); }, CutWeight::exp_decay, t, cfg.quad,
                    [&](double q_lo) { return cut_T_origin_mass(q_lo, m); });
  const SeriesSum res = sum_pairs(poles, N, [&](const Pole& p) { return residue_T(x, p, t, m); });

  FieldSample s;
  s.x = x;
  s.t = t;
  s.constant_part = 1.0;
  s.cut_part = cut.value;
  s.residue_part = res.value;
  s.value = s.constant_part + s.cut_part + s.residue_part;
  s.n_terms = N;
  s.error_estimate =
      cut.error_estimate + cut.truncation_estimate + res.tail + rounding_floor(1.0 + cut.value, res.abs_sum);
  return s;
}

FieldSample compute_sigma_H(double x, double t, double upsilon0, const PoleSet& poles, const SolverConfig& cfg) {
  if (upsilon0 == 0.0) {
    check_x(x);
    FieldSample s = zero_sample(x, t);
    s.jump = t == 0.0;
    return s;
  }
  FieldSample s = compute_T(x, t, poles, cfg);
  s.value *= upsilon0;
  s.cut_part *= upsilon0;
  s.residue_part *= upsilon0;
  s.constant_part *= upsilon0;
  s.error_estimate *= upsilon0;
  return s;
}

FieldSample compute_u_F(double x, double t, const ForcingSpec& forcing, const PoleSet& poles,
                        const SolverConfig& cfg) {
  check_x(x);
  forcing.validate();
  if (!forcing.admissible_for_displacement())
    throw DomainError("forcing family " + to_string(forcing.kind) +
                      " violates the admissibility conditions for the displacement solution");
  if (!forcing.has_extra() || t <= 0.0) return zero_sample(x, t);
  const MaterialParams& m = poles.params();
  const int N = terms_for(poles, cfg);
  const double lambda = forcing.rate();

  const OnCutResult cut = on_cut_double_pole(
      [&](const CutPlanePoint& s) { return eval_P_tilde_jet(x, s, m); }, lambda, t, cfg.quad);
  // F~ = c/(s + lambda)^2 for poly_exp
  const SeriesSum res = sum_pairs(poles, N, [&](const Pole& p) {
    return forcing.F_laplace<double>(p.location) * residue_P(x, p, t, m);
  });

  FieldSample s;
  s.x = x;
  s.t = t;
  s.cut_part = forcing.c * cut.value;
  s.residue_part = res.value;
  s.value = s.cut_part + s.residue_part;
  s.n_terms = N;
  s.error_estimate = std::abs(forcing.c) * (cut.error + cut.truncation) + res.tail +
                     rounding_floor(s.cut_part, res.abs_sum);
  return s;
}

namespace {

FieldSample add_samples(const FieldSample& a, const FieldSample& b) {
  FieldSample s = a;
  s.value = a.value + b.value;
  s.cut_part = a.cut_part + b.cut_part;
  s.residue_part = a.residue_part + b.residue_part;
  s.constant_part = a.constant_part + b.constant_part;
  s.n_terms = std::max(a.n_terms, b.n_terms);
  s.error_estimate = a.error_estimate + b.error_estimate;
  s.jump = a.jump || b.jump;
  return s;
}

} // namespace

FieldSample compute_u_total(double x, double t, const ForcingSpec& forcing, const PoleSet& poles,
                            const SolverConfig& cfg, const IntegralResult* static_moment) {
  const FieldSample h = compute_u_H(x, t, forcing.upsilon0, poles, cfg, static_moment);
  if (!forcing.has_extra()) return h;
  return add_samples(h, compute_u_F(x, t, forcing, poles, cfg));
}

FieldSample compute_sigma_F(double x, double t, const ForcingSpec& forcing, const PoleSet& poles,
                            const SolverConfig& cfg) {
  check_x(x);
  forcing.validate();
  if (forcing.kind == ForcingKind::exp_saturation && forcing.has_extra())
    return compute_sigma_F_convolution(x, t, forcing, poles, cfg);
  const FieldSample h = compute_sigma_H(x, t, forcing.upsilon0, poles, cfg);
  if (!forcing.has_extra() || t <= 0.0) return h;

  const MaterialParams& m = poles.params();
  const int N = terms_for(poles, cfg);
  const double lambda = forcing.rate();
  // sigma~ = s F~ T~; the kernel on the cut is s T~ with derivative T~ + s T~'
  const OnCutResult cut = on_cut_double_pole(
      [&](const CutPlanePoint& s) {
        const TransferJet j = eval_T_tilde_jet(x, s, m);
        return TransferJet{s.value() * j.value, j.value + s.value() * j.derivative};
      },
      lambda, t, cfg.quad);
  const SeriesSum res = sum_pairs(poles, N, [&](const Pole& p) {
    return p.location * forcing.F_laplace<double>(p.location) * residue_T(x, p, t, m);
  });

  FieldSample f;
  f.x = x;
  f.t = t;
  f.cut_part = forcing.c * cut.value;
  f.residue_part = res.value;
  f.value = f.cut_part + f.residue_part;
  f.n_terms = N;
  f.error_estimate = std::abs(forcing.c) * (cut.error + cut.truncation) + res.tail +
                     rounding_floor(f.cut_part, res.abs_sum);
  return add_samples(h, f);
}

FieldSample compute_sigma_F_convolution(double x, double t, const ForcingSpec& forcing, const PoleSet& poles,
                                        const SolverConfig& cfg) {
  check_x(x);
  forcing.validate();
  const FieldSample h = compute_sigma_H(x, t, forcing.upsilon0, poles, cfg);
  if (!forcing.has_extra() || t <= 0.0) return h;

  // T is expensive; both passes below visit mostly the same lags
  std::map<double, FieldSample> memo;
  auto T_at = [&](double lag) -> const FieldSample& {
    auto it = memo.find(lag);
    if (it == memo.end()) it = memo.emplace(lag, compute_T(x, lag, poles, cfg)).first;
    return it->second;
  };
  const std::vector<std::pair<double, double>> panels = {{0.0, 0.5 * t}, {0.5 * t, t}};
  const IntegralResult conv = integrate_adaptive(
      [&](double tau) { return forcing.F_prime(tau) * T_at(t - tau).value; }, panels, 1e-8, 1e-12, 200);
  const IntegralResult err = integrate_adaptive(
      [&](double tau) { return std::abs(forcing.F_prime(tau)) * T_at(t - tau).error_estimate; }, panels, 1e-2,
      1e-12, 200);

  FieldSample f;
  f.x = x;
  f.t = t;
  f.cut_part = 0.0;
  f.residue_part = conv.value;
  f.value = conv.value;
  f.n_terms = h.n_terms;
  f.error_estimate = conv.error_estimate + err.value;
  return add_samples(h, f);
}

} // namespace fracrod
