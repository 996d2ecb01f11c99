#include "fracrod/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <queue>

#include "fracrod/errors.hpp"
#include "fracrod/kernel.hpp"

namespace fracrod {

void QuadratureConfig::validate() const {
  if (!(q_max > 0.0) || !std::isfinite(q_max)) throw ConfigError("q_max must be positive");
  if (!(rel_tol > 0.0)) throw ConfigError("rel_tol must be positive");
  if (!(abs_tol > 0.0)) throw ConfigError("abs_tol must be positive");
  if (max_subdivisions < 1) throw ConfigError("max_subdivisions must be positive");
  if (!(q_min > 0.0) || !(q_min < std::min(1.0, q_max))) throw ConfigError("q_min must lie in (0, min(1, q_max))");
}

double cut_weight(CutWeight w, double q, double t) {
  switch (w) {
  case CutWeight::exp_decay:
    return std::exp(-q * t);
  case CutWeight::step_response:
    if (q == 0.0) return t;
    return -std::expm1(-q * t) / q;
  case CutWeight::static_limit:
    if (q == 0.0) throw DomainError("static weight 1/q is singular at q = 0");
    return 1.0 / q;
  }
  return 0.0;
}

double cut_integrand_P(double x, double q, const MaterialParams& params) {
  const auto s = CutPlanePoint::on_cut(q, CutSide::upper);
  return -eval_P_tilde(x, s, params).value.imag() / std::numbers::pi;
}

double cut_integrand_T(double x, double q, const MaterialParams& params) {
  const auto s = CutPlanePoint::on_cut(q, CutSide::upper);
  return -eval_T_tilde(x, s, params).value.imag() / std::numbers::pi;
}

double cut_T_origin_mass(double q, const MaterialParams& params) {
  const double pi = std::numbers::pi;
  return std::log(params.b() / params.a()) / pi * (std::atan(std::log(params.b() * q) / pi) + pi / 2);
}

namespace {

// Gauss-Kronrod 7/15 nodes and weights on [-1, 1].
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double lo, hi, value, error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gk15(const Integrand& f, double lo, double hi, bool log_variable, long& evals) {
  const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
  auto g = [&](double u) {
    ++evals;
    if (!log_variable) return f(u);
    const double q = std::exp(u);
    return f(q) * q;
  };
  const double fc = g(c);
  double rk = fc * kWgk[7];
  double rg = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[static_cast<std::size_t>(j)];
    const double f1 = g(c - dx), f2 = g(c + dx);
    rk += kWgk[static_cast<std::size_t>(j)] * (f1 + f2);
    if (j % 2 == 1) rg += kWg[static_cast<std::size_t>(j / 2)] * (f1 + f2);
  }
  rk *= h;
  rg *= h;
  if (!std::isfinite(rk)) throw NumericalError("non-finite integrand value in quadrature");
  // the usual QUADPACK rescaling of |K - G| is deliberately not applied:
  // plain |K - G| is conservative for the smooth integrands used here
  return {lo, hi, rk, std::abs(rk - rg)};
}

} // namespace

IntegralResult integrate_adaptive(const Integrand& f, const std::vector<std::pair<double, double>>& panels,
                                  double rel_tol, double abs_tol, int max_subdivisions, bool log_variable) {
  IntegralResult res;
  std::priority_queue<Segment> heap;
  double total = 0.0, err = 0.0;
  for (const auto& [lo, hi] : panels) {
    if (!(hi > lo)) continue;
    Segment s = gk15(f, lo, hi, log_variable, res.evaluations);
    total += s.value;
    err += s.error;
    heap.push(s);
  }
  int splits = 0;
  while (!heap.empty() && err > std::max(abs_tol, rel_tol * std::abs(total))) {
    if (splits >= max_subdivisions)
      throw NumericalError("quadrature tolerance not met within the subdivision limit");
    Segment s = heap.top();
    const double mid = 0.5 * (s.lo + s.hi);
    // Below this width further splitting only shuffles rounding error.
    if (!(mid > s.lo && mid < s.hi) || (s.hi - s.lo) < 1e-13 * std::max(1.0, std::abs(mid))) break;
    heap.pop();
    Segment l = gk15(f, s.lo, mid, log_variable, res.evaluations);
    Segment r = gk15(f, mid, s.hi, log_variable, res.evaluations);
    total += l.value + r.value - s.value;
    err += l.error + r.error - s.error;
    heap.push(l);
    heap.push(r);
    ++splits;
  }
  // re-sum in a fixed order so the result does not depend on heap history
  std::vector<Segment> segs;
  segs.reserve(heap.size());
  while (!heap.empty()) {
    segs.push_back(heap.top());
    heap.pop();
  }
  std::sort(segs.begin(), segs.end(), [](const Segment& a, const Segment& b) { return a.lo < b.lo; });
  total = 0.0;
  err = 0.0;
  for (const auto& s : segs) {
    total += s.value;
    err += s.error;
  }
  res.value = total;
  res.error_estimate = err;
  return res;
}

IntegralResult integrate_cut(const Integrand& f, CutWeight w, double t, const QuadratureConfig& cfg,
                             const std::function<double(double)>& origin_mass) {
  cfg.validate();
  if (w == CutWeight::exp_decay && !(t > 0.0)) throw DomainError("e^{-qt} weight needs t > 0");
  if (w == CutWeight::step_response && !(t >= 0.0)) throw DomainError("step-response weight needs t >= 0");
  if (w == CutWeight::static_limit && origin_mass)
    throw DomainError("an origin closed form cannot be combined with the 1/q weight");

  auto fw = [&](double q) { return f(q) * cut_weight(w, q, t); };

  // Log region [q_min, min(1, q_max)], one panel per decade.
  const double q_split = std::min(1.0, cfg.q_max);
  std::vector<std::pair<double, double>> log_panels;
  {
    const double u0 = std::log(cfg.q_min), u1 = std::log(q_split);
    const int decades = std::max(1, static_cast<int>(std::ceil((u1 - u0) / std::log(10.0))));
    for (int k = 0; k < decades; ++k)
      log_panels.emplace_back(u0 + (u1 - u0) * k / decades, u0 + (u1 - u0) * (k + 1) / decades);
  }
  // Doubling panels on [1, q_max].
  std::vector<std::pair<double, double>> lin_panels;
  for (double lo = q_split; lo < cfg.q_max;) {
    const double hi = std::min(2.0 * lo, cfg.q_max);
    lin_panels.emplace_back(lo, hi);
    lo = hi;
  }

  const IntegralResult rl = integrate_adaptive(fw, log_panels, cfg.rel_tol, cfg.abs_tol / 2, cfg.max_subdivisions, true);
  const IntegralResult rq = integrate_adaptive(fw, lin_panels, cfg.rel_tol, cfg.abs_tol / 2, cfg.max_subdivisions, false);

  IntegralResult res;
  res.value = rl.value + rq.value;
  res.error_estimate = rl.error_estimate + rq.error_estimate;
  res.evaluations = rl.evaluations + rq.evaluations;

  // [0, q_min]
  if (origin_mass) {
    const double w0 = w == CutWeight::exp_decay ? 1.0 : t;
    const double m = origin_mass(cfg.q_min) * w0;
    res.value += m;
    // the weight varies by a relative q_min*t over the interval
    res.error_estimate += std::abs(m) * cfg.q_min * std::max(t, 1.0);
  } else {
    // exact for f*w constant near 0; the cut integrands drift like 1/ln^2 q,
    // so the step over one e-fold below q_min measures the error
    const double f0 = fw(cfg.q_min);
    const double m = cfg.q_min * f0;
    res.evaluations += 2;
    res.value += m;
    res.error_estimate += 2.0 * cfg.q_min * std::abs(f0 - fw(cfg.q_min / std::numbers::e));
  }

  // Tail beyond q_max from the observed decay of f*w.
  const double f_end = std::abs(fw(cfg.q_max));
  const double f_half = std::abs(fw(0.5 * cfg.q_max));
  res.evaluations += 2;
  if (f_end == 0.0) {
    res.truncation_estimate = 0.0;
  } else if (f_half > f_end) {
    const double scale = 0.5 * cfg.q_max / std::log(f_half / f_end);
    res.truncation_estimate = f_end * std::min(scale, cfg.q_max);
  } else {
    res.truncation_estimate = f_end * cfg.q_max;
  }
  if (!std::isfinite(res.value)) throw NumericalError("cut integral is not finite");
  return res;
}

} // namespace fracrod
