#include "fracrod/grid.hpp"

#include <algorithm>
#include <exception>
#include <optional>

#include "fracrod/errors.hpp"

namespace fracrod {

std::string to_string(FieldKind k) {
  switch (k) {
  case FieldKind::P:
    return "P";
  case FieldKind::u_H:
    return "u_H";
  case FieldKind::T:
    return "T";
  case FieldKind::sigma_H:
    return "sigma_H";
  case FieldKind::u_F:
    return "u_F";
  case FieldKind::u:
    return "u";
  case FieldKind::sigma_F:
    return "sigma_F";
  }
  return "?";
}

FieldKind field_kind_from_string(const std::string& name) {
  for (FieldKind k : {FieldKind::P, FieldKind::u_H, FieldKind::T, FieldKind::sigma_H, FieldKind::u_F, FieldKind::u,
                      FieldKind::sigma_F})
    if (to_string(k) == name) return k;
  throw ConfigError("unknown field '" + name + "' (expected P, u_H, T, sigma_H, u_F, u or sigma_F)");
}

namespace {

bool uses_static_moment(FieldKind k) { return k == FieldKind::u_H || k == FieldKind::u; }

FieldSample evaluate_one(FieldKind kind, double x, double t, const ForcingSpec& forcing, const PoleSet& poles,
                         const SolverConfig& cfg, const IntegralResult* moment) {
  switch (kind) {
  case FieldKind::P:
    return compute_P(x, t, poles, cfg);
  case FieldKind::u_H:
    return compute_u_H(x, t, forcing.upsilon0, poles, cfg, moment);
  case FieldKind::T:
    return compute_T(x, t, poles, cfg);
  case FieldKind::sigma_H:
    return compute_sigma_H(x, t, forcing.upsilon0, poles, cfg);
  case FieldKind::u_F:
    return compute_u_F(x, t, forcing, poles, cfg);
  case FieldKind::u:
    return compute_u_total(x, t, forcing, poles, cfg, moment);
  case FieldKind::sigma_F:
    return compute_sigma_F(x, t, forcing, poles, cfg);
  }
  throw DomainError("unknown field kind");
}

void check_axis(const std::vector<double>& v, const char* name) {
  if (v.empty()) throw ConfigError(std::string(name) + " axis is empty");
  if (!std::is_sorted(v.begin(), v.end())) throw ConfigError(std::string(name) + " axis must be sorted");
}

} // namespace

FieldSample evaluate_field(FieldKind kind, double x, double t, const ForcingSpec& forcing, const PoleSet& poles,
                           const SolverConfig& cfg) {
  return evaluate_one(kind, x, t, forcing, poles, cfg, nullptr);
}

FieldGrid evaluate_grid(FieldKind kind, const std::vector<double>& xs, const std::vector<double>& ts,
                        const ForcingSpec& forcing, const PoleSet& poles, const SolverConfig& cfg, Execution exec) {
  cfg.validate();
  forcing.validate();
  check_axis(xs, "x");
  check_axis(ts, "t");
  for (double x : xs)
    if (!(x >= 0.0 && x <= 1.0)) throw ConfigError("x values must lie in [0, 1]");

  FieldGrid g;
  g.field = kind;
  g.xs = xs;
  g.ts = ts;
  g.samples.resize(xs.size() * ts.size());

  const long nx = static_cast<long>(xs.size());
  const long total = static_cast<long>(g.samples.size());
  std::vector<IntegralResult> moments(xs.size());
  const bool need_moments = uses_static_moment(kind);
  std::exception_ptr failure;

  auto moment_task = [&](long i) {
    moments[static_cast<std::size_t>(i)] = static_cut_moment(xs[static_cast<std::size_t>(i)], poles.params(), cfg);
  };
  auto sample_task = [&](long k) {
    const auto ix = static_cast<std::size_t>(k) / ts.size();
    const auto it = static_cast<std::size_t>(k) % ts.size();
    g.samples[static_cast<std::size_t>(k)] =
        evaluate_one(kind, xs[ix], ts[it], forcing, poles, cfg, need_moments ? &moments[ix] : nullptr);
  };

  if (exec == Execution::serial) {
    if (need_moments)
      for (long i = 0; i < nx; ++i) moment_task(i);
    for (long k = 0; k < total; ++k) sample_task(k);
    return g;
  }

  if (need_moments) {
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < nx; ++i) {
      try {
        moment_task(i);
      } catch (...) {
#pragma omp critical(fracrod_grid_failure)
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);
  }
#pragma omp parallel for schedule(dynamic)
  for (long k = 0; k < total; ++k) {
    try {
      sample_task(k);
    } catch (...) {
#pragma omp critical(fracrod_grid_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return g;
}

} // namespace fracrod
