#pragma once

#include <string>
#include <vector>

#include "fracrod/fields.hpp"

namespace fracrod {

enum class FieldKind { P, u_H, T, sigma_H, u_F, u, sigma_F };

std::string to_string(FieldKind k);
FieldKind field_kind_from_string(const std::string& name);

/// Samples of one field over xs x ts, row-major in x.
struct FieldGrid {
  FieldKind field = FieldKind::u_H;
  std::vector<double> xs;
  std::vector<double> ts;
  std::vector<FieldSample> samples;

  const FieldSample& at(std::size_t ix, std::size_t it) const { return samples[ix * ts.size() + it]; }
};

/// Evaluates one field at a single point; dispatches on kind.
FieldSample evaluate_field(FieldKind kind, double x, double t, const ForcingSpec& forcing, const PoleSet& poles,
                           const SolverConfig& cfg);

/// Data-parallel over samples. Each sample is computed independently with a
/// fixed summation order, so both execution modes return identical grids.
FieldGrid evaluate_grid(FieldKind kind, const std::vector<double>& xs, const std::vector<double>& ts,
                        const ForcingSpec& forcing, const PoleSet& poles, const SolverConfig& cfg,
                        Execution exec = Execution::parallel);

} // namespace fracrod
