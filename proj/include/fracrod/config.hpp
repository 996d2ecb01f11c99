#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "fracrod/fields.hpp"
#include "fracrod/forcing.hpp"
#include "fracrod/grid.hpp"
#include "fracrod/material.hpp"
#include "fracrod/oracle.hpp"

namespace fracrod {

/// One requested field over an x list and a t list.
struct OutputSpec {
  FieldKind field = FieldKind::u_H;
  std::vector<double> xs;
  std::vector<double> ts;
};

struct CheckSpec {
  double tolerance = 1e-4;
  /// Samples per output drawn for the oracle comparison (spread over x and t).
  int samples = 9;
  OracleConfig oracle;
};

struct RunConfig {
  MaterialParams material{0.045, 0.5};
  ForcingSpec forcing;
  SolverConfig solver;
  std::vector<OutputSpec> outputs;
  CheckSpec check;
  /// Optional pole cache file; empty disables caching.
  std::string pole_cache;

  void validate() const;
};

/// Defaults reproduce the relaxation experiment: a = 0.045, b = 0.5,
/// upsilon0 = 1, q_max = 1000, 400 residues, u_H at x = 0.25, 0.75 on
/// t in [1, 10] and sigma_H at the same x on t in [1, 15].
RunConfig default_run_config();

/// Missing keys take defaults; unknown keys and bad values raise ConfigError
/// naming the offending field. t may be a list or {"start","stop","count"}.
RunConfig parse_run_config(const nlohmann::json& j);
RunConfig load_run_config(const std::string& path);

/// Fully expanded form; parse_run_config(to_json(c)) reproduces c exactly.
nlohmann::json to_json(const RunConfig& c);

std::vector<double> linspace(double start, double stop, int count);

} // namespace fracrod
