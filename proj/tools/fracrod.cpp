// fracrod: relaxation fields of a rod with a distributed-order constitutive
// law. Subcommands: relax, poles, check, nondim.

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "fracrod/config.hpp"
#include "fracrod/errors.hpp"
#include "fracrod/grid.hpp"
#include "fracrod/io.hpp"
#include "fracrod/nondim.hpp"
#include "fracrod/oracle.hpp"
#include "fracrod/poles.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace fracrod;

namespace {

constexpr const char* kVersion = "0.1.0";

enum ExitCode { kOk = 0, kConfig = 1, kNumerical = 2 };

struct Overrides {
  std::string config;
  std::string out = "fracrod_out";
  int threads = 0;
  std::optional<double> qmax;
  std::optional<int> nres;
  std::optional<double> tol;
  std::string pole_cache;
};

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config, "JSON run configuration or a previous run manifest");
  cmd->add_option("--out", o.out, "Output directory")->capture_default_str();
  cmd->add_option("--threads", o.threads, "OpenMP threads (0 = runtime default)");
  cmd->add_option("--qmax", o.qmax, "Cut integral truncation q_max");
  cmd->add_option("--nres", o.nres, "Number of residue pairs");
  cmd->add_option("--tol", o.tol, "Pole root tolerance on |sinh(sM(s))|");
  cmd->add_option("--pole-cache", o.pole_cache, "Pole cache file (read if matching, written otherwise)");
}

RunConfig resolve_config(const Overrides& o) {
  RunConfig cfg = default_run_config();
  if (!o.config.empty()) {
    std::ifstream in(o.config);
    if (!in) throw ConfigError("cannot open config file " + o.config);
    json j;
    try {
      in >> j;
    } catch (const json::exception& e) {
      throw ConfigError("config file " + o.config + " is not valid JSON: " + e.what());
    }
    // a manifest carries the full configuration under "config"
    if (j.is_object() && j.contains("tool") && j.contains("config")) j = j["config"];
    cfg = parse_run_config(j);
  }
  if (o.qmax) cfg.solver.quad.q_max = *o.qmax;
  if (o.nres) cfg.solver.n_residues = *o.nres;
  if (o.tol) cfg.solver.poles.tol = *o.tol;
  if (!o.pole_cache.empty()) cfg.pole_cache = o.pole_cache;
  cfg.validate();
  return cfg;
}

void apply_threads(int threads) {
  if (threads < 0) throw ConfigError("--threads must be >= 0");
  if (threads > 0) omp_set_num_threads(threads);
}

PoleSet obtain_poles(const RunConfig& cfg, int N) {
  if (!cfg.pole_cache.empty()) {
    if (auto cached = load_pole_cache(cfg.pole_cache, cfg.material, N, cfg.solver.poles.tol)) return *cached;
  }
  PoleSet set = build_pole_set(N, cfg.material, cfg.solver.poles);
  if (!cfg.pole_cache.empty()) save_pole_cache(cfg.pole_cache, set);
  return set;
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory " + dir + ": " + ec.message());
}

int cmd_relax(const Overrides& o) {
  apply_threads(o.threads);
  const RunConfig cfg = resolve_config(o);
  if (cfg.outputs.empty()) throw ConfigError("configuration has no outputs");
  const auto start = std::chrono::steady_clock::now();
  const PoleSet poles = obtain_poles(cfg, cfg.solver.n_residues);

  std::vector<FieldGrid> grids;
  json diagnostics = json::array();
  for (const auto& out : cfg.outputs) {
    grids.push_back(evaluate_grid(out.field, out.xs, out.ts, cfg.forcing, poles, cfg.solver));
    const FieldGrid& g = grids.back();
    double max_err = 0.0, min_v = INFINITY, max_v = -INFINITY;
    for (const auto& s : g.samples) {
      max_err = std::max(max_err, s.error_estimate);
      min_v = std::min(min_v, s.value);
      max_v = std::max(max_v, s.value);
    }
    diagnostics.push_back({{"field", to_string(out.field)},
                           {"samples", g.samples.size()},
                           {"min_value", min_v},
                           {"max_value", max_v},
                           {"max_error_estimate", max_err}});
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  ensure_dir(o.out);
  const fs::path csv_path = fs::path(o.out) / "fields.csv";
  {
    std::ofstream csv(csv_path);
    if (!csv) throw ConfigError("cannot write " + csv_path.string());
    write_csv(csv, grids);
  }
  json manifest = {{"tool", "fracrod"},
                   {"version", kVersion},
                   {"command", "relax"},
                   {"config", to_json(cfg)},
                   {"csv", "fields.csv"},
                   {"wall_clock_seconds", wall},
                   {"diagnostics", diagnostics}};
  std::ofstream(fs::path(o.out) / "manifest.json") << manifest.dump(2) << '\n';

  for (const auto& d : diagnostics)
    std::printf("%-8s %6d samples  max error estimate %.3g\n", d["field"].get<std::string>().c_str(),
                d["samples"].get<int>(), d["max_error_estimate"].get<double>());
  std::printf("wrote %s\n", csv_path.string().c_str());
  return kOk;
}

int cmd_poles(const Overrides& o, std::optional<double> a, std::optional<double> b, int N) {
  apply_threads(o.threads);
  if (N < 1) throw ConfigError("--N must be at least 1");
  RunConfig cfg = resolve_config(o);
  if (a || b) {
    try {
      cfg.material = MaterialParams(a.value_or(cfg.material.a()), b.value_or(cfg.material.b()));
    } catch (const DomainError& e) {
      throw ConfigError(e.what());
    }
  }
  const PoleSet set = obtain_poles(cfg, N);
  std::printf("%5s %24s %24s %10s %10s %8s\n", "n", "Re s", "Im s", "residual", "asym gap", "simple");
  for (const Pole& p : set.poles()) {
    const complex g = asymptotic_guess(p.n, cfg.material);
    std::printf("%5d %24.16e %24.16e %10.2e %10.2e %8s\n", p.n, p.location.real(), p.location.imag(), p.residual,
                std::abs(p.location - g) / std::abs(p.location), p.simple ? "yes" : "NO");
  }
  ensure_dir(o.out);
  const fs::path path = fs::path(o.out) / "poles.json";
  save_pole_cache(path.string(), set);
  std::printf("wrote %s\n", path.string().c_str());
  return kOk;
}

LaplaceTransform image_for(FieldKind k, double x, const ForcingSpec& f, const MaterialParams& m) {
  ForcingSpec heaviside = f;
  heaviside.kind = ForcingKind::none;
  ForcingSpec extra = f;
  extra.upsilon0 = 0.0;
  switch (k) {
  case FieldKind::P:
    return image_P(x, m);
  case FieldKind::T:
    return image_T(x, m);
  case FieldKind::u_H:
    return image_displacement(x, heaviside, m);
  case FieldKind::sigma_H:
    return image_stress(x, heaviside, m);
  case FieldKind::u_F:
    return image_displacement(x, extra, m);
  case FieldKind::u:
    return image_displacement(x, f, m);
  case FieldKind::sigma_F:
    return image_stress(x, f, m);
  }
  throw ConfigError("unknown field");
}

// Spread k picks over [0, n).
std::vector<std::size_t> spread(std::size_t n, std::size_t k) {
  std::vector<std::size_t> idx;
  k = std::min(k, n);
  for (std::size_t i = 0; i < k; ++i) idx.push_back(k == 1 ? 0 : i * (n - 1) / (k - 1));
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  return idx;
}

int cmd_check(const Overrides& o, std::optional<int> samples) {
  apply_threads(o.threads);
  RunConfig cfg = resolve_config(o);
  if (samples) cfg.check.samples = *samples;
  if (cfg.check.samples < 1) throw ConfigError("--samples must be >= 1");
  if (cfg.outputs.empty()) throw ConfigError("configuration has no outputs to check");
  const PoleSet poles = obtain_poles(cfg, cfg.solver.n_residues);

  double worst = 0.0;
  int failures = 0;
  std::printf("%-8s %8s %8s %22s %22s %10s\n", "field", "x", "t", "series", "oracle", "rel diff");
  for (const auto& out : cfg.outputs) {
    // roughly sqrt(samples) per axis
    const auto per_axis = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(cfg.check.samples))));
    for (std::size_t ix : spread(out.xs.size(), per_axis))
      for (std::size_t it : spread(out.ts.size(), per_axis)) {
        const double x = out.xs[ix], t = out.ts[it];
        if (!(t > 0.0)) continue; // every field is identically 0 for t < 0
        try {
          const FieldSample s = evaluate_field(out.field, x, t, cfg.forcing, poles, cfg.solver);
          const OracleResult r = invert(image_for(out.field, x, cfg.forcing, cfg.material), t, cfg.check.oracle);
          // absolute below 1e-10, where relative differences stop meaning anything
          const double diff = std::abs(s.value - r.value) / std::max(std::abs(r.value), 1e-10);
          worst = std::max(worst, diff);
          std::printf("%-8s %8.4f %8.4f %22.15e %22.15e %10.2e\n", to_string(out.field).c_str(), x, t, s.value,
                      r.value, diff);
        } catch (const std::exception& e) {
          ++failures;
          std::printf("%-8s %8.4f %8.4f  failed: %s\n", to_string(out.field).c_str(), x, t, e.what());
        }
      }
  }
  const bool pass = failures == 0 && worst < cfg.check.tolerance;
  std::printf("max relative discrepancy %.3e (tolerance %.1e): %s\n", worst, cfg.check.tolerance,
              pass ? "PASS" : "FAIL");
  return pass ? kOk : kNumerical;
}

int cmd_nondim(const PhysicalState& p, bool inverse) {
  json j;
  if (!inverse) {
    const DimensionlessState d = nondimensionalize(p);
    j = {{"x", d.x}, {"t", d.t}, {"u", d.u}, {"sigma", d.sigma}, {"upsilon", d.upsilon},
         {"a", d.a}, {"b", d.b}, {"time_unit", d.time_unit}};
  } else {
    DimensionlessState d;
    d.x = p.x;
    d.t = p.t;
    d.u = p.u;
    d.sigma = p.sigma;
    d.upsilon = p.upsilon;
    d.a = p.a_phys;
    d.b = p.b_phys;
    const PhysicalState r = dimensionalize(d, p.L, p.rho, p.E);
    j = {{"x", r.x}, {"t", r.t}, {"u", r.u}, {"sigma", r.sigma}, {"upsilon", r.upsilon},
         {"a", r.a_phys}, {"b", r.b_phys}};
  }
  std::cout << j.dump(2) << '\n';
  return kOk;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Displacement and stress in a distributed-order viscoelastic rod"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  Overrides relax_o, poles_o, check_o;
  auto* relax = app.add_subcommand("relax", "Compute the configured fields and write CSV + manifest");
  add_common(relax, relax_o);

  auto* poles = app.add_subcommand("poles", "Build the pole set and write poles.json");
  add_common(poles, poles_o);
  std::optional<double> pa, pb;
  int pN = 400;
  poles->add_option("--a", pa, "Weight base a (default from config)");
  poles->add_option("--b", pb, "Weight base b (default from config)");
  poles->add_option("--N", pN, "Number of poles")->capture_default_str();

  auto* check = app.add_subcommand("check", "Compare sampled fields against the inversion oracle");
  add_common(check, check_o);
  std::optional<int> check_samples;
  check->add_option("--samples", check_samples, "Samples per output (default from config)");

  auto* nondim = app.add_subcommand("nondim", "Convert a physical state to dimensionless variables");
  PhysicalState phys;
  bool inverse = false;
  nondim->add_option("--L", phys.L, "Rod length")->capture_default_str();
  nondim->add_option("--rho", phys.rho, "Density")->capture_default_str();
  nondim->add_option("--E", phys.E, "Young modulus")->capture_default_str();
  nondim->add_option("--x", phys.x, "Position");
  nondim->add_option("--t", phys.t, "Time");
  nondim->add_option("--u", phys.u, "Displacement");
  nondim->add_option("--sigma", phys.sigma, "Stress");
  nondim->add_option("--upsilon", phys.upsilon, "Boundary displacement");
  nondim->add_option("--a", phys.a_phys, "Weight base a (time units)")->capture_default_str();
  nondim->add_option("--b", phys.b_phys, "Weight base b (time units)")->capture_default_str();
  nondim->add_flag("--inverse", inverse, "Treat inputs as dimensionless and convert back");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfig;
  }

  try {
    if (*relax) return cmd_relax(relax_o);
    if (*poles) return cmd_poles(poles_o, pa, pb, pN);
    if (*check) return cmd_check(check_o, check_samples);
    if (*nondim) return cmd_nondim(phys, inverse);
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kConfig;
  } catch (const DomainError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kConfig;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumerical;
  }
  return kOk;
}
