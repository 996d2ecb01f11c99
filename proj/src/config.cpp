#include "fracrod/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

#include "fracrod/errors.hpp"

namespace fracrod {

using nlohmann::json;

std::vector<double> linspace(double start, double stop, int count) {
  if (count < 1) throw ConfigError("linspace count must be >= 1");
  std::vector<double> v(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k)
    v[static_cast<std::size_t>(k)] = count == 1 ? start : start + (stop - start) * k / (count - 1);
  return v;
}

void RunConfig::validate() const {
  forcing.validate();
  solver.validate();
  check.oracle.validate();
  if (!(check.tolerance > 0.0)) throw ConfigError("check.tolerance must be positive");
  if (check.samples < 1) throw ConfigError("check.samples must be >= 1");
  for (std::size_t i = 0; i < outputs.size(); ++i) {
    const auto& o = outputs[i];
    const std::string where = "outputs[" + std::to_string(i) + "]";
    if (o.xs.empty()) throw ConfigError(where + ".x is empty");
    if (o.ts.empty()) throw ConfigError(where + ".t is empty");
    for (double x : o.xs)
      if (!(x >= 0.0 && x <= 1.0)) throw ConfigError(where + ".x values must lie in [0, 1]");
    if (!std::is_sorted(o.xs.begin(), o.xs.end())) throw ConfigError(where + ".x must be sorted");
    if (!std::is_sorted(o.ts.begin(), o.ts.end())) throw ConfigError(where + ".t must be sorted");
    for (double t : o.ts)
      if (!std::isfinite(t)) throw ConfigError(where + ".t values must be finite");
    if ((o.field == FieldKind::u || o.field == FieldKind::u_F) && !forcing.admissible_for_displacement())
      throw ConfigError("forcing.kind: " + to_string(forcing.kind) + " is not admissible for displacement outputs");
  }
}

RunConfig default_run_config() {
  RunConfig c;
  c.outputs.push_back({FieldKind::u_H, {0.25, 0.75}, linspace(1.0, 10.0, 181)});
  c.outputs.push_back({FieldKind::sigma_H, {0.25, 0.75}, linspace(1.0, 15.0, 281)});
  return c;
}

namespace {

void reject_unknown(const json& j, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw ConfigError(where + " must be a JSON object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!ok.count(it.key())) throw ConfigError("unknown key '" + (where.empty() ? "" : where + ".") + it.key() + "'");
}

template <class T>
void read(const json& j, const char* key, T& out, const std::string& where) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(where + "." + key + ": wrong type");
  }
}

std::vector<double> read_axis(const json& j, const std::string& where) {
  if (j.is_number()) return {j.get<double>()};
  if (j.is_array()) {
    std::vector<double> v;
    for (const auto& e : j) {
      if (!e.is_number()) throw ConfigError(where + ": entries must be numbers");
      v.push_back(e.get<double>());
    }
    return v;
  }
  if (j.is_object()) {
    reject_unknown(j, where, {"start", "stop", "count"});
    double start = 0, stop = 0;
    int count = 0;
    if (!j.contains("start") || !j.contains("stop") || !j.contains("count"))
      throw ConfigError(where + ": range needs start, stop and count");
    read(j, "start", start, where);
    read(j, "stop", stop, where);
    read(j, "count", count, where);
    if (count < 1) throw ConfigError(where + ".count must be >= 1");
    if (!(stop >= start)) throw ConfigError(where + ": stop must not be below start");
    return linspace(start, stop, count);
  }
  throw ConfigError(where + ": expected a number, a list or a range object");
}

Precision precision_from_string(const std::string& s) {
  if (s == "double") return Precision::double_precision;
  if (s == "extended") return Precision::extended;
  throw ConfigError("check.oracle.precision: expected 'double' or 'extended'");
}

std::string to_string(Precision p) { return p == Precision::double_precision ? "double" : "extended"; }

} // namespace

RunConfig parse_run_config(const json& j) {
  RunConfig c = default_run_config();
  reject_unknown(j, "", {"material", "forcing", "solver", "outputs", "check", "pole_cache"});

  if (j.contains("material")) {
    const json& m = j["material"];
    reject_unknown(m, "material", {"a", "b"});
    double a = c.material.a(), b = c.material.b();
    read(m, "a", a, "material");
    read(m, "b", b, "material");
    try {
      c.material = MaterialParams(a, b);
    } catch (const DomainError& e) {
      throw ConfigError(std::string("material: ") + e.what());
    }
  }
  if (j.contains("forcing")) {
    const json& f = j["forcing"];
    reject_unknown(f, "forcing", {"upsilon0", "kind", "c", "tau"});
    read(f, "upsilon0", c.forcing.upsilon0, "forcing");
    std::string kind = to_string(c.forcing.kind);
    read(f, "kind", kind, "forcing");
    c.forcing.kind = forcing_kind_from_string(kind);
    read(f, "c", c.forcing.c, "forcing");
    read(f, "tau", c.forcing.tau, "forcing");
  }
  if (j.contains("solver")) {
    const json& s = j["solver"];
    reject_unknown(s, "solver",
                   {"q_max", "q_min", "rel_tol", "abs_tol", "max_subdivisions", "n_residues", "pole_tol",
                    "pole_max_iterations"});
    read(s, "q_max", c.solver.quad.q_max, "solver");
    read(s, "q_min", c.solver.quad.q_min, "solver");
    read(s, "rel_tol", c.solver.quad.rel_tol, "solver");
    read(s, "abs_tol", c.solver.quad.abs_tol, "solver");
    read(s, "max_subdivisions", c.solver.quad.max_subdivisions, "solver");
    read(s, "n_residues", c.solver.n_residues, "solver");
    read(s, "pole_tol", c.solver.poles.tol, "solver");
    read(s, "pole_max_iterations", c.solver.poles.max_iterations, "solver");
  }
  if (j.contains("outputs")) {
    const json& arr = j["outputs"];
    if (!arr.is_array()) throw ConfigError("outputs must be a list");
    c.outputs.clear();
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string where = "outputs[" + std::to_string(i) + "]";
      const json& o = arr[i];
      reject_unknown(o, where, {"field", "x", "t"});
      if (!o.contains("field") || !o.contains("x") || !o.contains("t"))
        throw ConfigError(where + ": needs field, x and t");
      OutputSpec spec;
      std::string field;
      read(o, "field", field, where);
      spec.field = field_kind_from_string(field);
      spec.xs = read_axis(o["x"], where + ".x");
      spec.ts = read_axis(o["t"], where + ".t");
      c.outputs.push_back(std::move(spec));
    }
  }
  if (j.contains("check")) {
    const json& k = j["check"];
    reject_unknown(k, "check", {"tolerance", "samples", "oracle"});
    read(k, "tolerance", c.check.tolerance, "check");
    read(k, "samples", c.check.samples, "check");
    if (k.contains("oracle")) {
      const json& o = k["oracle"];
      reject_unknown(o, "check.oracle", {"method", "abscissa", "nodes", "precision"});
      std::string method = to_string(c.check.oracle.method);
      read(o, "method", method, "check.oracle");
      c.check.oracle.method = oracle_method_from_string(method);
      read(o, "abscissa", c.check.oracle.abscissa, "check.oracle");
      read(o, "nodes", c.check.oracle.nodes, "check.oracle");
      std::string prec = to_string(c.check.oracle.precision);
      read(o, "precision", prec, "check.oracle");
      c.check.oracle.precision = precision_from_string(prec);
    }
  }
  read(j, "pole_cache", c.pole_cache, "config");
  c.validate();
  return c;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("config file " + path + " is not valid JSON: " + e.what());
  }
  return parse_run_config(j);
}

json to_json(const RunConfig& c) {
  json j;
  j["material"] = {{"a", c.material.a()}, {"b", c.material.b()}};
  j["forcing"] = {{"upsilon0", c.forcing.upsilon0},
                  {"kind", to_string(c.forcing.kind)},
                  {"c", c.forcing.c},
                  {"tau", c.forcing.tau}};
  j["solver"] = {{"q_max", c.solver.quad.q_max},
                 {"q_min", c.solver.quad.q_min},
                 {"rel_tol", c.solver.quad.rel_tol},
                 {"abs_tol", c.solver.quad.abs_tol},
                 {"max_subdivisions", c.solver.quad.max_subdivisions},
                 {"n_residues", c.solver.n_residues},
                 {"pole_tol", c.solver.poles.tol},
                 {"pole_max_iterations", c.solver.poles.max_iterations}};
  json outs = json::array();
  for (const auto& o : c.outputs) outs.push_back({{"field", to_string(o.field)}, {"x", o.xs}, {"t", o.ts}});
  j["outputs"] = outs;
  j["check"] = {{"tolerance", c.check.tolerance},
                {"samples", c.check.samples},
                {"oracle",
                 {{"method", to_string(c.check.oracle.method)},
                  {"abscissa", c.check.oracle.abscissa},
                  {"nodes", c.check.oracle.nodes},
                  {"precision", to_string(c.check.oracle.precision)}}}};
  j["pole_cache"] = c.pole_cache;
  return j;
}

} // namespace fracrod
