#include "fracrod/io.hpp"

#include <cstdio>
#include <fstream>

#include "fracrod/errors.hpp"

namespace fracrod {

using nlohmann::json;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(std::ostream& out, const std::vector<FieldGrid>& grids) {
  out << kCsvHeader << '\n';
  for (const auto& g : grids) {
    const std::string name = to_string(g.field);
    for (std::size_t ix = 0; ix < g.xs.size(); ++ix)
      for (std::size_t it = 0; it < g.ts.size(); ++it) {
        const FieldSample& s = g.at(ix, it);
        out << name << ',' << format_double(s.x) << ',' << format_double(s.t) << ',' << format_double(s.value) << ','
            << format_double(s.cut_part) << ',' << format_double(s.residue_part) << ','
            << format_double(s.error_estimate) << '\n';
      }
  }
}

namespace {

std::string seed_name(PoleSeed s) {
  switch (s) {
  case PoleSeed::asymptotic:
    return "asymptotic";
  case PoleSeed::fixed_point:
    return "fixed_point";
  case PoleSeed::continuation:
    return "continuation";
  case PoleSeed::exact:
    return "exact";
  }
  return "asymptotic";
}

PoleSeed seed_from(const std::string& s) {
  if (s == "asymptotic") return PoleSeed::asymptotic;
  if (s == "fixed_point") return PoleSeed::fixed_point;
  if (s == "continuation") return PoleSeed::continuation;
  if (s == "exact") return PoleSeed::exact;
  throw ConfigError("pole cache: unknown seed '" + s + "'");
}

} // namespace

json to_json(const PoleSet& poles) {
  json arr = json::array();
  for (const Pole& p : poles.poles())
    arr.push_back({{"n", p.n},
                   {"re", p.location.real()},
                   {"im", p.location.imag()},
                   {"dre", p.derivative_at_pole.real()},
                   {"dim", p.derivative_at_pole.imag()},
                   {"residual", p.residual},
                   {"simple", p.simple},
                   {"seed", seed_name(p.seed)},
                   {"iterations", p.iterations}});
  return {{"a", poles.params().a()},
          {"b", poles.params().b()},
          {"N", poles.size()},
          {"tol", poles.tol()},
          {"poles", arr}};
}

PoleSet pole_set_from_json(const json& j) {
  try {
    const MaterialParams params(j.at("a").get<double>(), j.at("b").get<double>());
    const double tol = j.at("tol").get<double>();
    std::vector<Pole> poles;
    for (const auto& e : j.at("poles")) {
      Pole p;
      p.n = e.at("n").get<int>();
      p.location = {e.at("re").get<double>(), e.at("im").get<double>()};
      p.derivative_at_pole = {e.at("dre").get<double>(), e.at("dim").get<double>()};
      p.residual = e.at("residual").get<double>();
      p.simple = e.at("simple").get<bool>();
      p.seed = seed_from(e.at("seed").get<std::string>());
      p.iterations = e.at("iterations").get<int>();
      poles.push_back(p);
    }
    if (poles.size() != j.at("N").get<std::size_t>()) throw ConfigError("pole cache: N does not match the list");
    return PoleSet(params, tol, std::move(poles));
  } catch (const json::exception& e) {
    throw ConfigError(std::string("pole cache: malformed document: ") + e.what());
  } catch (const DomainError& e) {
    throw ConfigError(std::string("pole cache: ") + e.what());
  } catch (const NumericalError& e) {
    throw ConfigError(std::string("pole cache: ") + e.what());
  }
}

void save_pole_cache(const std::string& path, const PoleSet& poles) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write pole cache " + path);
  out << to_json(poles).dump(1) << '\n';
}

std::optional<PoleSet> load_pole_cache(const std::string& path, const MaterialParams& params, int N, double tol) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("pole cache " + path + " is not valid JSON: " + e.what());
  }
  PoleSet set = pole_set_from_json(j);
  if (!(set.params() == params) || set.tol() != tol || static_cast<int>(set.size()) != N) return std::nullopt;
  return set;
}

} // namespace fracrod
