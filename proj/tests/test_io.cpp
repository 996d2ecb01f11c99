#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "fracrod/errors.hpp"
#include "fracrod/io.hpp"
#include "support.hpp"

using namespace fracrod;
using testing_support::kReference;

namespace {

std::string temp_path(const char* name) {
  return (std::filesystem::temp_directory_path() / (std::string("fracrod_io_") + name)).string();
}

} // namespace

TEST_SUITE("io") {

TEST_CASE("doubles print with round-trip precision") {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 12345.678901234567, 0.0}) CHECK(std::stod(format_double(v)) == v);
  CHECK(format_double(0.5) == "0.5");
}

TEST_CASE("csv layout") {
  FieldGrid g;
  g.field = FieldKind::sigma_H;
  g.xs = {0.25, 0.75};
  g.ts = {1.0};
  FieldSample a;
  a.x = 0.25;
  a.t = 1.0;
  a.value = 1.5;
  a.cut_part = 0.25;
  a.residue_part = 0.25;
  a.constant_part = 1.0;
  a.error_estimate = 1e-9;
  FieldSample b = a;
  b.x = 0.75;
  g.samples = {a, b};
  std::ostringstream out;
  write_csv(out, {g});
  CHECK(out.str() == std::string(kCsvHeader) + "\nsigma_H,0.25,1,1.5,0.25,0.25,1.0000000000000001e-09\n" +
                         "sigma_H,0.75,1,1.5,0.25,0.25,1.0000000000000001e-09\n");
}

TEST_CASE("pole cache round trip is exact") {
  const PoleSet set = build_pole_set(30, kReference);
  const std::string path = temp_path("cache.json");
  save_pole_cache(path, set);
  const auto back = load_pole_cache(path, kReference, 30, set.tol());
  REQUIRE(back.has_value());
  REQUIRE(back->size() == set.size());
  for (std::size_t i = 0; i < set.size(); ++i) {
    const Pole& p = set.poles()[i];
    const Pole& q = back->poles()[i];
    CHECK(p.n == q.n);
    CHECK(p.location == q.location);
    CHECK(p.derivative_at_pole == q.derivative_at_pole);
    CHECK(p.residual == q.residual);
    CHECK(p.simple == q.simple);
    CHECK(p.seed == q.seed);
  }

  CHECK_FALSE(load_pole_cache(path, kReference, 31, set.tol()).has_value());
  CHECK_FALSE(load_pole_cache(path, kReference, 30, 1e-10).has_value());
  CHECK_FALSE(load_pole_cache(path, MaterialParams(0.045, 0.6), 30, set.tol()).has_value());
  CHECK_FALSE(load_pole_cache(temp_path("missing.json"), kReference, 30, set.tol()).has_value());
  std::remove(path.c_str());
}

TEST_CASE("malformed caches are configuration errors") {
  const std::string path = temp_path("bad.json");
  std::ofstream(path) << "{ not json";
  CHECK_THROWS_AS(load_pole_cache(path, kReference, 30, 1e-12), ConfigError);
  std::remove(path.c_str());

  nlohmann::json j = to_json(build_pole_set(3, kReference));
  auto missing = j;
  missing["poles"][1].erase("re");
  CHECK_THROWS_AS(pole_set_from_json(missing), ConfigError);
  auto short_list = j;
  short_list["N"] = 4;
  CHECK_THROWS_AS(pole_set_from_json(short_list), ConfigError);
  auto bad_seed = j;
  bad_seed["poles"][0]["seed"] = "guess";
  CHECK_THROWS_AS(pole_set_from_json(bad_seed), ConfigError);
  auto bad_material = j;
  bad_material["a"] = -1.0;
  CHECK_THROWS_AS(pole_set_from_json(bad_material), ConfigError);
}

} // TEST_SUITE
