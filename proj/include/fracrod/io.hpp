#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fracrod/grid.hpp"
#include "fracrod/poles.hpp"

namespace fracrod {

/// %.17g, used for every CSV number; round-trips doubles exactly.
std::string format_double(double v);

inline constexpr const char* kCsvHeader = "field,x,t,value,cut_part,residue_part,error_estimate";

/// Header plus one row per sample, grids in order, x-major within a grid.
void write_csv(std::ostream& out, const std::vector<FieldGrid>& grids);

nlohmann::json to_json(const PoleSet& poles);
/// Throws ConfigError on malformed input; PoleSet invariants are rechecked.
PoleSet pole_set_from_json(const nlohmann::json& j);

void save_pole_cache(const std::string& path, const PoleSet& poles);
/// Returns the cached set when the file exists and its key (a, b, N, tol)
/// matches exactly; nullopt otherwise.
std::optional<PoleSet> load_pole_cache(const std::string& path, const MaterialParams& params, int N, double tol);

} // namespace fracrod
