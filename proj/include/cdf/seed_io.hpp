#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "cdf/seeds.hpp"

namespace cdf {

// Seed files: {"n": n, "m": m, "B": [[...] x m], "labels": [...], "D": [[...] x m], "d": [...]}.
// Only "n" and "B" are required.
Seed seed_from_json(const nlohmann::json& j);
nlohmann::json seed_to_json(const Seed& s);
Seed load_seed_file(const std::string& path);

std::vector<std::string> bundled_seed_names();
Seed bundled_seed(const std::string& name);

// A bundled name or a path to a seed file.
Seed resolve_seed(const std::string& name_or_path);

}  // namespace cdf
