#include "cdf/seed_io.hpp"

#include <filesystem>
#include <fstream>
#include <string_view>
#include <utility>

#include "cdf/errors.hpp"

namespace cdf {

namespace detail {
const std::vector<std::pair<std::string_view, std::string_view>>& bundled_seed_table();
}

namespace {

IntMatrix read_matrix(const nlohmann::json& j, const char* what) {
  if (!j.is_array()) throw InputError(std::string(what) + " must be an array of rows");
  std::vector<IntVec> rows;
  for (const auto& r : j) {
    if (!r.is_array()) throw InputError(std::string(what) + " must be an array of rows");
    IntVec row;
    for (const auto& x : r) {
      if (!x.is_number_integer()) throw InputError(std::string(what) + " entries must be integers");
      row.push_back(x.get<Int>());
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw InputError(std::string(what) + " rows must have equal length");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw InputError(std::string(what) + " is empty");
  return IntMatrix::from_rows(rows);
}

Seed parse_seed(const nlohmann::json& j) {
  if (!j.is_object()) throw InputError("seed must be a JSON object");
  if (!j.contains("n") || !j.contains("B")) throw InputError("seed needs \"n\" and \"B\"");
  if (!j["n"].is_number_integer() || j["n"].get<long>() < 1) throw InputError("\"n\" must be a positive integer");
  const auto n = j["n"].get<std::size_t>();
  IntMatrix b = read_matrix(j["B"], "B");
  if (j.contains("m") && j["m"].get<std::size_t>() != b.rows()) throw InputError("\"m\" does not match B");
  std::optional<IntVec> d;
  if (j.contains("d")) d = j["d"].get<IntVec>();
  std::vector<std::string> labels;
  if (j.contains("labels")) labels = j["labels"].get<std::vector<std::string>>();
  std::optional<IntMatrix> grading;
  if (j.contains("D")) grading = read_matrix(j["D"], "D");
  return make_seed(ExchangeMatrix(std::move(b), n, d), std::move(labels), std::move(grading));
}

}  // namespace

Seed seed_from_json(const nlohmann::json& j) {
  try {
    return parse_seed(j);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed seed: ") + e.what());
  }
}

nlohmann::json seed_to_json(const Seed& s) {
  nlohmann::json j;
  j["n"] = s.matrix.n();
  j["m"] = s.matrix.m();
  j["B"] = s.matrix.entries().to_rows();
  j["d"] = s.matrix.symmetrizer();
  j["labels"] = s.var_ids;
  if (s.grading) j["D"] = s.grading->to_rows();
  return j;
}

Seed load_seed_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open seed file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError("malformed seed file " + path + ": " + e.what());
  }
  return seed_from_json(j);
}

std::vector<std::string> bundled_seed_names() {
  std::vector<std::string> out;
  for (const auto& [name, body] : detail::bundled_seed_table()) out.emplace_back(name);
  return out;
}

Seed bundled_seed(const std::string& name) {
  for (const auto& [key, body] : detail::bundled_seed_table())
    if (key == name) return seed_from_json(nlohmann::json::parse(body));
  throw InputError("unknown bundled seed " + name);
}

Seed resolve_seed(const std::string& name_or_path) {
  for (const auto& [key, body] : detail::bundled_seed_table())
    if (key == name_or_path) return seed_from_json(nlohmann::json::parse(body));
  if (std::filesystem::exists(name_or_path)) return load_seed_file(name_or_path);
  throw InputError("unknown seed " + name_or_path + " (not a bundled name or a file)");
}

}  // namespace cdf
