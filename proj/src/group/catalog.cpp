#include "cheblab/catalog.hpp"

#include <json.hpp>

#include "cheblab/error.hpp"

namespace cheblab {

const std::vector<CatalogEntry>& builtin_catalog() {
  static const std::vector<CatalogEntry> catalog = {
      {"C2", 2, {"(0 1)"}},
      {"C3", 3, {"(0 1 2)"}},
      {"S3", 3, {"(0 1 2)", "(0 1)"}},
      {"S4", 4, {"(0 1 2 3)", "(0 1)"}},
      {"D4", 4, {"(0 1 2 3)", "(0 2)"}},
      {"S5", 5, {"(0 1 2 3 4)", "(0 1)"}},
      {"C3wrC2", 6, {"(0 1 2)", "(3 4 5)", "(0 3)(1 4)(2 5)"}},
  };
  return catalog;
}

namespace {

CatalogEntry entry_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "catalog entry must be an object");
  CatalogEntry e;
  try {
    e.name = j.value("name", std::string{});
    e.degree = j.at("degree").get<std::size_t>();
    for (const auto& g : j.at("generators")) e.generators.push_back(g.get<std::string>());
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::ParseError, std::string("catalog entry: ") + ex.what());
  }
  if (e.degree == 0) throw Error(ErrorCode::ParseError, "catalog entry degree must be positive");
  return e;
}

}  // namespace

std::vector<CatalogEntry> parse_catalog(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& ex) {
    throw Error(ErrorCode::ParseError, std::string("catalog: ") + ex.what());
  }
  std::vector<CatalogEntry> out;
  if (doc.is_array()) {
    for (const auto& j : doc) out.push_back(entry_from_json(j));
  } else {
    out.push_back(entry_from_json(doc));
  }
  return out;
}

GroupPtr build_group(const CatalogEntry& entry, std::size_t order_cap) {
  std::vector<Permutation> gens;
  for (const auto& text : entry.generators) {
    gens.push_back(Permutation::parse_cycles(text, entry.degree));
  }
  if (gens.empty()) gens.push_back(Permutation::identity(entry.degree));
  auto group = generate_group(gens, order_cap);
  group.set_name(entry.name);
  return std::make_shared<const PermGroup>(std::move(group));
}

GroupPtr catalog_group(std::string_view name, std::size_t order_cap) {
  for (const auto& entry : builtin_catalog()) {
    if (entry.name == name) return build_group(entry, order_cap);
  }
  throw Error(ErrorCode::UnknownGroup, "unknown group '" + std::string(name) + "'");
}

}  // namespace cheblab
