#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cheblab/perm_group.hpp"

namespace cheblab {

struct CatalogEntry {
  std::string name;
  std::size_t degree = 0;
  std::vector<std::string> generators;  // cycle notation, 0-based
};

/// Built-in groups: C2, C3, S3, S4, D4, S5, C3wrC2.
const std::vector<CatalogEntry>& builtin_catalog();

/// Parses a catalog document: either one entry object or an array of them,
/// each {"name", "degree", "generators": ["(0 1 2)", ...]}.
std::vector<CatalogEntry> parse_catalog(std::string_view json_text);

GroupPtr build_group(const CatalogEntry& entry, std::size_t order_cap = default_order_cap());

/// Looks the name up in the built-in catalog; throws UnknownGroup.
GroupPtr catalog_group(std::string_view name, std::size_t order_cap = default_order_cap());

}  // namespace cheblab
