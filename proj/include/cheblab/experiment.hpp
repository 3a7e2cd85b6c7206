#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cheblab/cubic_fields.hpp"
#include "cheblab/density.hpp"
#include "cheblab/perm_group.hpp"
#include "cheblab/sigma_rule.hpp"
#include "cheblab/simulation.hpp"

namespace cheblab {

inline constexpr const char* kVersion = "0.1.0";

/// A catalog name, or the path of a catalog JSON file (its first entry).
/// Throws UnknownGroup, IoError, ParseError, OrderCapExceeded.
GroupPtr resolve_group(std::string_view name_or_path);

/// Sigma rule document:
///   {"group": "S3", "kind": "allow_all" | "forbid_everywhere" | "forbid_on_ap" |
///    "forbid_on_index_set" | "subfield",
///    "forbidden_classes": ["3", "#1"], "modulus": 4, "residues": [1],
///    "indices": [0, 2], "subfield": {"H": ["1,1,1", "3"], "frobenius_seed": 7}}
/// The subfield block may give "frobenius": [coset ids] instead of a seed.
/// A subfield block with neither uses default_seed. Errors carry the line of
/// the offending member. If `group` is given it must match the document's
/// group (when present).
SigmaRule parse_sigma_rule(std::string_view json_text, GroupPtr group = nullptr,
                           std::uint64_t default_seed = 0);

/// The normalized sigma document: group name and default seed filled in.
std::string canonical_sigma_json(std::string_view json_text, const PermGroup& group,
                                 std::uint64_t default_seed = 0);

struct SimulationConfig {
  GroupPtr group;
  std::uint64_t members = 0;  // M
  std::uint64_t horizon = 0;  // T
  std::uint64_t seed = 0;
  std::optional<AccumulatingScenario> scenario;
  std::optional<SigmaRule> sigma;
  std::vector<std::uint64_t> horizons;
  std::string canonical;  // normalized JSON of the whole config
};

/// {"group", "M", "T", "seed", "scenario": {"H", "weight", "frobenius_seed"?} | null,
///  "sigma": {...} | "path/to/sigma.json", "horizons": [...]}.
/// Relative sigma paths resolve against base_dir. Missing horizons mean
/// 1..T. Throws ConfigError or ParseError naming the line.
SimulationConfig parse_simulation_config(std::string_view json_text, const std::string& base_dir = ".");

/// Replaces seed or T and refreshes the canonical text.
void override_simulation_config(SimulationConfig& config, std::optional<std::uint64_t> seed,
                                std::optional<std::uint64_t> horizon);

/// FNV-1a, 64 bit.
std::uint64_t config_hash(std::string_view canonical);

struct RunMetadata {
  std::string command;
  std::string config;  // canonical JSON
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, std::string>> notes;
};

enum class OutputFormat { Csv, Json };
OutputFormat parse_output_format(std::string_view name);

using Cell = std::variant<std::int64_t, std::uint64_t, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// CSV with "# key: value" metadata lines, or a JSON object
/// {"metadata": {...}, "columns": [...], "rows": [{...}, ...]}.
std::string render_table(const RunMetadata& meta, const Table& table, OutputFormat format);

Table survival_table(const SurvivalCurve& curve);
Table euler_table(const EulerPartialProduct& product);
Table records_table(std::span<const FieldRecord> records);
Table proportion_table(std::span<const ProportionRow> rows);
Table class_table(const PermGroup& group);
Table bound_table(const PermGroup& group, const IndependenceBound& bound);

/// Human-readable group summary: order, kappa, classes, normal subgroups, a(G).
std::string group_report_text(const PermGroup& group);
std::string group_report_json(const PermGroup& group);

struct PlotSpec {
  std::string data_file;
  std::string title;
  std::string x_label;
  int observed_column = 4;  // 1-based
  int expected_column = 5;
  bool log_scale = false;
};

/// Gnuplot script for a CSV written by render_table.
std::string gnuplot_script(const PlotSpec& spec);

}  // namespace cheblab
