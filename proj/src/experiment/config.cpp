#include <filesystem>
#include <fstream>
#include <sstream>

#include "cheblab/catalog.hpp"
#include "cheblab/error.hpp"
#include "cheblab/experiment.hpp"
#include "json.hpp"

namespace cheblab {

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Locates members in the source text so errors can name a line. The lookup
// walks the path key by key, each search starting after the previous hit;
// that is exact for the documents we accept, where keys are unique per level.
struct Source {
  std::string name;  // "config", or a file path
  std::string_view text;
  std::vector<std::string> prefix;

  std::size_t line_of(const std::vector<std::string>& path) const {
    std::size_t pos = 0;
    std::vector<std::string> full = prefix;
    full.insert(full.end(), path.begin(), path.end());
    for (const auto& key : full) {
      const auto hit = text.find("\"" + key + "\"", pos);
      if (hit == std::string_view::npos) break;
      pos = hit + 1;
    }
    if (pos == 0) return 0;
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(pos), '\n'));
  }

  [[noreturn]] void fail(ErrorCode code, const std::vector<std::string>& path, const std::string& msg) const {
    const auto line = line_of(path);
    std::string where = name;
    if (line) where += " line " + std::to_string(line);
    throw Error(code, where + ": " + msg);
  }

  Source nested(const std::string& key) const {
    Source s = *this;
    s.prefix.push_back(key);
    return s;
  }
};

json parse_json(const Source& src) {
  try {
    return json::parse(src.text);
  } catch (const json::parse_error& e) {
    const auto upto = std::min<std::size_t>(e.byte ? e.byte - 1 : 0, src.text.size());
    const auto line = 1 + std::count(src.text.begin(), src.text.begin() + static_cast<std::ptrdiff_t>(upto), '\n');
    throw Error(ErrorCode::ParseError, src.name + " line " + std::to_string(line) + ": invalid JSON");
  }
}

void check_keys(const json& j, const Source& src, std::initializer_list<const char*> allowed) {
  for (const auto& item : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || item.key() == a;
    if (!ok) src.fail(ErrorCode::ConfigError, {item.key()}, "unknown member '" + item.key() + "'");
  }
}

const json& require(const json& j, const Source& src, const char* key) {
  if (!j.contains(key)) src.fail(ErrorCode::ConfigError, {}, std::string("missing member '") + key + "'");
  return j.at(key);
}

std::uint64_t as_unsigned(const json& v, const Source& src, const std::string& key) {
  if (!v.is_number_unsigned()) src.fail(ErrorCode::ConfigError, {key}, "'" + key + "' must be a non-negative integer");
  return v.get<std::uint64_t>();
}

std::vector<std::uint64_t> as_unsigned_list(const json& v, const Source& src, const std::string& key) {
  if (!v.is_array()) src.fail(ErrorCode::ConfigError, {key}, "'" + key + "' must be an array of integers");
  std::vector<std::uint64_t> out;
  for (const auto& x : v) out.push_back(as_unsigned(x, src, key));
  return out;
}

Rational as_rational(const json& v, const Source& src, const std::string& key) {
  try {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    // The shortest round-trip text of a JSON number is what the user wrote.
    if (v.is_number()) return parse_rational(v.dump());
  } catch (const Error&) {
  }
  src.fail(ErrorCode::ConfigError, {key}, "'" + key + "' must be a number or a fraction string");
}

std::vector<std::string> spec_list(const json& v, const Source& src, const std::string& key) {
  std::vector<std::string> specs;
  if (v.is_string()) {
    std::stringstream ss(v.get<std::string>());
    for (std::string part; std::getline(ss, part, ';');) specs.push_back(part);
  } else if (v.is_array()) {
    for (const auto& x : v) {
      if (!x.is_string()) src.fail(ErrorCode::ConfigError, {key}, "'" + key + "' entries must be strings");
      specs.push_back(x.get<std::string>());
    }
  } else {
    src.fail(ErrorCode::ConfigError, {key}, "'" + key + "' must be a list of class specs");
  }
  return specs;
}

std::vector<ClassId> resolve_classes(const PermGroup& group, const json& v, const Source& src,
                                     const std::string& key) {
  std::vector<ClassId> out;
  for (const auto& spec : spec_list(v, src, key)) {
    try {
      for (auto c : resolve_class_spec(group, spec)) {
        if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
      }
    } catch (const Error& e) {
      src.fail(e.code(), {key}, e.what());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

NormalSubgroup resolve_subgroup(const PermGroup& group, const json& v, const Source& src) {
  const auto classes = resolve_classes(group, v, src, "H");
  try {
    return subgroup_from_classes(group, classes);
  } catch (const Error& e) {
    src.fail(e.code(), {"H"}, e.what());
  }
}

GroupPtr group_for(const json& j, const Source& src, GroupPtr given) {
  if (!j.contains("group")) {
    if (!given) src.fail(ErrorCode::ConfigError, {}, "missing member 'group'");
    return given;
  }
  if (!j["group"].is_string()) src.fail(ErrorCode::ConfigError, {"group"}, "'group' must be a string");
  const auto name = j["group"].get<std::string>();
  if (given) {
    if (given->name() != name) {
      src.fail(ErrorCode::ConfigError, {"group"},
               "sigma rule is over " + name + " but the run uses " + given->name());
    }
    return given;
  }
  try {
    return resolve_group(name);
  } catch (const Error& e) {
    src.fail(e.code(), {"group"}, e.what());
  }
}

SigmaRule sigma_from_json(const json& j, const Source& src, GroupPtr given, std::uint64_t default_seed) {
  if (!j.is_object()) src.fail(ErrorCode::ConfigError, {}, "sigma rule must be an object");
  const GroupPtr group = group_for(j, src, given);
  const json& kind_v = require(j, src, "kind");
  if (!kind_v.is_string()) src.fail(ErrorCode::ConfigError, {"kind"}, "'kind' must be a string");
  const auto kind = kind_v.get<std::string>();

  if (kind == "allow_all") {
    check_keys(j, src, {"group", "kind"});
    return SigmaRule::allow_all(group);
  }
  if (kind == "forbid_everywhere") {
    check_keys(j, src, {"group", "kind", "forbidden_classes"});
    return SigmaRule::forbid_everywhere(group, resolve_classes(*group, require(j, src, "forbidden_classes"), src,
                                                              "forbidden_classes"));
  }
  if (kind == "forbid_on_ap") {
    check_keys(j, src, {"group", "kind", "forbidden_classes", "modulus", "residues"});
    const auto forbidden = resolve_classes(*group, require(j, src, "forbidden_classes"), src, "forbidden_classes");
    const auto modulus = as_unsigned(require(j, src, "modulus"), src, "modulus");
    const auto residues = as_unsigned_list(require(j, src, "residues"), src, "residues");
    try {
      return SigmaRule::forbid_on_progression(group, forbidden, modulus, residues);
    } catch (const Error& e) {
      src.fail(e.code(), {"modulus"}, e.what());
    }
  }
  if (kind == "forbid_on_index_set") {
    check_keys(j, src, {"group", "kind", "forbidden_classes", "indices"});
    const auto forbidden = resolve_classes(*group, require(j, src, "forbidden_classes"), src, "forbidden_classes");
    return SigmaRule::forbid_on_indices(group, forbidden, as_unsigned_list(require(j, src, "indices"), src, "indices"));
  }
  if (kind == "subfield") {
    check_keys(j, src, {"group", "kind", "subfield"});
    const json& sub = require(j, src, "subfield");
    const Source sub_src = src.nested("subfield");
    if (!sub.is_object()) src.fail(ErrorCode::ConfigError, {"subfield"}, "'subfield' must be an object");
    check_keys(sub, sub_src, {"H", "frobenius_seed", "frobenius"});
    const auto subgroup = resolve_subgroup(*group, require(sub, sub_src, "H"), sub_src);
    if (sub.contains("frobenius_seed") && sub.contains("frobenius")) {
      sub_src.fail(ErrorCode::ConfigError, {"frobenius"}, "give either 'frobenius' or 'frobenius_seed'");
    }
    std::optional<QuotientFrobenius> frob;
    if (sub.contains("frobenius")) {
      const auto seq = as_unsigned_list(sub["frobenius"], sub_src, "frobenius");
      frob = QuotientFrobenius::explicit_sequence(std::vector<std::size_t>(seq.begin(), seq.end()));
    } else {
      const auto seed =
          sub.contains("frobenius_seed") ? as_unsigned(sub["frobenius_seed"], sub_src, "frobenius_seed") : default_seed;
      frob = QuotientFrobenius::seeded(seed, subgroup.index());
    }
    try {
      return subfield_sigma(group, subgroup, *frob);
    } catch (const Error& e) {
      sub_src.fail(e.code(), {"H"}, e.what());
    }
  }
  src.fail(ErrorCode::ConfigError, {"kind"}, "unknown sigma kind '" + kind + "'");
}

// The sigma member of a config: inline object or path to a sigma document.
std::pair<json, std::string> load_sigma_member(const json& v, const Source& src, const std::string& base_dir,
                                               std::string& text_store) {
  if (v.is_string()) {
    std::filesystem::path path(v.get<std::string>());
    if (path.is_relative()) path = std::filesystem::path(base_dir) / path;
    try {
      text_store = read_file(path.string());
    } catch (const Error& e) {
      src.fail(ErrorCode::ConfigError, {"sigma"}, e.what());
    }
    Source file_src{path.string(), text_store, {}};
    return {parse_json(file_src), path.string()};
  }
  return {v, ""};
}

}  // namespace

GroupPtr resolve_group(std::string_view name_or_path) {
  for (const auto& entry : builtin_catalog()) {
    if (entry.name == name_or_path) return catalog_group(name_or_path);
  }
  const std::string path(name_or_path);
  if (!std::filesystem::is_regular_file(path)) {
    throw Error(ErrorCode::UnknownGroup, "unknown group '" + path + "' (not a catalog name or a file)");
  }
  const auto entries = parse_catalog(read_file(path));
  if (entries.empty()) throw Error(ErrorCode::ParseError, path + ": catalog file has no entries");
  return build_group(entries.front());
}

SigmaRule parse_sigma_rule(std::string_view json_text, GroupPtr group, std::uint64_t default_seed) {
  const Source src{"sigma", json_text, {}};
  return sigma_from_json(parse_json(src), src, std::move(group), default_seed);
}

std::string canonical_sigma_json(std::string_view json_text, const PermGroup& group, std::uint64_t default_seed) {
  const Source src{"sigma", json_text, {}};
  json j = parse_json(src);
  if (!j.contains("group")) j["group"] = group.name();
  if (j.contains("subfield") && j["subfield"].is_object() && !j["subfield"].contains("frobenius") &&
      !j["subfield"].contains("frobenius_seed")) {
    j["subfield"]["frobenius_seed"] = default_seed;
  }
  return j.dump();
}

SimulationConfig parse_simulation_config(std::string_view json_text, const std::string& base_dir) {
  const Source src{"config", json_text, {}};
  json j = parse_json(src);
  if (!j.is_object()) src.fail(ErrorCode::ConfigError, {}, "config must be a JSON object");
  check_keys(j, src, {"group", "M", "T", "seed", "scenario", "sigma", "horizons"});

  SimulationConfig cfg;
  cfg.group = group_for(j, src, nullptr);
  cfg.members = as_unsigned(require(j, src, "M"), src, "M");
  cfg.horizon = as_unsigned(require(j, src, "T"), src, "T");
  if (cfg.members == 0) src.fail(ErrorCode::ConfigError, {"M"}, "'M' must be positive");
  if (cfg.horizon == 0) src.fail(ErrorCode::ConfigError, {"T"}, "'T' must be positive");
  if (cfg.members > kMaxPopulationCells / cfg.horizon) {
    src.fail(ErrorCode::BoundTooLarge, {"T"}, "M * T exceeds " + std::to_string(kMaxPopulationCells) + " cells");
  }
  cfg.seed = j.contains("seed") ? as_unsigned(j["seed"], src, "seed") : 0;

  std::string sigma_text;
  auto [sigma_json, sigma_path] = load_sigma_member(require(j, src, "sigma"), src, base_dir, sigma_text);
  {
    const Source sigma_src = sigma_path.empty() ? src.nested("sigma") : Source{sigma_path, sigma_text, {}};
    cfg.sigma = sigma_from_json(sigma_json, sigma_src, cfg.group, cfg.seed);
  }
  sigma_json["group"] = cfg.group->name();
  j["sigma"] = sigma_json;

  if (j.contains("scenario") && !j["scenario"].is_null()) {
    const json& sc = j["scenario"];
    const Source sc_src = src.nested("scenario");
    if (!sc.is_object()) src.fail(ErrorCode::ConfigError, {"scenario"}, "'scenario' must be an object or null");
    check_keys(sc, sc_src, {"H", "weight", "frobenius_seed"});
    const auto subgroup = resolve_subgroup(*cfg.group, require(sc, sc_src, "H"), sc_src);
    if (subgroup.order() == cfg.group->order()) {
      sc_src.fail(ErrorCode::InvalidScenario, {"H"}, "scenario needs a proper normal subgroup");
    }
    const Rational weight = as_rational(require(sc, sc_src, "weight"), sc_src, "weight");
    if (weight <= 0 || weight >= 1) sc_src.fail(ErrorCode::ZeroWeight, {"weight"}, "'weight' must lie in (0, 1)");
    // Accumulating members share L with a subfield sigma over the same H.
    std::optional<QuotientFrobenius> frob;
    if (const auto* rule = std::get_if<SigmaRule::Subfield>(&cfg.sigma->rule());
        rule && rule->subgroup == subgroup && !sc.contains("frobenius_seed")) {
      frob = rule->frobenius;
    } else {
      const auto seed = sc.contains("frobenius_seed") ? as_unsigned(sc["frobenius_seed"], sc_src, "frobenius_seed")
                                                      : cfg.seed;
      frob = QuotientFrobenius::seeded(seed, subgroup.index());
    }
    cfg.scenario = AccumulatingScenario{subgroup, weight, *frob};
  } else {
    j["scenario"] = nullptr;
  }

  if (j.contains("horizons")) {
    cfg.horizons = as_unsigned_list(j["horizons"], src, "horizons");
    for (auto h : cfg.horizons) {
      if (h > cfg.horizon) {
        src.fail(ErrorCode::HorizonExceedsPopulation, {"horizons"},
                 "horizon " + std::to_string(h) + " exceeds T = " + std::to_string(cfg.horizon));
      }
    }
  } else {
    for (std::uint64_t t = 1; t <= cfg.horizon; ++t) cfg.horizons.push_back(t);
  }
  j["seed"] = cfg.seed;
  cfg.canonical = j.dump();
  return cfg;
}

void override_simulation_config(SimulationConfig& config, std::optional<std::uint64_t> seed,
                                std::optional<std::uint64_t> horizon) {
  if (!seed && !horizon) return;
  json j = json::parse(config.canonical);
  if (seed) j["seed"] = *seed;
  if (horizon) j["T"] = *horizon;
  config = parse_simulation_config(j.dump());
}

}  // namespace cheblab
