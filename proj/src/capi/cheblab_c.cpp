#include "cheblab/cheblab.h"

#include <cstring>
#include <filesystem>
#include <fstream>
#include <new>
#include <sstream>

#include "cheblab/cubic_fields.hpp"
#include "cheblab/density.hpp"
#include "cheblab/error.hpp"
#include "cheblab/experiment.hpp"
#include "json.hpp"

using namespace cheblab;
using nlohmann::json;

struct cheblab_group {
  GroupPtr group;
};

struct cheblab_sigma {
  SigmaRule rule;
  std::string canonical;
  std::uint64_t seed = 0;
};

struct cheblab_sim_config {
  SimulationConfig config;
};

struct cheblab_fields {
  std::vector<FieldRecord> records;
  std::string canonical;  // how the table was obtained
  std::size_t collisions = 0;
  std::uint64_t duplicates_merged = 0;
};

namespace {

thread_local std::string last_error;

struct NullPointer {};

template <class T>
T* need(T* p) {
  if (!p) throw NullPointer{};
  return p;
}

template <class F>
int guard(F&& body) {
  try {
    body();
    last_error.clear();
    return CHEBLAB_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return static_cast<int>(e.code());
  } catch (const NullPointer&) {
    last_error = "null pointer argument";
    return CHEBLAB_ERR_NULL_POINTER;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return CHEBLAB_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = std::string("internal error: ") + e.what();
    return CHEBLAB_ERR_INTERNAL;
  } catch (...) {
    last_error = "internal error";
    return CHEBLAB_ERR_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::string read_file(const char* path) {
  std::ifstream in(need(path), std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, std::string("cannot read ") + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

OutputFormat table_format(int format) {
  if (format == CHEBLAB_FORMAT_CSV) return OutputFormat::Csv;
  if (format == CHEBLAB_FORMAT_JSON) return OutputFormat::Json;
  throw Error(ErrorCode::InvalidArgument, "this output is available as CSV or JSON only");
}

void write_out(char** out, const std::string& text) { *need(out) = dup_string(text); }

}  // namespace

extern "C" {

const char* cheblab_version(void) { return kVersion; }

const char* cheblab_last_error(void) { return last_error.c_str(); }

const char* cheblab_status_name(int status) {
  if (status == CHEBLAB_OK) return "Ok";
  if (status == CHEBLAB_ERR_NULL_POINTER) return "NullPointer";
  if (status == CHEBLAB_ERR_INTERNAL) return "Internal";
  if (status >= 1 && status <= static_cast<int>(ErrorCode::Overflow)) {
    return error_code_name(static_cast<ErrorCode>(status));
  }
  return "Unknown";
}

void cheblab_free_string(char* s) { std::free(s); }

int cheblab_group_open(const char* name_or_path, cheblab_group** out) {
  return guard([&] {
    need(out);
    *out = nullptr;
    *out = new cheblab_group{resolve_group(need(name_or_path))};
  });
}

void cheblab_group_free(cheblab_group* group) { delete group; }

int cheblab_group_order(const cheblab_group* group, uint64_t* out) {
  return guard([&] { *need(out) = need(group)->group->order(); });
}

int cheblab_group_class_count(const cheblab_group* group, size_t* out) {
  return guard([&] { *need(out) = need(group)->group->class_count(); });
}

int cheblab_group_report(const cheblab_group* group, int format, char** out) {
  if (out) *out = nullptr;
  return guard([&] {
    const auto& g = *need(group)->group;
    if (format == CHEBLAB_FORMAT_TEXT) return write_out(out, group_report_text(g));
    if (format == CHEBLAB_FORMAT_JSON) return write_out(out, group_report_json(g));
    RunMetadata meta{"group", json{{"group", g.name()}}.dump(), 0, {}};
    meta.notes = {{"order", std::to_string(g.order())},
                  {"kappa", std::to_string(g.class_count())},
                  {"a", g.order() > 1 ? std::to_string(malle_a_invariant(g).a) : "undefined"}};
    write_out(out, render_table(meta, class_table(g), table_format(format)));
  });
}

int cheblab_bound_report(const cheblab_group* group, const char* delta, int format, char** out,
                         uint64_t* bound_out) {
  if (out) *out = nullptr;
  return guard([&] {
    const auto& g = *need(group)->group;
    const Rational d = parse_rational(need(delta));
    if (d <= 0 || d > 1) throw Error(ErrorCode::DeltaOutOfRange, "delta must lie in (0, 1]");
    const auto bound = independence_bound(g, d);
    if (bound_out) *bound_out = bound.bound;
    if (format == CHEBLAB_FORMAT_TEXT) {
      std::ostringstream text;
      text << "group " << g.name() << "  delta " << to_string(d) << "  threshold delta/kappa " << to_string(bound.threshold)
           << "\n";
      text << "independence bound " << bound.bound << "\n";
      for (ClassId c = 0; c < g.class_count(); ++c) {
        text << "  #" << c << "  type " << g.classes()[c].type.to_string() << "  size " << g.classes()[c].size()
             << "  max independent " << bound.per_class[c] << "\n";
      }
      return write_out(out, text.str());
    }
    RunMetadata meta{"bound", json{{"group", g.name()}, {"delta", to_string(d)}}.dump(), 0, {}};
    meta.notes = {{"bound", std::to_string(bound.bound)}, {"threshold", to_string(bound.threshold)}};
    write_out(out, render_table(meta, bound_table(g, bound), table_format(format)));
  });
}

int cheblab_sigma_parse(const char* text, const cheblab_group* group, uint64_t default_seed, cheblab_sigma** out) {
  return guard([&] {
    need(out);
    *out = nullptr;
    auto rule = parse_sigma_rule(need(text), group ? group->group : nullptr, default_seed);
    auto canonical = canonical_sigma_json(text, rule.group(), default_seed);
    *out = new cheblab_sigma{std::move(rule), std::move(canonical), default_seed};
  });
}

int cheblab_sigma_read(const char* path, const cheblab_group* group, uint64_t default_seed, cheblab_sigma** out) {
  return guard([&] {
    need(out);
    *out = nullptr;
    const auto text = read_file(path);
    try {
      auto rule = parse_sigma_rule(text, group ? group->group : nullptr, default_seed);
      auto canonical = canonical_sigma_json(text, rule.group(), default_seed);
      *out = new cheblab_sigma{std::move(rule), std::move(canonical), default_seed};
    } catch (const Error& e) {
      throw Error(e.code(), std::string(path) + ": " + e.what());
    }
  });
}

int cheblab_sigma_allow_all(const cheblab_group* group, cheblab_sigma** out) {
  return guard([&] {
    need(out);
    *out = nullptr;
    const auto& g = need(group)->group;
    *out = new cheblab_sigma{SigmaRule::allow_all(g), json{{"group", g->name()}, {"kind", "allow_all"}}.dump(), 0};
  });
}

void cheblab_sigma_free(cheblab_sigma* sigma) { delete sigma; }

int cheblab_euler_report(const cheblab_sigma* sigma, uint64_t prime_bound, int format, char** out) {
  if (out) *out = nullptr;
  return guard([&] {
    need(sigma);
    const auto product = euler_partial_product(sigma->rule, prime_bound);
    const json config{{"sigma", json::parse(sigma->canonical)}, {"prime_bound", prime_bound}};
    RunMetadata meta{"euler", config.dump(), sigma->seed, {}};
    meta.notes = {{"partial_product", to_string(product.value)},
                  {"restricted_primes", std::to_string(product.restricted_primes)}};
    write_out(out, render_table(meta, euler_table(product), table_format(format)));
  });
}

int cheblab_sim_config_parse(const char* text, const char* base_dir, cheblab_sim_config** out) {
  return guard([&] {
    need(out);
    *out = nullptr;
    *out = new cheblab_sim_config{parse_simulation_config(need(text), base_dir ? base_dir : ".")};
  });
}

int cheblab_sim_config_read(const char* path, cheblab_sim_config** out) {
  return guard([&] {
    need(out);
    *out = nullptr;
    const auto text = read_file(path);
    const auto dir = std::filesystem::path(path).parent_path().string();
    try {
      *out = new cheblab_sim_config{parse_simulation_config(text, dir.empty() ? "." : dir)};
    } catch (const Error& e) {
      throw Error(e.code(), std::string(path) + ": " + e.what());
    }
  });
}

int cheblab_sim_config_override(cheblab_sim_config* config, const uint64_t* seed, const uint64_t* horizon) {
  return guard([&] {
    std::optional<std::uint64_t> s, h;
    if (seed) s = *seed;
    if (horizon) h = *horizon;
    override_simulation_config(need(config)->config, s, h);
  });
}

void cheblab_sim_config_free(cheblab_sim_config* config) { delete config; }

int cheblab_simulate(const cheblab_sim_config* config, unsigned jobs, int format, char** out) {
  if (out) *out = nullptr;
  return guard([&] {
    const auto& cfg = need(config)->config;
    const auto population = sample_population(cfg.group, cfg.scenario, cfg.members, cfg.horizon, cfg.seed, jobs);
    const auto curve = survival_curve(population, *cfg.sigma, cfg.horizons, jobs);
    RunMetadata meta{"simulate", cfg.canonical, cfg.seed, {}};
    write_out(out, render_table(meta, survival_table(curve), table_format(format)));
  });
}

int cheblab_fields_enumerate(uint64_t disc_bound, unsigned jobs, cheblab_fields** out) {
  return guard([&] {
    need(out);
    *out = nullptr;
    auto result = enumerate_cubic_fields(disc_bound, jobs);
    auto* f = new cheblab_fields{std::move(result.records), json{{"disc_bound", disc_bound}}.dump(),
                                 result.collisions.size(), result.duplicates_merged};
    *out = f;
  });
}

int cheblab_fields_read(const char* path, cheblab_fields** out) {
  return guard([&] {
    need(out);
    *out = nullptr;
    std::ifstream in(need(path));
    if (!in) throw Error(ErrorCode::IoError, std::string("cannot read ") + path);
    auto records = read_fields_csv(in);
    *out = new cheblab_fields{std::move(records), json{{"fields_file", path}}.dump(), 0, 0};
  });
}

void cheblab_fields_free(cheblab_fields* fields) { delete fields; }

int cheblab_fields_count(const cheblab_fields* fields, size_t* out) {
  return guard([&] { *need(out) = need(fields)->records.size(); });
}

int cheblab_fields_records(const cheblab_fields* fields, int format, char** out) {
  if (out) *out = nullptr;
  return guard([&] {
    need(fields);
    RunMetadata meta{"fields", fields->canonical, 0, {}};
    meta.notes = {{"records", std::to_string(fields->records.size())},
                  {"disc", "field discriminant (ring of integers of the cubic field)"},
                  {"duplicates_merged", std::to_string(fields->duplicates_merged)},
                  {"fingerprint_collisions", std::to_string(fields->collisions)}};
    write_out(out, render_table(meta, records_table(fields->records), table_format(format)));
  });
}

int cheblab_fields_proportions(const cheblab_fields* fields, const cheblab_sigma* sigma, uint64_t prime_bound,
                               int format, char** out) {
  if (out) *out = nullptr;
  return guard([&] {
    need(fields);
    need(sigma);
    const auto rows = proportion_experiment(fields->records, sigma->rule, prime_bound);
    json config = json::parse(fields->canonical);
    config["sigma"] = json::parse(sigma->canonical);
    config["prime_bound"] = prime_bound;
    RunMetadata meta{"fields", config.dump(), sigma->seed, {}};
    meta.notes = {{"ramified_primes", "skipped per record; unramified_* columns restrict to records unramified at "
                                      "every restricted prime so far"}};
    write_out(out, render_table(meta, proportion_table(rows), table_format(format)));
  });
}

int cheblab_fields_frequencies(const cheblab_fields* fields, uint64_t p, uint64_t counts_out[3],
                               uint64_t* ramified_out) {
  return guard([&] {
    const auto freq = splitting_frequencies(need(fields)->records, p);
    need(counts_out);
    for (int i = 0; i < 3; ++i) counts_out[i] = freq.counts[i];
    if (ramified_out) *ramified_out = freq.ramified;
  });
}

int cheblab_plot_script(const char* data_file, const char* title, const char* x_label, int observed_column,
                        int expected_column, int log_scale, char** out) {
  if (out) *out = nullptr;
  return guard([&] {
    if (observed_column < 1 || expected_column < 1) throw Error(ErrorCode::InvalidArgument, "columns are 1-based");
    PlotSpec spec{need(data_file), title ? title : "", x_label ? x_label : "", observed_column, expected_column,
                  log_scale != 0};
    write_out(out, gnuplot_script(spec));
  });
}

}  // extern "C"
