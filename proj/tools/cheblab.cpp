// Command-line front end. Talks to the library only through cheblab.h.
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "cheblab/cheblab.h"

namespace {

// Exit codes: 0 success, 2 configuration error, 3 cap exceeded, 1 anything else.
int exit_code(int status) {
  switch (status) {
    case CHEBLAB_OK:
      return 0;
    case CHEBLAB_ERR_ORDER_CAP_EXCEEDED:
    case CHEBLAB_ERR_BOUND_TOO_LARGE:
      return 3;
    case CHEBLAB_ERR_IO:
    case CHEBLAB_ERR_OVERFLOW:
    case CHEBLAB_ERR_NULL_POINTER:
    case CHEBLAB_ERR_INTERNAL:
      return 1;
    default:
      return 2;
  }
}

struct Failure {
  int status;
};

void check(int status) {
  if (status != CHEBLAB_OK) throw Failure{status};
}

// Owns a string returned by the library.
class Text {
 public:
  ~Text() { cheblab_free_string(ptr_); }
  char** out() { return &ptr_; }
  std::string str() const { return ptr_ ? ptr_ : ""; }

 private:
  char* ptr_ = nullptr;
};

template <class T, void (*Free)(T*)>
class Handle {
 public:
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() { Free(ptr_); }
  T** out() { return &ptr_; }
  T* get() const { return ptr_; }

 private:
  T* ptr_ = nullptr;
};

using Group = Handle<cheblab_group, cheblab_group_free>;
using Sigma = Handle<cheblab_sigma, cheblab_sigma_free>;
using SimConfig = Handle<cheblab_sim_config, cheblab_sim_config_free>;
using Fields = Handle<cheblab_fields, cheblab_fields_free>;

struct Options {
  std::string group;
  std::string sigma;
  std::string config;
  std::string delta;
  std::optional<std::uint64_t> seed;
  unsigned jobs = 1;
  std::string out;
  std::string format;
  std::optional<std::uint64_t> horizon;
  std::optional<std::uint64_t> disc_bound;
  std::uint64_t prime_bound = 100;
  std::string fields_file;
  bool plot = false;
};

int format_code(const std::string& name, bool text_allowed) {
  if (name == "csv") return CHEBLAB_FORMAT_CSV;
  if (name == "json") return CHEBLAB_FORMAT_JSON;
  if (name == "text" && text_allowed) return CHEBLAB_FORMAT_TEXT;
  std::cerr << "error: unknown format '" << name << "'\n";
  throw Failure{CHEBLAB_ERR_CONFIG};
}

const char* extension(int format) {
  return format == CHEBLAB_FORMAT_JSON ? ".json" : format == CHEBLAB_FORMAT_CSV ? ".csv" : ".txt";
}

// Writes to <out>/<stem><ext>, or stdout without --out.
void emit(const Options& o, const std::string& stem, int format, const std::string& body) {
  if (o.out.empty()) {
    std::cout << body;
    return;
  }
  std::error_code ec;
  std::filesystem::create_directories(o.out, ec);
  const auto path = std::filesystem::path(o.out) / (stem + extension(format));
  std::ofstream file(path, std::ios::binary);
  if (!file || !(file << body)) {
    std::cerr << "error: cannot write " << path.string() << "\n";
    throw Failure{CHEBLAB_ERR_IO};
  }
  std::cerr << "wrote " << path.string() << "\n";
}

void emit_plot(const Options& o, const std::string& stem, const char* title, const char* x_label, int observed,
               int expected, bool log_scale) {
  if (!o.plot) return;
  if (o.out.empty()) {
    std::cerr << "error: --plot needs --out\n";
    throw Failure{CHEBLAB_ERR_CONFIG};
  }
  Text script;
  check(cheblab_plot_script((stem + ".csv").c_str(), title, x_label, observed, expected, log_scale, script.out()));
  std::ofstream((std::filesystem::path(o.out) / (stem + ".gp")), std::ios::binary) << script.str();
}

void run_group(const Options& o) {
  Group group;
  check(cheblab_group_open(o.group.c_str(), group.out()));
  const int format = format_code(o.format.empty() ? "text" : o.format, true);
  Text report;
  check(cheblab_group_report(group.get(), format, report.out()));
  emit(o, "group", format, report.str());
}

void run_bound(const Options& o) {
  Group group;
  check(cheblab_group_open(o.group.c_str(), group.out()));
  const int format = format_code(o.format.empty() ? "text" : o.format, true);
  Text report;
  check(cheblab_bound_report(group.get(), o.delta.c_str(), format, report.out(), nullptr));
  emit(o, "bound", format, report.str());
}

void run_simulate(const Options& o) {
  SimConfig config;
  check(cheblab_sim_config_read(o.config.c_str(), config.out()));
  check(cheblab_sim_config_override(config.get(), o.seed ? &*o.seed : nullptr, o.horizon ? &*o.horizon : nullptr));
  const int format = format_code(o.format.empty() ? "csv" : o.format, false);
  Text table;
  check(cheblab_simulate(config.get(), o.jobs, format, table.out()));
  emit(o, "survival", format, table.str());
  emit_plot(o, "survival", "survival proportion", "horizon", 4, 5, true);
}

void load_sigma(const Options& o, const char* default_group, Sigma& sigma) {
  const std::uint64_t seed = o.seed.value_or(0);
  if (!o.sigma.empty()) {
    Group group;
    if (!o.group.empty()) check(cheblab_group_open(o.group.c_str(), group.out()));
    check(cheblab_sigma_read(o.sigma.c_str(), group.get(), seed, sigma.out()));
    return;
  }
  Group group;
  check(cheblab_group_open(o.group.empty() ? default_group : o.group.c_str(), group.out()));
  check(cheblab_sigma_allow_all(group.get(), sigma.out()));
}

void run_fields(const Options& o) {
  Fields fields;
  if (!o.fields_file.empty()) {
    check(cheblab_fields_read(o.fields_file.c_str(), fields.out()));
  } else {
    if (!o.disc_bound) {
      std::cerr << "error: fields needs --disc-bound or --fields-file\n";
      throw Failure{CHEBLAB_ERR_CONFIG};
    }
    check(cheblab_fields_enumerate(*o.disc_bound, o.jobs, fields.out()));
  }
  Sigma sigma;
  load_sigma(o, "S3", sigma);
  const int format = format_code(o.format.empty() ? "csv" : o.format, false);
  size_t count = 0;
  check(cheblab_fields_count(fields.get(), &count));
  std::cerr << count << " cubic fields\n";
  if (!o.out.empty()) {
    Text records;
    check(cheblab_fields_records(fields.get(), format, records.out()));
    emit(o, "fields", format, records.str());
  }
  Text proportions;
  check(cheblab_fields_proportions(fields.get(), sigma.get(), o.prime_bound, format, proportions.out()));
  emit(o, "proportions", format, proportions.str());
  emit_plot(o, "proportions", "proportion of S3 fields satisfying sigma", "P", 5, 6, false);
}

void run_euler(const Options& o) {
  Sigma sigma;
  load_sigma(o, "S3", sigma);
  const int format = format_code(o.format.empty() ? "csv" : o.format, false);
  Text table;
  check(cheblab_euler_report(sigma.get(), o.prime_bound, format, table.out()));
  emit(o, "euler", format, table.str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string("cheblab ") + cheblab_version() +
               ": nonadmissible local conditions, Chebotarev statistics and cubic fields.\n"
               "CHEBLAB_ORDER_CAP overrides the group order cap.\n"
               "Exit codes: 0 success, 2 configuration error, 3 cap exceeded, 1 other failure."};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(cheblab_version()));

  Options o;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", o.out, "Output directory (default: stdout)");
    sub->add_option("--format", o.format, "csv or json (group and bound also accept text)");
  };

  auto* group = app.add_subcommand("group", "Order, classes, normal subgroups and a(G) of a group");
  group->add_option("--group,group", o.group, "Catalog name or catalog JSON file")->required();
  add_common(group);

  auto* bound = app.add_subcommand("bound", "Independence bound for a nonadmissible density delta");
  bound->add_option("--group", o.group, "Catalog name or catalog JSON file")->required();
  bound->add_option("--delta", o.delta, "Density in (0, 1], decimal or fraction")->required();
  add_common(bound);

  auto* simulate = app.add_subcommand("simulate", "Survival curves in the synthetic Chebotarev model");
  simulate->add_option("--config", o.config, "Simulation config JSON")->required();
  simulate->add_option("--seed", o.seed, "Overrides the config seed");
  simulate->add_option("--horizon", o.horizon, "Overrides T");
  simulate->add_option("--jobs", o.jobs, "Worker threads (results do not depend on it)")->check(CLI::Range(1u, 1024u));
  simulate->add_flag("--plot", o.plot, "Also write a gnuplot script (needs --out)");
  add_common(simulate);

  auto* fields = app.add_subcommand("fields", "Cubic fields by discriminant and proportion experiments");
  fields->add_option("--disc-bound", o.disc_bound, "Enumerate fields with |disc| <= X");
  fields->add_option("--fields-file", o.fields_file, "Read fields from CSV instead of enumerating");
  fields->add_option("--sigma", o.sigma, "Sigma rule JSON over S3 (default: allow all)");
  fields->add_option("--group", o.group, "Group the sigma rule is over (default S3)");
  fields->add_option("--prime-bound", o.prime_bound, "Largest restricted prime P");
  fields->add_option("--seed", o.seed, "Seed for subfield rules without one");
  fields->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::Range(1u, 1024u));
  fields->add_flag("--plot", o.plot, "Also write a gnuplot script (needs --out)");
  add_common(fields);

  auto* euler = app.add_subcommand("euler", "Euler-factor constant terms and partial products");
  euler->add_option("--sigma", o.sigma, "Sigma rule JSON (default: allow all over --group)");
  euler->add_option("--group", o.group, "Group (default S3)");
  euler->add_option("--prime-bound", o.prime_bound, "Primes p <= P");
  euler->add_option("--seed", o.seed, "Seed for subfield rules without one");
  add_common(euler);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (group->parsed()) run_group(o);
    if (bound->parsed()) run_bound(o);
    if (simulate->parsed()) run_simulate(o);
    if (fields->parsed()) run_fields(o);
    if (euler->parsed()) run_euler(o);
  } catch (const Failure& f) {
    const char* msg = cheblab_last_error();
    if (msg && *msg) std::cerr << "error (" << cheblab_status_name(f.status) << "): " << msg << "\n";
    return exit_code(f.status);
  }
  return 0;
}
