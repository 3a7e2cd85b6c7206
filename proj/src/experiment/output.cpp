#include <charconv>
#include <cstdio>
#include <sstream>

#include "cheblab/error.hpp"
#include "cheblab/experiment.hpp"
#include "json.hpp"

namespace cheblab {

namespace {

using nlohmann::json;

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string cell_text(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::string>) {
          return v;
        } else if constexpr (std::is_same_v<T, double>) {
          return format_double(v);
        } else {
          return std::to_string(v);
        }
      },
      cell);
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

json cell_json(const Cell& cell) {
  return std::visit([](const auto& v) { return json(v); }, cell);
}

std::string hex64(std::uint64_t v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string classes_string(const std::vector<ClassId>& classes) {
  std::string out;
  for (auto c : classes) out += (out.empty() ? "#" : " #") + std::to_string(c);
  return out;
}

}  // namespace

std::uint64_t config_hash(std::string_view canonical) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

OutputFormat parse_output_format(std::string_view name) {
  if (name == "csv") return OutputFormat::Csv;
  if (name == "json") return OutputFormat::Json;
  throw Error(ErrorCode::ConfigError, "unknown format '" + std::string(name) + "' (csv or json)");
}

std::string render_table(const RunMetadata& meta, const Table& table, OutputFormat format) {
  const std::string hash = "fnv1a64:" + hex64(config_hash(meta.config));
  if (format == OutputFormat::Json) {
    json m;
    m["version"] = kVersion;
    m["command"] = meta.command;
    m["config"] = meta.config.empty() ? json(nullptr) : json::parse(meta.config);
    m["config_hash"] = hash;
    m["seed"] = meta.seed;
    for (const auto& [k, v] : meta.notes) m[k] = v;
    json rows = json::array();
    for (const auto& row : table.rows) {
      json r = json::object();
      for (std::size_t i = 0; i < table.columns.size(); ++i) r[table.columns[i]] = cell_json(row.at(i));
      rows.push_back(std::move(r));
    }
    json doc{{"metadata", m}, {"columns", table.columns}, {"rows", rows}};
    return doc.dump(2) + "\n";
  }
  std::ostringstream out;
  out << "# cheblab " << kVersion << "\n";
  out << "# command: " << meta.command << "\n";
  out << "# config: " << meta.config << "\n";
  out << "# config_hash: " << hash << "\n";
  out << "# seed: " << meta.seed << "\n";
  for (const auto& [k, v] : meta.notes) out << "# " << k << ": " << v << "\n";
  for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
  out << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_escape(cell_text(row[i]));
    out << "\n";
  }
  return out.str();
}

Table survival_table(const SurvivalCurve& curve) {
  Table t{{"horizon", "survivors", "total", "proportion", "exact_expectation", "independent_survivors",
           "independent_total", "accumulating_survivors", "accumulating_total"},
          {}};
  for (const auto& r : curve.rows) {
    t.rows.push_back({r.cutoff, r.survivors, r.total, r.proportion, r.exact_expectation, r.independent_survivors,
                      r.independent_total, r.accumulating_survivors, r.accumulating_total});
  }
  return t;
}

Table euler_table(const EulerPartialProduct& product) {
  Table t{{"prime_or_index", "allowed_class_count", "constant_term", "running_product", "running_product_approx"}, {}};
  for (const auto& r : product.rows) {
    t.rows.push_back({r.prime, static_cast<std::uint64_t>(r.allowed_class_count), to_string(r.constant_term),
                      to_string(r.running_product), to_double(r.running_product)});
  }
  return t;
}

Table records_table(std::span<const FieldRecord> records) {
  Table t{{"a", "b", "disc", "galois_type", "fingerprint", "form"}, {}};
  for (const auto& r : records) {
    t.rows.push_back({r.generator.a, r.generator.b, r.disc, std::string(to_string(r.galois)), r.fingerprint_string(),
                      r.form.to_string()});
  }
  return t;
}

Table proportion_table(std::span<const ProportionRow> rows) {
  Table t{{"P", "restricted_prime_count", "survivors", "total", "proportion", "expected_proportion",
           "unramified_survivors", "unramified_total", "unramified_proportion"},
          {}};
  for (const auto& r : rows) {
    t.rows.push_back({r.prime_bound, static_cast<std::uint64_t>(r.restricted_prime_count), r.survivors, r.total,
                      r.proportion, r.expected_proportion, r.unramified_survivors, r.unramified_total,
                      r.unramified_proportion});
  }
  return t;
}

Table class_table(const PermGroup& group) {
  Table t{{"class_id", "size", "cycle_type", "element_order", "malle_index", "representative"}, {}};
  for (ClassId c = 0; c < group.class_count(); ++c) {
    const auto& cls = group.classes()[c];
    const auto& rep = cls.representative;
    t.rows.push_back({static_cast<std::uint64_t>(c), static_cast<std::uint64_t>(cls.size()), cls.type.to_string(),
                      group.element_order(cls.members.front()),
                      static_cast<std::int64_t>(malle_index(rep)), rep.to_cycle_string()});
  }
  return t;
}

Table bound_table(const PermGroup& group, const IndependenceBound& bound) {
  Table t{{"class_id", "cycle_type", "size", "max_independent"}, {}};
  for (ClassId c = 0; c < group.class_count(); ++c) {
    const auto& cls = group.classes()[c];
    t.rows.push_back({static_cast<std::uint64_t>(c), cls.type.to_string(), static_cast<std::uint64_t>(cls.size()),
                      bound.per_class[c]});
  }
  return t;
}

std::string group_report_text(const PermGroup& group) {
  std::ostringstream out;
  out << "group " << (group.name().empty() ? "(unnamed)" : group.name()) << " on " << group.degree() << " points\n";
  out << "order " << group.order() << "\n";
  out << "kappa " << group.class_count() << "\n";
  out << "transitive " << (is_transitive(group) ? "yes" : "no") << "\n";
  if (group.order() > 1) {
    out << "a " << malle_a_invariant(group).a << "\n";
  } else {
    out << "a undefined (trivial group)\n";
  }
  out << "classes\n";
  for (ClassId c = 0; c < group.class_count(); ++c) {
    const auto& cls = group.classes()[c];
    out << "  #" << c << "  size " << cls.size() << "  type " << cls.type.to_string() << "  ind "
        << malle_index(cls.representative) << "  rep " << cls.representative.to_cycle_string() << "\n";
  }
  out << "normal subgroups\n";
  for (const auto& h : normal_subgroups(group)) {
    out << "  order " << h.order() << "  index " << h.index() << "  classes " << classes_string(h.classes()) << "\n";
  }
  return out.str();
}

std::string group_report_json(const PermGroup& group) {
  json doc;
  doc["name"] = group.name();
  doc["degree"] = group.degree();
  doc["order"] = group.order();
  doc["kappa"] = group.class_count();
  doc["transitive"] = is_transitive(group);
  doc["a"] = group.order() > 1 ? json(malle_a_invariant(group).a) : json(nullptr);
  json classes = json::array();
  for (ClassId c = 0; c < group.class_count(); ++c) {
    const auto& cls = group.classes()[c];
    classes.push_back({{"id", c},
                       {"size", cls.size()},
                       {"cycle_type", cls.type.to_string()},
                       {"element_order", group.element_order(cls.members.front())},
                       {"malle_index", malle_index(cls.representative)},
                       {"representative", cls.representative.to_cycle_string()}});
  }
  doc["classes"] = classes;
  json normals = json::array();
  for (const auto& h : normal_subgroups(group)) {
    normals.push_back({{"order", h.order()}, {"index", h.index()}, {"classes", h.classes()}});
  }
  doc["normal_subgroups"] = normals;
  return doc.dump(2) + "\n";
}

std::string gnuplot_script(const PlotSpec& spec) {
  std::ostringstream out;
  out << "set datafile separator ','\n";
  out << "set key top right\n";
  out << "set title '" << spec.title << "'\n";
  out << "set xlabel '" << spec.x_label << "'\n";
  out << "set ylabel 'proportion'\n";
  if (spec.log_scale) out << "set logscale y\n";
  // '#' lines are comments; every ::1 skips the header row.
  out << "plot '" << spec.data_file << "' every ::1 using 1:" << spec.observed_column
      << " with linespoints title 'observed', \\\n";
  out << "     '' every ::1 using 1:" << spec.expected_column << " with lines title 'expected'\n";
  return out.str();
}

}  // namespace cheblab
