// Acceptance checks. Prints one PASS/FAIL line per criterion; with arguments,
// runs only the listed criteria. Exit status is nonzero if any selected
// criterion fails.
#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "cheblab/catalog.hpp"
#include "cheblab/cubic_fields.hpp"
#include "cheblab/density.hpp"
#include "cheblab/sigma_rule.hpp"
#include "cheblab/simulation.hpp"
#include "oracles.hpp"

using namespace cheblab;
namespace fs = std::filesystem;

namespace {

// Tolerances and limits.
constexpr std::uint64_t kTupleEnumerationLimit = 10'000'000;
constexpr double kTupleSeconds = 60.0;
constexpr double kSigmas = 5.0;
constexpr double kSimulationSeconds = 120.0;
constexpr double kAccumulatingFloor = 0.29;
constexpr double kIndependentCeiling = 1e-3;
constexpr double kFieldSeconds = 600.0;
constexpr std::uint64_t kFieldBound = 1'000'000;

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

Rational power(const Rational& base, std::uint64_t k) {
  Rational r = 1;
  for (std::uint64_t i = 0; i < k; ++i) r *= base;
  return r;
}

double binomial_sigma(double p, std::uint64_t n) { return std::sqrt(p * (1 - p) / static_cast<double>(n)); }

// The X = 1e6 records, enumerated once on a single thread.
struct FieldData {
  std::vector<FieldRecord> records;
  double seconds = 0;
};

const FieldData& field_data() {
  static const FieldData data = [] {
    const auto start = Clock::now();
    auto e = enumerate_cubic_fields(kFieldBound, 1);
    return FieldData{std::move(e.records), seconds_since(start)};
  }();
  return data;
}

Outcome criterion1() {
  const auto start = Clock::now();
  std::size_t checked = 0;
  for (const auto& entry : builtin_catalog()) {
    const auto g = build_group(entry);
    for (ClassId c = 0; c < g->class_count(); ++c) {
      std::vector<bool> in(g->order());
      for (ElementId e = 0; e < g->order(); ++e) in[e] = g->class_of(e) == c;
      std::uint64_t total = g->order();
      for (std::uint64_t m = 1; total <= kTupleEnumerationLimit; ++m, total *= g->order()) {
        Rational brute(BigInt(static_cast<unsigned long>(oracle::count_hitting_tuples(g->order(), in, m))),
                       BigInt(static_cast<unsigned long>(total)));
        brute.canonicalize();
        if (tuple_hit_fraction(*g, c, m) != brute) {
          return {false, fmt("%s class %zu m=%llu differs from enumeration", entry.name.c_str(), c,
                             static_cast<unsigned long long>(m))};
        }
        ++checked;
      }
    }
  }
  const double secs = seconds_since(start);
  return {secs < kTupleSeconds, fmt("%zu (group, class, m) cases exact, %.1f s (limit %.0f s)", checked, secs,
                                    kTupleSeconds)};
}

Outcome criterion2() {
  const auto s3 = catalog_group("S3");
  const Rational delta(3, 10);
  const auto b = independence_bound(*s3, delta);
  const auto hit = tuple_hit_fraction(*s3, 0, 13);
  bool pass = b.bound == 12 && hit > Rational(9, 10);
  std::size_t generated = 0;
  std::string failure;
  for (const auto& entry : builtin_catalog()) {
    const auto g = build_group(entry);
    if (g->order() < 2) continue;
    for (const char* d : {"1/10", "1/2", "1"}) {
      const Rational dl = parse_rational(d);
      const auto bound = independence_bound(*g, dl);
      const Rational ceiling = 1 - dl / static_cast<unsigned long>(g->class_count());
      for (ClassId c = 0; c < g->class_count(); ++c) {
        ++generated;
        // No class can avoid bound + 1 independent Frobenius draws often enough.
        if (!(tuple_hit_fraction(*g, c, bound.bound + 1) > ceiling)) {
          pass = false;
          failure = fmt("; %s delta %s class %zu fails", entry.name.c_str(), d, c);
        }
      }
    }
  }
  return {pass, fmt("S3 delta 3/10: bound %llu, hit(identity, 13) = %s > 9/10; %zu generated assertions%s",
                    static_cast<unsigned long long>(b.bound), to_string(hit).c_str(), generated, failure.c_str())};
}

Outcome criterion3() {
  const auto start = Clock::now();
  const auto s3 = catalog_group("S3");
  constexpr std::uint64_t M = 100'000, T = 30;
  const auto pop = sample_population(s3, std::nullopt, M, T, 0);
  const auto sigma = SigmaRule::forbid_everywhere(s3, {1});
  std::vector<std::uint64_t> horizons;
  for (std::uint64_t t = 1; t <= T; ++t) horizons.push_back(t);
  const auto curve = survival_curve(pop, sigma, horizons);
  bool monotone = true;
  for (std::size_t i = 1; i < curve.rows.size(); ++i) {
    monotone = monotone && curve.rows[i].survivors <= curve.rows[i - 1].survivors;
  }
  const double expected = std::pow(2.0 / 3.0, 30);
  const double observed = curve.rows.back().proportion;
  const double sigma_m = binomial_sigma(expected, M);
  const double secs = seconds_since(start);
  const bool pass = std::abs(observed - expected) <= kSigmas * sigma_m && monotone && secs < kSimulationSeconds;
  return {pass, fmt("proportion %.3e vs %.3e (5 sigma = %.2e), monotone %s, %.1f s", observed, expected,
                    kSigmas * sigma_m, monotone ? "yes" : "no", secs)};
}

Outcome criterion4() {
  const auto start = Clock::now();
  const auto s3 = catalog_group("S3");
  constexpr std::uint64_t M = 20'000, T = 200;
  const auto a3 = subgroup_from_classes(*s3, std::vector<ClassId>{0, 1});
  const auto frob = QuotientFrobenius::seeded(0, a3.index());
  const auto sigma = subfield_sigma(s3, a3, frob);
  const auto pop = sample_population(s3, AccumulatingScenario{a3, Rational(3, 10), frob}, M, T, 0);
  std::vector<std::uint64_t> horizons;
  for (std::uint64_t t = 1; t <= T; ++t) horizons.push_back(t);
  const auto curve = survival_curve(pop, sigma, horizons);
  double lowest = 1.0;
  for (const auto& r : curve.rows) lowest = std::min(lowest, r.proportion);
  const auto& last = curve.rows.back();
  const double independent = static_cast<double>(last.independent_survivors) / static_cast<double>(last.independent_total);
  const double secs = seconds_since(start);
  const bool pass = lowest >= kAccumulatingFloor && independent < kIndependentCeiling && secs < kSimulationSeconds;
  return {pass, fmt("min proportion over T <= 200: %.4f (floor %.2f); independent survival at 200: %.2e; %.1f s",
                    lowest, kAccumulatingFloor, independent, secs)};
}

Outcome criterion5() {
  const auto s3 = catalog_group("S3");
  const auto everywhere = euler_partial_product(SigmaRule::forbid_everywhere(s3, {1}), 100);
  std::size_t primes = 0, one_mod_four = 0;
  for (std::uint64_t n = 2; n <= 100; ++n) {
    bool prime = true;
    for (std::uint64_t d = 2; d * d <= n; ++d) prime = prime && n % d != 0;
    if (prime) {
      ++primes;
      if (n % 4 == 1) ++one_mod_four;
    }
  }
  const auto ap = euler_partial_product(SigmaRule::forbid_on_progression(s3, {1}, 4, {1}), 100);
  const bool pass = primes == 25 && everywhere.value == power(Rational(2, 3), 25) &&
                    ap.restricted_primes == one_mod_four && ap.value == power(Rational(2, 3), one_mod_four);
  return {pass, fmt("everywhere: %s over %zu primes; p = 1 mod 4: %s over %zu restricted primes",
                    to_string(everywhere.value).c_str(), primes, to_string(ap.value).c_str(), ap.restricted_primes)};
}

Outcome criterion6() {
  const auto& data = field_data();
  const auto f = splitting_frequencies(data.records, 7);
  const double expected[3] = {1.0 / 6, 1.0 / 2, 1.0 / 3};
  bool pass = data.seconds < kFieldSeconds;
  std::string detail;
  for (int i = 0; i < 3; ++i) {
    const double observed = static_cast<double>(f.counts[i]) / static_cast<double>(f.total);
    const double z = (observed - expected[i]) / binomial_sigma(expected[i], f.total);
    pass = pass && std::abs(z) <= kSigmas;
    detail += fmt("%s %.4f vs %.4f (z %+.1f); ", i == 0 ? "[1,1,1]" : i == 1 ? "[2,1]" : "[3]", observed,
                  expected[i], z);
  }
  return {pass, detail + fmt("n = %llu unramified, %llu ramified; enumeration %.1f s",
                             static_cast<unsigned long long>(f.total), static_cast<unsigned long long>(f.ramified),
                             data.seconds)};
}

Outcome criterion7() {
  const auto& data = field_data();
  const auto s3 = catalog_group("S3");
  // Inert primes have Frobenius a 3-cycle: cycle type "3".
  ClassId inert = 0;
  for (ClassId c = 0; c < s3->class_count(); ++c) {
    if (s3->classes()[c].type.to_string() == "3") inert = c;
  }
  const auto rule = SigmaRule::forbid_on_progression(s3, {inert}, 4, {1});
  const auto rows = proportion_experiment(data.records, rule, 41);
  bool pass = rows.size() == 6;
  bool monotone = true;
  std::string detail;
  for (std::size_t k = 1; k <= rows.size(); ++k) {
    const auto& r = rows[k - 1];
    const double expected = std::pow(2.0 / 3.0, static_cast<double>(k));
    const double z = (r.proportion - expected) / binomial_sigma(expected, r.total);
    pass = pass && r.restricted_prime_count == k && std::abs(z) <= kSigmas;
    if (k > 1) monotone = monotone && r.proportion <= rows[k - 2].proportion;
    detail += fmt("k=%zu P=%llu %.4f vs %.4f (z %+.1f, unramified-only %.4f); ", k,
                  static_cast<unsigned long long>(r.prime_bound), r.proportion, expected, z,
                  r.unramified_proportion);
  }
  return {pass && monotone, detail + fmt("monotone %s", monotone ? "yes" : "no")};
}

Outcome criterion8() {
  const auto one = enumerate_cubic_fields(23).records;
  const auto none = enumerate_cubic_fields(22).records;
  const bool pass = one.size() == 1 && one[0].disc == -23 && none.empty();
  return {pass, fmt("X=23: %zu record(s)%s; X=22: %zu record(s)", one.size(),
                    one.size() == 1 ? fmt(" (disc %lld)", static_cast<long long>(one[0].disc)).c_str() : "",
                    none.size())};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome criterion9() {
  const auto base = fs::temp_directory_path() / "cheblab_acceptance_determinism";
  fs::remove_all(base);
  std::string detail;
  bool pass = true;
  for (const char* config : {"sim_forbid_3cycles.json", "sim_accumulating.json"}) {
    std::map<int, std::string> bodies;
    for (int jobs : {1, 8}) {
      const auto dir = base / (std::string(config) + "_" + std::to_string(jobs));
      const std::string cmd = std::string(CHEBLAB_CLI_PATH) + " simulate --config " + CHEBLAB_SOURCE_DIR +
                              "/configs/" + config + " --jobs " + std::to_string(jobs) + " --out " + dir.string() +
                              " 2>/dev/null";
      const int status = std::system(cmd.c_str());
      if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) return {false, std::string("cheblab failed on ") + config};
      bodies[jobs] = slurp(dir / "survival.csv");
    }
    const bool same = !bodies[1].empty() && bodies[1] == bodies[8];
    pass = pass && same;
    detail += fmt("%s: %zu bytes, %s; ", config, bodies[1].size(), same ? "identical" : "DIFFERENT");
  }
  fs::remove_all(base);
  return {pass, detail + "jobs 1 vs 8"};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"exact tuple-hit oracle", criterion1},       {"independence bound", criterion2},
      {"model decay without accumulation", criterion3}, {"model floor with accumulation", criterion4},
      {"Euler partial products", criterion5},       {"cubic Chebotarev at p = 7", criterion6},
      {"inert-prime proportion decay", criterion7}, {"first cubic fields", criterion8},
      {"simulate determinism across jobs", criterion9},
  };
  std::vector<std::size_t> selected;
  for (int i = 1; i < argc; ++i) {
    const auto n = std::strtoul(argv[i], nullptr, 10);
    if (n < 1 || n > criteria.size()) {
      std::cerr << "usage: acceptance [criterion 1-" << criteria.size() << "]...\n";
      return 2;
    }
    selected.push_back(n);
  }
  if (selected.empty()) {
    for (std::size_t n = 1; n <= criteria.size(); ++n) selected.push_back(n);
  }

  int failures = 0;
  for (auto n : selected) {
    const auto& [name, run] = criteria[n - 1];
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << n << " (" << name << "): " << o.detail << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
