#include "cheblab/cubic_fields.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <sstream>
#include <thread>

#include "cheblab/density.hpp"
#include "cheblab/error.hpp"
#include "cheblab/primes.hpp"

namespace cheblab {

namespace {

using i128 = __int128;

// Enough primes for a 50-entry fingerprint plus a 50-entry extension even
// when a discriminant has many prime factors.
const std::vector<std::uint64_t>& fingerprint_primes() {
  static const std::vector<std::uint64_t> primes = [] {
    auto all = primes_up_to(1000);
    all.resize(130);
    return all;
  }();
  return primes;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

// Splitting code from the number of roots of the form in P^1(F_p): three
// roots split completely, one root gives [2,1], none gives [3]. Valid only
// when p does not divide the discriminant.
std::uint8_t root_count_code(const BinaryCubicForm& f, std::int64_t p) {
  auto red = [p](std::int64_t v) { return ((v % p) + p) % p; };
  const std::int64_t a = red(f.a), b = red(f.b), c = red(f.c), d = red(f.d);
  int roots = a == 0 ? 1 : 0;
  for (std::int64_t r = 0; r < p; ++r) {
    if ((((a * r + b) % p * r + c) % p * r + d) % p == 0) ++roots;
  }
  return roots == 3 ? 0 : roots == 1 ? 1 : 2;
}

std::uint8_t code_from_roots(int roots) { return roots == 3 ? 0 : roots == 1 ? 1 : 2; }

// Root counts of x^3 + A x + B mod p, indexed A * p + B, for every
// fingerprint prime above 3.
struct RootTables {
  std::vector<std::vector<std::uint8_t>> counts;  // by index into fingerprint_primes()
  RootTables() {
    const auto& primes = fingerprint_primes();
    counts.resize(primes.size());
    for (std::size_t i = 0; i < primes.size(); ++i) {
      const auto p = primes[i];
      if (p <= 3) continue;
      auto& t = counts[i];
      t.assign(p * p, 0);
      for (std::uint64_t r = 0; r < p; ++r) {
        const std::uint64_t r3 = r * r % p * r % p;
        for (std::uint64_t A = 0; A < p; ++A) {
          const std::uint64_t B = (2 * p - r3 - A * r % p) % p;
          ++t[A * p + B];
        }
      }
    }
  }
};

const RootTables& root_tables() {
  static const RootTables tables;
  return tables;
}

// Per-form data for fast splitting codes at fingerprint primes.
struct CodeContext {
  const BinaryCubicForm& form;
  std::optional<CubicPoly> generator;  // absent if it overflows

  explicit CodeContext(const BinaryCubicForm& f) : form(f) {
    try {
      generator = f.depressed();
    } catch (const Error&) {
    }
  }

  // p is fingerprint_primes()[index] and does not divide disc(form).
  std::uint8_t code(std::size_t index, std::uint64_t p) const {
    const auto sp = static_cast<std::int64_t>(p);
    if (p <= 3 || !generator || form.a % sp == 0) return root_count_code(form, sp);
    // 3a theta + b is a root of the generator, and theta -> 3a theta + b is a
    // bijection on F_p when p does not divide 3a.
    auto red = [sp](std::int64_t v) { return static_cast<std::uint64_t>(((v % sp) + sp) % sp); };
    const auto& t = root_tables().counts[index];
    return code_from_roots(t[red(generator->a) * p + red(generator->b)]);
  }
};

std::uint8_t code_at(const BinaryCubicForm& f, std::uint64_t p) {
  if (p < 2000) return root_count_code(f, static_cast<std::int64_t>(p));
  return splitting_code(f.splitting_type(p));
}

// Codes at the first 2 * kFingerprintLength primes not dividing disc; the
// first half is the fingerprint, the second half its extension.
using ExtendedFingerprint = std::array<std::uint8_t, 2 * kFingerprintLength>;

ExtendedFingerprint extended_fingerprint_of(const BinaryCubicForm& form, std::int64_t form_disc) {
  ExtendedFingerprint fp{};
  const CodeContext ctx(form);
  const auto& primes = fingerprint_primes();
  std::size_t filled = 0;
  for (std::size_t i = 0; i < primes.size(); ++i) {
    const auto p = primes[i];
    if (form_disc % static_cast<std::int64_t>(p) == 0) continue;
    fp[filled++] = ctx.code(i, p);
    if (filled == fp.size()) return fp;
  }
  throw Error(ErrorCode::Overflow, "not enough fingerprint primes for disc " + std::to_string(form_disc));
}

Fingerprint fingerprint_of(const BinaryCubicForm& form, std::int64_t form_disc) {
  const auto ext = extended_fingerprint_of(form, form_disc);
  Fingerprint fp;
  std::copy_n(ext.begin(), kFingerprintLength, fp.begin());
  return fp;
}

bool is_square(std::int64_t v) {
  if (v < 0) return false;
  auto r = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(v))));
  while (r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r * r == v;
}

std::int64_t to_int64(i128 v) {
  if (v > INT64_MAX || v < -INT64_MAX) throw Error(ErrorCode::Overflow, "discriminant exceeds 64 bits");
  return static_cast<std::int64_t>(v);
}

struct Candidates {
  std::vector<std::pair<std::int64_t, BinaryCubicForm>> forms;  // (disc, form)
  std::uint64_t examined = 0;
};

bool maximal_everywhere(const BinaryCubicForm& form, std::int64_t disc,
                        const std::vector<std::uint32_t>& spf) {
  auto n = static_cast<std::uint64_t>(disc < 0 ? -disc : disc);
  while (n > 1) {
    const std::uint32_t p = spf[n];
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e >= 2 && !form.is_maximal_at(p)) return false;
  }
  return true;
}

void enumerate_slice(std::int64_t X, std::int64_t a_max, unsigned stride, unsigned offset,
                     const std::vector<std::uint32_t>& spf, Candidates& out) {
  // |b^2 - 3ac| is bounded by the reduction theory of the Hessian (D > 0) and
  // of a definite quadratic covariant of discriminant -5|D| (D < 0).
  const auto p_max = static_cast<std::int64_t>(std::sqrt(5.0 * static_cast<double>(X) / 3.0)) + 1;
  for (std::int64_t a = 1 + offset; a <= a_max; a += stride) {
    for (std::int64_t b = -(3 * a) / 2; b <= (3 * a) / 2; ++b) {
      const std::int64_t c_lo = ceil_div(b * b - p_max, 3 * a);
      const std::int64_t c_hi = floor_div(b * b + p_max, 3 * a);
      for (std::int64_t c = c_lo; c <= c_hi; ++c) {
        // disc as a quadratic in d: q2 d^2 + q1 d + q0, with q2 < 0.
        const long double q2 = -27.0L * a * a;
        const long double q1 = 18.0L * a * b * c - 4.0L * b * b * b;
        const long double q0 = static_cast<long double>(b) * b * c * c - 4.0L * a * c * c * c;
        const long double dd = q1 * q1 - 4 * q2 * (q0 + static_cast<long double>(X));
        if (dd < 0) continue;
        const long double s = std::sqrt(dd);
        const long double r1 = (-q1 + s) / (2 * q2), r2 = (-q1 - s) / (2 * q2);
        const auto d_lo = static_cast<std::int64_t>(std::floor(std::min(r1, r2))) - 1;
        const auto d_hi = static_cast<std::int64_t>(std::ceil(std::max(r1, r2))) + 1;
        for (std::int64_t d = d_lo; d <= d_hi; ++d) {
          const BinaryCubicForm form{a, b, c, d};
          const i128 disc = form.discriminant();
          if (disc == 0 || disc > X || disc < -X) continue;
          ++out.examined;
          const auto D = static_cast<std::int64_t>(disc);
          if (!maximal_everywhere(form, D, spf)) continue;
          if (!form.is_irreducible()) continue;
          out.forms.emplace_back(D, form);
        }
      }
    }
  }
}

}  // namespace

SplittingType splitting_type_from_code(std::uint8_t code) {
  switch (code) {
    case 0: return SplittingType({1, 1, 1});
    case 1: return SplittingType({2, 1});
    case 2: return SplittingType({3});
  }
  throw Error(ErrorCode::InvalidArgument, "bad splitting code");
}

std::uint8_t splitting_code(const SplittingType& type) {
  if (type == SplittingType({1, 1, 1})) return 0;
  if (type == SplittingType({2, 1})) return 1;
  if (type == SplittingType({3})) return 2;
  throw Error(ErrorCode::InvalidArgument, "not an unramified cubic splitting type: " + type.to_string());
}

bool FieldRecord::has_splitting_type(std::uint64_t p) const {
  return form_disc % static_cast<std::int64_t>(p) != 0;
}

SplittingType FieldRecord::splitting_type(std::uint64_t p) const { return form.splitting_type(p); }

std::string FieldRecord::fingerprint_string() const {
  std::string out;
  for (std::size_t i = 0; i < fingerprint.size(); ++i) {
    if (i) out += ';';
    out += splitting_type_from_code(fingerprint[i]).to_string();
  }
  return out;
}

FieldRecord make_field_record(const BinaryCubicForm& form, std::int64_t field_disc) {
  if (!form.is_irreducible()) {
    throw Error(ErrorCode::Reducible, "form " + form.to_string() + " is reducible");
  }
  FieldRecord r;
  r.form = form;
  r.generator = reduced_generator(form.depressed());
  r.disc = field_disc;
  r.form_disc = to_int64(form.discriminant());
  r.galois = is_square(field_disc) ? CubicGaloisType::C3 : CubicGaloisType::S3;
  r.fingerprint = fingerprint_of(form, r.form_disc);
  return r;
}

FieldEnumeration enumerate_cubic_fields(std::uint64_t X, unsigned jobs, std::size_t record_cap) {
  // At least 0.18 X fields lie below X once X >= 10^4 (0.19 X there, rising
  // towards 0.277 X); refuse early rather than after the work.
  const bool surely_over = X >= 10000 && static_cast<double>(X) * 0.18 > static_cast<double>(record_cap);
  if (surely_over || X > (1ull << 31)) {
    throw Error(ErrorCode::BoundTooLarge,
                "disc bound " + std::to_string(X) + " would exceed the record cap of " +
                    std::to_string(record_cap));
  }
  FieldEnumeration out;
  if (X < 23) return out;

  const auto spf = smallest_prime_factors(static_cast<std::uint32_t>(X));
  const auto sx = static_cast<std::int64_t>(X);
  const auto a_max = static_cast<std::int64_t>(0.5649 * std::pow(static_cast<double>(X), 0.25)) + 1;

  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(a_max)));
  std::vector<Candidates> parts(jobs);
  std::vector<std::thread> workers;
  for (unsigned j = 0; j < jobs; ++j) {
    workers.emplace_back([&, j] { enumerate_slice(sx, a_max, jobs, j, spf, parts[j]); });
  }
  for (auto& w : workers) w.join();

  std::vector<std::pair<std::int64_t, BinaryCubicForm>> all;
  for (auto& part : parts) {
    out.forms_examined += part.examined;
    all.insert(all.end(), part.forms.begin(), part.forms.end());
    part.forms = {};
  }
  std::sort(all.begin(), all.end());

  // Within one discriminant, forms with equal fingerprints are one field; the
  // smallest form is kept.
  struct Candidate {
    ExtendedFingerprint fp;
    BinaryCubicForm form;
  };
  std::vector<Candidate> group;
  for (std::size_t lo = 0; lo < all.size();) {
    const std::int64_t D = all[lo].first;
    std::size_t hi = lo;
    group.clear();
    for (; hi < all.size() && all[hi].first == D; ++hi) {
      group.push_back({extended_fingerprint_of(all[hi].second, D), all[hi].second});
    }
    std::stable_sort(group.begin(), group.end(), [](const Candidate& x, const Candidate& y) {
      return std::lexicographical_compare(x.fp.begin(), x.fp.begin() + kFingerprintLength, y.fp.begin(),
                                          y.fp.begin() + kFingerprintLength);
    });
    for (std::size_t i = 0; i < group.size();) {
      std::size_t j = i + 1;
      while (j < group.size() &&
             std::equal(group[i].fp.begin(), group[i].fp.begin() + kFingerprintLength, group[j].fp.begin())) {
        ++j;
      }
      // Forms arrive sorted, so group[i] is the smallest of its run.
      for (std::size_t k = i + 1; k < j; ++k) {
        ++out.duplicates_merged;
        if (group[k].fp != group[i].fp) out.collisions.push_back({D, group[i].form, group[k].form});
      }
      if (out.records.size() >= record_cap) {
        throw Error(ErrorCode::BoundTooLarge, "record count exceeds the cap of " + std::to_string(record_cap));
      }
      FieldRecord r;
      r.form = group[i].form;
      r.generator = reduced_generator(r.form.depressed());
      r.disc = D;
      r.form_disc = D;
      r.galois = is_square(D) ? CubicGaloisType::C3 : CubicGaloisType::S3;
      std::copy_n(group[i].fp.begin(), kFingerprintLength, r.fingerprint.begin());
      out.records.push_back(r);
      i = j;
    }
    lo = hi;
  }
  std::sort(out.records.begin(), out.records.end(), [](const FieldRecord& x, const FieldRecord& y) {
    return std::make_tuple(x.height(), x.disc, x.generator.a, x.generator.b) <
           std::make_tuple(y.height(), y.disc, y.generator.a, y.generator.b);
  });
  return out;
}

namespace {

// Splits one CSV line, honouring double-quoted cells.
std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cells.back() += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        cells.back() += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      cells.emplace_back();
    } else {
      cells.back() += ch;
    }
  }
  for (auto& cell : cells) {
    const auto b = cell.find_first_not_of(" \t"), e = cell.find_last_not_of(" \t");
    cell = b == std::string::npos ? "" : cell.substr(b, e - b + 1);
  }
  return cells;
}

std::optional<std::int64_t> parse_int(const std::string& cell) {
  try {
    std::size_t used = 0;
    const auto v = std::stoll(cell, &used);
    if (used == cell.size()) return v;
  } catch (const std::exception&) {
  }
  return std::nullopt;
}

}  // namespace

std::vector<FieldRecord> read_fields_csv(std::istream& in) {
  std::vector<FieldRecord> out;
  std::string line;
  std::size_t line_no = 0;
  bool first_data = true;
  // Column positions from a named header; positional "disc,a,b[,c,d]" otherwise.
  std::optional<std::size_t> col_disc, col_a, col_b, col_form;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto start = line.find_first_not_of(" \t");
    if (start == std::string::npos || line[start] == '#') continue;
    const auto cells = split_csv(line);
    const std::string where = "fields file line " + std::to_string(line_no) + ": ";
    if (first_data) {
      first_data = false;
      if (!parse_int(cells.front())) {
        // "disc,..." headers describe the positional layout; others (such as
        // the records table "a,b,disc,galois_type,fingerprint,form") are
        // matched by column name.
        if (cells.front() == "disc") continue;
        for (std::size_t i = 0; i < cells.size(); ++i) {
          if (cells[i] == "disc") col_disc = i;
          if (cells[i] == "a") col_a = i;
          if (cells[i] == "b") col_b = i;
          if (cells[i] == "form") col_form = i;
        }
        if (!col_disc || !((col_a && col_b) || col_form)) {
          // A header naming none of our columns: keep the positional layout.
          col_disc = col_a = col_b = col_form = std::nullopt;
        }
        continue;
      }
    }

    std::int64_t disc = 0;
    BinaryCubicForm form;
    bool generator_row = false;
    if (col_disc) {
      auto cell = [&](std::size_t i) -> const std::string& {
        if (i >= cells.size()) throw Error(ErrorCode::ParseError, where + "missing column");
        return cells[i];
      };
      const auto d = parse_int(cell(*col_disc));
      if (!d) throw Error(ErrorCode::ParseError, where + "expected an integer disc");
      disc = *d;
      if (col_form) {
        std::istringstream coeffs(cell(*col_form));
        std::array<std::int64_t, 4> v{};
        for (auto& x : v) {
          if (!(coeffs >> x)) throw Error(ErrorCode::ParseError, where + "form must be four integers");
        }
        form = {v[0], v[1], v[2], v[3]};
      } else {
        const auto a = parse_int(cell(*col_a)), b = parse_int(cell(*col_b));
        if (!a || !b) throw Error(ErrorCode::ParseError, where + "expected integers a and b");
        form = {1, 0, *a, *b};
        generator_row = true;
      }
    } else {
      std::vector<std::int64_t> values;
      for (const auto& cell : cells) {
        const auto v = parse_int(cell);
        if (!v) throw Error(ErrorCode::ParseError, where + "expected integers");
        values.push_back(*v);
      }
      if (values.size() != 3 && values.size() != 5) {
        throw Error(ErrorCode::ParseError, where + "expected disc,a,b or disc,a,b,c,d");
      }
      disc = values[0];
      generator_row = values.size() == 3;
      form = generator_row ? BinaryCubicForm{1, 0, values[1], values[2]}
                           : BinaryCubicForm{values[1], values[2], values[3], values[4]};
    }

    std::int64_t form_disc = 0;
    try {
      form_disc = to_int64(form.discriminant());
    } catch (const Error& e) {
      throw Error(e.code(), where + e.what());
    }
    if (disc == 0 || form_disc == 0 || (disc < 0) != (form_disc < 0) || form_disc % disc != 0 ||
        !is_square(form_disc / disc)) {
      throw Error(ErrorCode::ParseError, where + "disc " + std::to_string(disc) +
                                             " is not the generator discriminant " +
                                             std::to_string(form_disc) + " up to a square");
    }
    try {
      out.push_back(make_field_record(form, disc));
      if (generator_row) out.back().generator = {form.c, form.d};
    } catch (const Error& e) {
      throw Error(e.code(), where + e.what());
    }
  }
  return out;
}

std::vector<ProportionRow> proportion_experiment(std::span<const FieldRecord> records,
                                                 const SigmaRule& sigma, std::uint64_t prime_bound) {
  const auto& group = sigma.group();
  if (group.order() != 6 || group.degree() != 3) {
    throw Error(ErrorCode::InvalidArgument, "proportion experiments need a sigma rule over S3");
  }
  // Class id of each splitting code.
  std::array<ClassId, 3> class_of_code{};
  for (std::uint8_t code = 0; code < 3; ++code) {
    const auto type = splitting_type_from_code(code);
    for (ClassId c = 0; c < group.class_count(); ++c) {
      if (group.classes()[c].type == type) class_of_code[code] = c;
    }
  }

  struct Restriction {
    std::uint64_t prime;
    std::array<bool, 3> allowed;
    Rational running_expectation;
  };
  std::vector<Restriction> restricted;
  Rational expectation = 1;
  for (const auto& place : places_up_to(prime_bound, PlaceSource::RealPrimes)) {
    const auto mask = sigma.allowed_classes(place);
    if (std::find(mask.begin(), mask.end(), false) == mask.end()) continue;
    expectation *= euler_constant_term(group, mask);
    restricted.push_back({place.key,
                          {mask[class_of_code[0]], mask[class_of_code[1]], mask[class_of_code[2]]},
                          expectation});
  }

  const std::size_t K = restricted.size();
  // Histograms of the first failing / first ramified restricted prime (K = never).
  std::vector<std::uint64_t> fail_at(K + 1, 0), ram_at(K + 1, 0), either_at(K + 1, 0);
  std::uint64_t total = 0;
  for (const auto& rec : records) {
    if (rec.galois != CubicGaloisType::S3) continue;
    ++total;
    std::size_t first_fail = K, first_ram = K;
    for (std::size_t k = 0; k < K && (first_fail == K || first_ram == K); ++k) {
      const auto p = static_cast<std::int64_t>(restricted[k].prime);
      if (rec.form_disc % p == 0) {
        first_ram = std::min(first_ram, k);
        continue;
      }
      if (first_fail == K && !restricted[k].allowed[code_at(rec.form, restricted[k].prime)]) first_fail = k;
    }
    ++fail_at[first_fail];
    ++ram_at[first_ram];
    ++either_at[std::min(first_fail, first_ram)];
  }

  std::vector<ProportionRow> rows;
  auto fill = [&](ProportionRow& row, std::size_t k) {
    // Records alive after the first k restricted primes.
    auto alive = [&](const std::vector<std::uint64_t>& hist) {
      std::uint64_t n = 0;
      for (std::size_t i = k; i <= K; ++i) n += hist[i];
      return n;
    };
    row.total = total;
    row.survivors = alive(fail_at);
    row.unramified_total = alive(ram_at);
    row.unramified_survivors = alive(either_at);
    row.proportion = total ? double(row.survivors) / double(total) : 0.0;
    row.unramified_proportion =
        row.unramified_total ? double(row.unramified_survivors) / double(row.unramified_total) : 0.0;
  };
  if (K == 0) {
    ProportionRow row;
    row.prime_bound = prime_bound;
    row.expected_proportion = 1.0;
    fill(row, 0);
    rows.push_back(row);
    return rows;
  }
  for (std::size_t k = 0; k < K; ++k) {
    ProportionRow row;
    row.prime_bound = restricted[k].prime;
    row.restricted_prime_count = k + 1;
    row.expected_proportion = to_double(restricted[k].running_expectation);
    fill(row, k + 1);
    rows.push_back(row);
  }
  return rows;
}

SplittingFrequencies splitting_frequencies(std::span<const FieldRecord> records, std::uint64_t p) {
  if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  SplittingFrequencies out;
  out.prime = p;
  for (const auto& rec : records) {
    if (rec.galois != CubicGaloisType::S3) continue;
    if (!rec.has_splitting_type(p)) {
      ++out.ramified;
      continue;
    }
    ++out.total;
    ++out.counts[code_at(rec.form, p)];
  }
  return out;
}

}  // namespace cheblab
