#pragma once

#include <array>
#include <cstdint>
#include <istream>
#include <span>
#include <string>
#include <vector>

#include "cheblab/cubic.hpp"
#include "cheblab/sigma_rule.hpp"

namespace cheblab {

inline constexpr std::size_t kFingerprintLength = 50;
inline constexpr std::size_t kDefaultRecordCap = 1'000'000;

/// Splitting type codes used in fingerprints: 0 = [1,1,1], 1 = [2,1], 2 = [3].
using Fingerprint = std::array<std::uint8_t, kFingerprintLength>;
SplittingType splitting_type_from_code(std::uint8_t code);
std::uint8_t splitting_code(const SplittingType& type);

/// One cubic field, represented by a binary cubic form whose ring is maximal.
struct FieldRecord {
  BinaryCubicForm form;
  CubicPoly generator;         // depressed generator x^3 + a x + b
  std::int64_t disc = 0;       // field discriminant
  std::int64_t form_disc = 0;  // equals disc when the form's ring is maximal
  CubicGaloisType galois = CubicGaloisType::S3;
  Fingerprint fingerprint{};   // first 50 primes not dividing form_disc

  std::uint64_t height() const { return static_cast<std::uint64_t>(disc < 0 ? -disc : disc); }
  /// False when p divides the form discriminant (ramified, or an index divisor
  /// of an ingested generator); no splitting type is reported there.
  bool has_splitting_type(std::uint64_t p) const;
  SplittingType splitting_type(std::uint64_t p) const;
  std::string fingerprint_string() const;  // "2,1;3;1,1,1;..."
};

/// Computes generator, Galois type and fingerprint for a form whose ring has
/// discriminant `field_disc`. Throws Reducible.
FieldRecord make_field_record(const BinaryCubicForm& form, std::int64_t field_disc);

struct FingerprintCollision {
  std::int64_t disc = 0;
  BinaryCubicForm kept;
  BinaryCubicForm dropped;
};

struct FieldEnumeration {
  std::vector<FieldRecord> records;  // ordered by (|disc|, disc, a, b)
  std::vector<FingerprintCollision> collisions;
  std::uint64_t forms_examined = 0;
  std::uint64_t duplicates_merged = 0;
};

/// Every cubic field with 0 < |disc| <= X, from reduced binary cubic forms
/// with maximal rings, deduplicated by (disc, fingerprint). Duplicates whose
/// fingerprints agree on a further 50 primes are equivalent forms; others are
/// logged as collisions. Throws BoundTooLarge if the expected or actual record
/// count exceeds record_cap.
FieldEnumeration enumerate_cubic_fields(std::uint64_t X, unsigned jobs = 1,
                                        std::size_t record_cap = kDefaultRecordCap);

/// Reads a field table. Each non-comment row is "disc,a,b" (generator
/// x^3 + a x + b) or "disc,a,b,c,d" (binary cubic form); a header row is
/// allowed. Throws ParseError naming the line, or Reducible.
std::vector<FieldRecord> read_fields_csv(std::istream& in);

struct ProportionRow {
  std::uint64_t prime_bound = 0;
  std::size_t restricted_prime_count = 0;
  std::uint64_t survivors = 0;
  std::uint64_t total = 0;
  double proportion = 0.0;
  double expected_proportion = 0.0;
  // Restricted to records unramified at every restricted prime so far.
  std::uint64_t unramified_survivors = 0;
  std::uint64_t unramified_total = 0;
  double unramified_proportion = 0.0;
};

/// S3 records satisfying sigma at every restricted prime p <= P, one row per
/// restricted prime (or a single row when none is restricted). Ramified
/// primes are skipped. expected_proportion is the product of the Euler
/// constant terms. Throws InvalidArgument unless sigma is over S3 on 3 points.
std::vector<ProportionRow> proportion_experiment(std::span<const FieldRecord> records,
                                                 const SigmaRule& sigma, std::uint64_t prime_bound);

struct SplittingFrequencies {
  std::uint64_t prime = 0;
  std::uint64_t total = 0;     // S3 records unramified at p
  std::uint64_t ramified = 0;
  std::array<std::uint64_t, 3> counts{};  // by splitting code
};

SplittingFrequencies splitting_frequencies(std::span<const FieldRecord> records, std::uint64_t p);

}  // namespace cheblab
