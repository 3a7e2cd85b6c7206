#include "cheblab/permutation.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>

#include "cheblab/error.hpp"

namespace cheblab {

namespace {

std::vector<int> parse_int_list(std::string_view text) {
  std::vector<int> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const char ch = text[i];
    if (ch >= '0' && ch <= '9') {
      int value = 0;
      auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + text.size(), value);
      if (ec != std::errc()) {
        throw Error(ErrorCode::ParseError, "bad integer in '" + std::string(text) + "'");
      }
      out.push_back(value);
      i = static_cast<std::size_t>(ptr - text.data());
    } else if (ch == ',' || ch == ' ' || ch == '[' || ch == ']' || ch == '(' || ch == ')' ||
               ch == '\t') {
      ++i;
    } else {
      throw Error(ErrorCode::ParseError,
                  "unexpected character '" + std::string(1, ch) + "' in '" + std::string(text) + "'");
    }
  }
  return out;
}

}  // namespace

SplittingType::SplittingType(std::vector<int> parts) : parts_(std::move(parts)) {
  for (int part : parts_) {
    if (part <= 0) throw Error(ErrorCode::InvalidArgument, "splitting type parts must be positive");
  }
  std::sort(parts_.begin(), parts_.end(), std::greater<>());
}

int SplittingType::degree() const noexcept {
  return std::accumulate(parts_.begin(), parts_.end(), 0);
}

std::string SplittingType::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(parts_[i]);
  }
  return out;
}

SplittingType SplittingType::parse(std::string_view text) {
  auto parts = parse_int_list(text);
  if (parts.empty()) throw Error(ErrorCode::ParseError, "empty splitting type");
  return SplittingType(std::move(parts));
}

Permutation::Permutation(std::vector<Point> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (Point x : images_) {
    if (x >= images_.size() || seen[x]) {
      throw Error(ErrorCode::InvalidArgument, "image sequence is not a bijection");
    }
    seen[x] = true;
  }
}

Permutation Permutation::identity(std::size_t degree) {
  std::vector<Point> images(degree);
  std::iota(images.begin(), images.end(), Point{0});
  Permutation p;
  p.images_ = std::move(images);
  return p;
}

Permutation Permutation::parse_cycles(std::string_view text, std::size_t degree) {
  std::vector<Point> images(degree);
  std::iota(images.begin(), images.end(), Point{0});
  std::vector<bool> used(degree, false);

  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
  };
  skip_ws();
  while (i < text.size()) {
    if (text[i] != '(') {
      throw Error(ErrorCode::ParseError, "expected '(' in cycle string '" + std::string(text) + "'");
    }
    auto close = text.find(')', i);
    if (close == std::string_view::npos) {
      throw Error(ErrorCode::ParseError, "unterminated cycle in '" + std::string(text) + "'");
    }
    std::vector<int> cycle;
    for (int v : parse_int_list(text.substr(i + 1, close - i - 1))) cycle.push_back(v);
    for (int v : cycle) {
      if (v < 0 || static_cast<std::size_t>(v) >= degree) {
        throw Error(ErrorCode::DegreeMismatch, "point " + std::to_string(v) +
                                                   " out of range for degree " +
                                                   std::to_string(degree));
      }
      if (used[v]) {
        throw Error(ErrorCode::ParseError, "point " + std::to_string(v) + " repeated in '" +
                                               std::string(text) + "'");
      }
      used[v] = true;
    }
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      images[cycle[k]] = static_cast<Point>(cycle[(k + 1) % cycle.size()]);
    }
    i = close + 1;
    skip_ws();
  }
  return Permutation(std::move(images));
}

Permutation Permutation::operator*(const Permutation& rhs) const {
  if (rhs.degree() != degree()) {
    throw Error(ErrorCode::DegreeMismatch, "composing permutations of different degree");
  }
  Permutation out;
  out.images_.resize(images_.size());
  for (std::size_t x = 0; x < images_.size(); ++x) out.images_[x] = images_[rhs.images_[x]];
  return out;
}

Permutation Permutation::inverse() const {
  Permutation out;
  out.images_.resize(images_.size());
  for (std::size_t x = 0; x < images_.size(); ++x) out.images_[images_[x]] = static_cast<Point>(x);
  return out;
}

Permutation Permutation::conjugate_by(const Permutation& h) const {
  // (h g h^-1)(h(x)) = h(g(x))
  Permutation out;
  out.images_.resize(images_.size());
  for (std::size_t x = 0; x < images_.size(); ++x) out.images_[h.images_[x]] = h.images_[images_[x]];
  return out;
}

bool Permutation::is_identity() const noexcept {
  for (std::size_t x = 0; x < images_.size(); ++x) {
    if (images_[x] != x) return false;
  }
  return true;
}

std::size_t Permutation::orbit_count() const { return cycle_type().parts().size(); }

std::uint64_t Permutation::order() const {
  std::uint64_t result = 1;
  const auto type = cycle_type();
  for (int len : type.parts()) result = std::lcm(result, static_cast<std::uint64_t>(len));
  return result;
}

SplittingType Permutation::cycle_type() const {
  std::vector<bool> seen(images_.size(), false);
  std::vector<int> parts;
  for (std::size_t start = 0; start < images_.size(); ++start) {
    if (seen[start]) continue;
    int len = 0;
    for (std::size_t x = start; !seen[x]; x = images_[x]) {
      seen[x] = true;
      ++len;
    }
    parts.push_back(len);
  }
  return SplittingType(std::move(parts));
}

std::string Permutation::to_cycle_string() const {
  std::ostringstream out;
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t start = 0; start < images_.size(); ++start) {
    if (seen[start] || images_[start] == start) continue;
    out << '(';
    bool first = true;
    for (std::size_t x = start; !seen[x]; x = images_[x]) {
      seen[x] = true;
      if (!first) out << ' ';
      out << x;
      first = false;
    }
    out << ')';
  }
  auto s = out.str();
  return s.empty() ? "()" : s;
}

std::size_t PermutationHash::operator()(const Permutation& p) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (Point x : p.images()) {
    h ^= x;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace cheblab
