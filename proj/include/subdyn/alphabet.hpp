#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "subdyn/error.hpp"
#include "subdyn/rational.hpp"

namespace subdyn {

/// Letter of a finite alphabet, identified by its index.
struct FiniteLabel {
  std::uint32_t id = 0;
  friend auto operator<=>(const FiniteLabel&, const FiniteLabel&) = default;
};

/// Letter of the compactified naturals {0, 1, ..., N, top}.
struct CompactNat {
  std::uint64_t value = 0;
  bool top = false;

  static CompactNat at(std::uint64_t n) { return {n, false}; }
  static CompactNat infinity() { return {0, true}; }

  friend bool operator==(const CompactNat&, const CompactNat&) = default;
  friend std::strong_ordering operator<=>(const CompactNat& a, const CompactNat& b) {
    if (a.top != b.top) return a.top ? std::strong_ordering::greater : std::strong_ordering::less;
    return a.top ? std::strong_ordering::equal : a.value <=> b.value;
  }
};

/// Rationally independent real generators g_0 = 1, g_1, ..., g_k. A torus letter
/// is a rational combination of these, read mod 1.
struct TorusBasis {
  std::vector<std::string> names;
  std::vector<double> generators;

  TorusBasis(std::vector<std::string> n, std::vector<double> g)
      : names(std::move(n)), generators(std::move(g)) {
    if (generators.empty() || names.size() != generators.size())
      throw DomainError("torus basis needs matching names and generators");
    if (generators[0] != 1.0) throw DomainError("torus basis must start with g0 = 1");
  }
  std::size_t dim() const { return generators.size(); }
  bool operator==(const TorusBasis& o) const { return generators == o.generators; }
};

/// Point of R/Z stored exactly as coefficients over a TorusBasis. The
/// coefficient of g_0 is kept in [0,1); the others are unrestricted.
class TorusPoint {
 public:
  TorusPoint() = default;
  explicit TorusPoint(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
    if (!coeffs_.empty()) coeffs_[0] = coeffs_[0].frac();
  }
  static TorusPoint zero(std::size_t dim) { return TorusPoint(std::vector<Rational>(dim)); }

  const std::vector<Rational>& coeffs() const { return coeffs_; }
  std::size_t dim() const { return coeffs_.size(); }

  friend TorusPoint operator+(const TorusPoint& a, const TorusPoint& b) {
    check_dims(a, b);
    std::vector<Rational> c(a.coeffs_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeffs_[i] + b.coeffs_[i];
    return TorusPoint(std::move(c));
  }
  friend TorusPoint operator-(const TorusPoint& a, const TorusPoint& b) {
    check_dims(a, b);
    std::vector<Rational> c(a.coeffs_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeffs_[i] - b.coeffs_[i];
    return TorusPoint(std::move(c));
  }

  /// Representative in [0,1) of sum c_i g_i.
  double value(const TorusBasis& basis) const {
    if (basis.dim() != dim()) throw DomainError("torus point does not match basis");
    long double acc = 0.0L;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (coeffs_[i].is_zero()) continue;
      acc += coeffs_[i].to_long_double() * static_cast<long double>(basis.generators[i]);
    }
    long double r = acc - std::floor(acc);
    return r >= 1.0L ? 0.0 : static_cast<double>(r);
  }

  std::string str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (i) s += ",";
      s += coeffs_[i].str();
    }
    return s + ")";
  }

  friend bool operator==(const TorusPoint&, const TorusPoint&) = default;
  friend auto operator<=>(const TorusPoint& a, const TorusPoint& b) {
    return a.coeffs_ <=> b.coeffs_;
  }

 private:
  static void check_dims(const TorusPoint& a, const TorusPoint& b) {
    if (a.dim() != b.dim()) throw DomainError("torus points over different bases");
  }
  std::vector<Rational> coeffs_;
};

using Letter = std::variant<FiniteLabel, CompactNat, TorusPoint>;
using Word = std::vector<Letter>;

struct FiniteAlphabet {
  std::vector<std::string> names;
};

/// {0..truncation} plus the top marker. Letters above the truncation fold to
/// top only when fold_to_top is set.
struct CompactNatAlphabet {
  std::uint64_t truncation = 64;
  bool fold_to_top = true;
};

struct TorusAlphabet {
  std::shared_ptr<const TorusBasis> basis;
};

class Alphabet {
 public:
  using Kind = std::variant<FiniteAlphabet, CompactNatAlphabet, TorusAlphabet>;

  Alphabet() = default;
  Alphabet(Kind k) : kind_(std::move(k)) {}  // NOLINT implicit

  static Alphabet finite(std::vector<std::string> names) {
    if (names.empty()) throw DomainError("finite alphabet must be nonempty");
    return Alphabet(FiniteAlphabet{std::move(names)});
  }
  static Alphabet compact(std::uint64_t truncation, bool fold_to_top) {
    return Alphabet(CompactNatAlphabet{truncation, fold_to_top});
  }
  static Alphabet torus(std::shared_ptr<const TorusBasis> basis) {
    if (!basis) throw DomainError("torus alphabet needs a basis");
    return Alphabet(TorusAlphabet{std::move(basis)});
  }

  const Kind& kind() const { return kind_; }
  bool is_finite() const { return std::holds_alternative<FiniteAlphabet>(kind_); }
  bool is_compact() const { return std::holds_alternative<CompactNatAlphabet>(kind_); }
  bool is_torus() const { return std::holds_alternative<TorusAlphabet>(kind_); }
  const FiniteAlphabet& finite_info() const { return std::get<FiniteAlphabet>(kind_); }
  const CompactNatAlphabet& compact_info() const { return std::get<CompactNatAlphabet>(kind_); }
  const TorusBasis& basis() const { return *std::get<TorusAlphabet>(kind_).basis; }
  std::shared_ptr<const TorusBasis> basis_ptr() const {
    return std::get<TorusAlphabet>(kind_).basis;
  }

  bool contains(const Letter& letter) const {
    if (auto* f = std::get_if<FiniteAlphabet>(&kind_)) {
      auto* l = std::get_if<FiniteLabel>(&letter);
      return l && l->id < f->names.size();
    }
    if (auto* c = std::get_if<CompactNatAlphabet>(&kind_)) {
      auto* l = std::get_if<CompactNat>(&letter);
      return l && (l->top || l->value <= c->truncation);
    }
    auto* l = std::get_if<TorusPoint>(&letter);
    return l && l->dim() == basis().dim();
  }

  void require(const Letter& letter) const {
    if (!contains(letter)) throw DomainError("letter " + format(letter) + " outside alphabet");
  }

  std::string format(const Letter& letter) const {
    if (auto* l = std::get_if<FiniteLabel>(&letter)) {
      if (auto* f = std::get_if<FiniteAlphabet>(&kind_); f && l->id < f->names.size())
        return f->names[l->id];
      return "#" + std::to_string(l->id);
    }
    if (auto* l = std::get_if<CompactNat>(&letter)) return l->top ? "inf" : std::to_string(l->value);
    return std::get<TorusPoint>(letter).str();
  }

  /// Letters of a finite alphabet written back to back when every name is a
  /// single character, space separated otherwise.
  std::string format(const Word& word) const {
    bool compact_names = false;
    if (auto* f = std::get_if<FiniteAlphabet>(&kind_)) {
      compact_names = true;
      for (const auto& n : f->names) compact_names = compact_names && n.size() == 1;
    }
    std::string s;
    for (std::size_t i = 0; i < word.size(); ++i) {
      if (i && !compact_names) s += ' ';
      s += format(word[i]);
    }
    return s;
  }

  /// Finite-alphabet letter by display name.
  Letter letter(const std::string& name) const {
    if (auto* f = std::get_if<FiniteAlphabet>(&kind_)) {
      for (std::uint32_t i = 0; i < f->names.size(); ++i)
        if (f->names[i] == name) return FiniteLabel{i};
      throw DomainError("unknown letter '" + name + "'");
    }
    if (std::holds_alternative<CompactNatAlphabet>(kind_)) {
      if (name == "inf" || name == "top" || name == "∞") return CompactNat::infinity();
      try {
        std::size_t used = 0;
        auto v = std::stoull(name, &used);
        if (used == name.size()) return CompactNat::at(v);
      } catch (const std::exception&) {
      }
      throw DomainError("bad compact letter '" + name + "'");
    }
    throw DomainError("torus letters have no names");
  }

  /// Parses "abba" (single-character names) or whitespace separated names.
  Word word(const std::string& text) const {
    Word w;
    bool spaced = text.find(' ') != std::string::npos;
    if (!spaced && is_finite()) {
      bool single = true;
      for (const auto& n : finite_info().names) single = single && n.size() == 1;
      if (single) {
        for (char ch : text) w.push_back(letter(std::string(1, ch)));
        return w;
      }
    }
    std::size_t pos = 0;
    while (pos < text.size()) {
      auto next = text.find(' ', pos);
      if (next == std::string::npos) next = text.size();
      if (next > pos) w.push_back(letter(text.substr(pos, next - pos)));
      pos = next + 1;
    }
    return w;
  }

  bool operator==(const Alphabet& o) const {
    if (kind_.index() != o.kind_.index()) return false;
    if (auto* f = std::get_if<FiniteAlphabet>(&kind_))
      return f->names == std::get<FiniteAlphabet>(o.kind_).names;
    if (auto* c = std::get_if<CompactNatAlphabet>(&kind_)) {
      const auto& d = std::get<CompactNatAlphabet>(o.kind_);
      return c->truncation == d.truncation && c->fold_to_top == d.fold_to_top;
    }
    return basis() == o.basis();
  }

 private:
  Kind kind_ = FiniteAlphabet{};
};

inline Word concat(Word a, const Word& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

}  // namespace subdyn
