#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "subdyn/alphabet.hpp"
#include "subdyn/error.hpp"

namespace subdyn {

class Substitution;

/// Table rule on a finite alphabet: images[j] is the word for letter j.
struct FiniteRule {
  std::vector<std::vector<std::uint32_t>> images;
};

/// Template 0 -> 0^{m_0} 1, n -> 0^{m_n} (n-1)(n+1) on {0..N, top}.
/// top maps to 0^{c} top top when top_zeros = c is known (eventually constant m).
struct CompactRule {
  std::vector<std::uint64_t> m;  // m[0..N]
  std::optional<std::uint64_t> top_zeros;
};

/// Constant-length affine template theta -> (theta+s_0)(theta+s_1)...
struct TorusRule {
  std::vector<TorusPoint> shifts;
};

struct IdentityRule {};

struct ComposedRule {
  std::shared_ptr<const Substitution> outer;
  std::shared_ptr<const Substitution> inner;
};

class Substitution {
 public:
  using Rule = std::variant<FiniteRule, CompactRule, TorusRule, IdentityRule, ComposedRule>;

  Substitution(Alphabet alphabet, Rule rule) : alphabet_(std::move(alphabet)), rule_(std::move(rule)) {
    validate();
  }

  /// Finite rule from display names, e.g. ({"a","b"}, {"abbb","a"}).
  static Substitution finite(std::vector<std::string> names, const std::vector<std::string>& images) {
    auto alphabet = Alphabet::finite(std::move(names));
    if (images.size() != alphabet.finite_info().names.size())
      throw DomainError("one image per letter required");
    FiniteRule rule;
    for (const auto& text : images) {
      std::vector<std::uint32_t> img;
      for (const auto& l : alphabet.word(text)) img.push_back(std::get<FiniteLabel>(l).id);
      rule.images.push_back(std::move(img));
    }
    return Substitution(std::move(alphabet), std::move(rule));
  }

  const Alphabet& alphabet() const { return alphabet_; }
  const Rule& rule() const { return rule_; }

  /// Appends the image of one letter to out.
  void append_image(const Letter& letter, Word& out) const {
    alphabet_.require(letter);
    std::visit([&](const auto& r) { append(r, letter, out); }, rule_);
  }

  Word image(const Letter& letter) const {
    Word out;
    append_image(letter, out);
    return out;
  }

  std::size_t image_length(const Letter& letter) const {
    alphabet_.require(letter);
    if (auto* f = std::get_if<FiniteRule>(&rule_))
      return f->images[std::get<FiniteLabel>(letter).id].size();
    if (auto* t = std::get_if<TorusRule>(&rule_)) return t->shifts.size();
    if (std::holds_alternative<IdentityRule>(rule_)) return 1;
    if (auto* c = std::get_if<CompactRule>(&rule_)) {
      const auto& n = std::get<CompactNat>(letter);
      if (n.top) {
        if (!c->top_zeros) throw DomainError("image of the top letter is undefined for this m");
        return *c->top_zeros + 2;
      }
      return c->m[n.value] + (n.value == 0 ? 1 : 2);
    }
    const auto& comp = std::get<ComposedRule>(rule_);
    std::size_t total = 0;
    for (const auto& b : comp.inner->image(letter)) total += comp.outer->image_length(b);
    return total;
  }

  /// Every letter, in index order, when the alphabet is enumerable (finite, or
  /// compact with its truncation; top is included when it has an image or is
  /// reachable by folding).
  std::optional<std::vector<Letter>> letters() const {
    if (alphabet_.is_finite()) {
      std::vector<Letter> out;
      for (std::uint32_t i = 0; i < alphabet_.finite_info().names.size(); ++i)
        out.push_back(FiniteLabel{i});
      return out;
    }
    if (alphabet_.is_compact()) {
      const auto& info = alphabet_.compact_info();
      std::vector<Letter> out;
      for (std::uint64_t n = 0; n <= info.truncation; ++n) out.push_back(CompactNat::at(n));
      if (info.fold_to_top) out.push_back(CompactNat::infinity());
      return out;
    }
    return std::nullopt;
  }

 private:
  void validate() const {
    if (auto* f = std::get_if<FiniteRule>(&rule_)) {
      if (!alphabet_.is_finite()) throw DomainError("table rule needs a finite alphabet");
      auto n = alphabet_.finite_info().names.size();
      if (f->images.size() != n) throw DomainError("one image per letter required");
      for (const auto& img : f->images) {
        if (img.empty()) throw DomainError("substitution images must be nonempty");
        for (auto id : img)
          if (id >= n) throw DomainError("image letter outside alphabet");
      }
    } else if (auto* c = std::get_if<CompactRule>(&rule_)) {
      if (!alphabet_.is_compact()) throw DomainError("compact rule needs a compact alphabet");
      if (c->m.size() < alphabet_.compact_info().truncation + 1)
        throw DomainError("compact rule needs m_0..m_N");
    } else if (auto* t = std::get_if<TorusRule>(&rule_)) {
      if (!alphabet_.is_torus()) throw DomainError("torus rule needs a torus alphabet");
      if (t->shifts.empty()) throw DomainError("substitution images must be nonempty");
      for (const auto& s : t->shifts)
        if (s.dim() != alphabet_.basis().dim()) throw DomainError("shift does not match basis");
    } else if (auto* comp = std::get_if<ComposedRule>(&rule_)) {
      if (!comp->outer || !comp->inner) throw DomainError("composition needs two rules");
    }
  }

  void append(const FiniteRule& r, const Letter& letter, Word& out) const {
    for (auto id : r.images[std::get<FiniteLabel>(letter).id]) out.emplace_back(FiniteLabel{id});
  }

  void append(const CompactRule& r, const Letter& letter, Word& out) const {
    const auto& n = std::get<CompactNat>(letter);
    const auto& info = alphabet_.compact_info();
    if (n.top) {
      if (!r.top_zeros) throw DomainError("image of the top letter is undefined for this m");
      out.insert(out.end(), *r.top_zeros, CompactNat::at(0));
      out.emplace_back(CompactNat::infinity());
      out.emplace_back(CompactNat::infinity());
      return;
    }
    out.insert(out.end(), r.m[n.value], CompactNat::at(0));
    if (n.value == 0) {
      out.emplace_back(fold(1, info));
    } else {
      out.emplace_back(CompactNat::at(n.value - 1));
      out.emplace_back(fold(n.value + 1, info));
    }
  }

  static CompactNat fold(std::uint64_t v, const CompactNatAlphabet& info) {
    if (v <= info.truncation) return CompactNat::at(v);
    if (!info.fold_to_top)
      throw DomainError("letter " + std::to_string(v) + " exceeds truncation " +
                        std::to_string(info.truncation) + " and folding is disabled");
    return CompactNat::infinity();
  }

  void append(const TorusRule& r, const Letter& letter, Word& out) const {
    const auto& theta = std::get<TorusPoint>(letter);
    for (const auto& s : r.shifts) out.emplace_back(theta + s);
  }

  void append(const IdentityRule&, const Letter& letter, Word& out) const { out.push_back(letter); }

  void append(const ComposedRule& r, const Letter& letter, Word& out) const {
    for (const auto& b : r.inner->image(letter)) r.outer->append_image(b, out);
  }

  Alphabet alphabet_;
  Rule rule_;
};

/// Default cap on generated word length.
inline constexpr std::size_t default_length_cap = std::size_t{1} << 27;

/// Concatenation of the images of the letters of w.
inline Word apply(const Substitution& rho, const Word& w) {
  Word out;
  for (const auto& l : w) rho.append_image(l, out);
  return out;
}

/// rho^n(seed); throws ResourceError if a level would exceed `cap` letters.
inline Word iterate(const Substitution& rho, Word seed, int n,
                    std::size_t cap = default_length_cap) {
  if (n < 0) throw ParameterError("iteration count must be nonnegative");
  for (int k = 0; k < n; ++k) {
    std::size_t next = 0;
    for (const auto& l : seed) {
      next += rho.image_length(l);
      if (next > cap)
        throw ResourceError("word length cap " + std::to_string(cap) + " exceeded at level " +
                            std::to_string(k + 1));
    }
    Word out;
    out.reserve(next);
    for (const auto& l : seed) rho.append_image(l, out);
    seed = std::move(out);
  }
  return seed;
}

/// rho^n applied to a single letter.
inline Word expand(const Substitution& rho, const Letter& letter, int n,
                   std::size_t cap = default_length_cap) {
  rho.alphabet().require(letter);
  return iterate(rho, Word{letter}, n, cap);
}

inline Substitution identity(const Alphabet& alphabet) {
  if (alphabet.is_finite()) {
    FiniteRule r;
    for (std::uint32_t i = 0; i < alphabet.finite_info().names.size(); ++i) r.images.push_back({i});
    return Substitution(alphabet, std::move(r));
  }
  if (alphabet.is_torus())
    return Substitution(alphabet, TorusRule{{TorusPoint::zero(alphabet.basis().dim())}});
  return Substitution(alphabet, IdentityRule{});
}

/// (outer o inner)(a) = outer(inner(a)).
inline Substitution compose(const Substitution& outer, const Substitution& inner) {
  if (!(outer.alphabet() == inner.alphabet()))
    throw DomainError("cannot compose substitutions over different alphabets");
  if (std::holds_alternative<IdentityRule>(inner.rule())) return outer;
  if (std::holds_alternative<IdentityRule>(outer.rule())) return inner;
  auto* fo = std::get_if<FiniteRule>(&outer.rule());
  auto* fi = std::get_if<FiniteRule>(&inner.rule());
  if (fo && fi) {
    FiniteRule r;
    for (const auto& img : fi->images) {
      std::vector<std::uint32_t> out;
      for (auto id : img) out.insert(out.end(), fo->images[id].begin(), fo->images[id].end());
      r.images.push_back(std::move(out));
    }
    return Substitution(outer.alphabet(), std::move(r));
  }
  auto* to = std::get_if<TorusRule>(&outer.rule());
  auto* ti = std::get_if<TorusRule>(&inner.rule());
  if (to && ti) {
    TorusRule r;
    for (const auto& t : ti->shifts)
      for (const auto& s : to->shifts) r.shifts.push_back(t + s);
    return Substitution(outer.alphabet(), std::move(r));
  }
  return Substitution(outer.alphabet(),
                      ComposedRule{std::make_shared<const Substitution>(outer),
                                   std::make_shared<const Substitution>(inner)});
}

inline Substitution power(const Substitution& rho, int n) {
  if (n < 0) throw ParameterError("power must be nonnegative");
  Substitution result = identity(rho.alphabet());
  for (int k = 0; k < n; ++k) result = compose(rho, result);
  return result;
}

}  // namespace subdyn
