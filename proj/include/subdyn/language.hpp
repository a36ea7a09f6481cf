#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "subdyn/error.hpp"
#include "subdyn/substitution.hpp"

namespace subdyn {

struct LanguageOptions {
  int max_sweeps = 40;
};

/// All legal words of length 1..max_len.
///
/// Works on maximal windows: each collected word u (|u| <= max_len) is mapped
/// to rho(u), and either rho(u) itself (if short) or each of its length-max_len
/// windows is collected. Every factor of rho^n(a) of length <= max_len lies in
/// some collected word, so the closure is the factor set of the collection. A
/// sweep processes the words added by the previous sweep; the language is
/// stable once a sweep adds nothing.
inline std::set<Word> legal_words(const Substitution& rho, std::size_t max_len,
                                  const LanguageOptions& opts = {}) {
  if (max_len < 1) throw ParameterError("legal_words needs max_len >= 1");
  auto letters = rho.letters();
  if (!letters) throw DomainError("legal_words needs an enumerable alphabet");

  std::map<Letter, char32_t> index;
  for (std::size_t i = 0; i < letters->size(); ++i) index.emplace((*letters)[i], static_cast<char32_t>(i));

  std::unordered_map<char32_t, std::u32string> images;
  auto image_of = [&](char32_t code) -> const std::u32string& {
    auto it = images.find(code);
    if (it != images.end()) return it->second;
    std::u32string img;
    for (const auto& b : rho.image((*letters)[code])) {
      auto found = index.find(b);
      if (found == index.end()) throw DomainError("image letter outside enumerated alphabet");
      img.push_back(found->second);
    }
    return images.emplace(code, std::move(img)).first->second;
  };

  std::unordered_set<std::u32string> collected;
  std::vector<std::u32string> frontier;
  for (std::size_t i = 0; i < letters->size(); ++i) {
    const auto* c = std::get_if<CompactNat>(&(*letters)[i]);
    if (c && c->top) continue;  // only reachable through folding
    std::u32string s(1, static_cast<char32_t>(i));
    collected.insert(s);
    frontier.push_back(std::move(s));
  }

  int sweep = 0;
  while (!frontier.empty()) {
    if (++sweep > opts.max_sweeps)
      throw ConvergenceError("legal word set did not stabilise within " +
                             std::to_string(opts.max_sweeps) + " sweeps");
    std::vector<std::u32string> next;
    for (const auto& u : frontier) {
      std::u32string v;
      for (char32_t c : u) v += image_of(c);
      auto take = [&](std::u32string w) {
        if (collected.insert(w).second) next.push_back(std::move(w));
      };
      if (v.size() <= max_len) {
        take(v);
      } else {
        for (std::size_t i = 0; i + max_len <= v.size(); ++i) take(v.substr(i, max_len));
      }
    }
    frontier = std::move(next);
  }

  std::unordered_set<std::u32string> factors;
  for (const auto& w : collected)
    for (std::size_t i = 0; i < w.size(); ++i)
      for (std::size_t len = 1; i + len <= w.size() && len <= max_len; ++len)
        factors.insert(w.substr(i, len));

  std::set<Word> out;
  for (const auto& f : factors) {
    Word w;
    w.reserve(f.size());
    for (char32_t c : f) w.push_back((*letters)[c]);
    out.insert(std::move(w));
  }
  return out;
}

/// True when w occurs in some rho^n(a); used to vet tiling seeds such as a|a.
inline bool is_legal(const Substitution& rho, const Word& w) {
  if (w.empty()) return true;
  return legal_words(rho, w.size()).contains(w);
}

/// Some v with vvv in the set (shortest, then least), if any.
inline std::optional<Word> find_cube(const std::set<Word>& words) {
  std::optional<Word> best;
  for (const auto& w : words) {
    if (w.empty() || w.size() % 3 != 0) continue;
    std::size_t p = w.size() / 3;
    if (!std::equal(w.begin(), w.begin() + p, w.begin() + p) ||
        !std::equal(w.begin(), w.begin() + p, w.begin() + 2 * p))
      continue;
    Word v(w.begin(), w.begin() + p);
    if (!best || v.size() < best->size() || (v.size() == best->size() && v < *best)) best = v;
  }
  return best;
}

struct Repetition {
  std::size_t period = 0;
  std::size_t position = 0;
  friend bool operator==(const Repetition&, const Repetition&) = default;
};

/// First occurrence of v^exponent in word, smallest period first.
inline std::optional<Repetition> find_repetition(const Word& word, std::size_t exponent) {
  if (exponent < 2) throw ParameterError("repetition exponent must be at least 2");
  std::map<Letter, std::uint32_t> codes;
  std::vector<std::uint32_t> w;
  w.reserve(word.size());
  for (const auto& l : word) w.push_back(codes.emplace(l, static_cast<std::uint32_t>(codes.size())).first->second);

  const std::size_t n = w.size();
  for (std::size_t p = 1; p * exponent <= n; ++p) {
    const std::size_t need = (exponent - 1) * p;
    std::size_t run = 0;
    for (std::size_t i = 0; i + p < n; ++i) {
      run = (w[i] == w[i + p]) ? run + 1 : 0;
      if (run == need) return Repetition{p, i + 1 - need};
    }
  }
  return std::nullopt;
}

}  // namespace subdyn
