#pragma once

#include <algorithm>
#include <fstream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "subdyn/block.hpp"
#include "subdyn/builtins.hpp"
#include "subdyn/compact_family.hpp"
#include "subdyn/error.hpp"
#include "subdyn/perron.hpp"
#include "subdyn/substitution.hpp"

namespace subdyn::io {

using json = nlohmann::ordered_json;

/// A rule read from JSON or a builtin name. Exactly one of rho / block is set.
struct RuleSource {
  std::string name;
  std::optional<Substitution> rho;
  std::optional<BlockSubstitution2D> block;
  std::optional<MSequence> m;                       ///< set for rho_m
  std::optional<builtin::TorusParameter> alpha;     ///< set for rho_alpha
};

namespace detail {

inline std::vector<std::string> string_list(const json& j, const char* what) {
  if (!j.is_array()) throw FormatError(std::string(what) + " must be an array of strings");
  std::vector<std::string> out;
  for (const auto& x : j) {
    if (!x.is_string()) throw FormatError(std::string(what) + " must be an array of strings");
    out.push_back(x.get<std::string>());
  }
  return out;
}

inline std::shared_ptr<const TorusBasis> basis_from(const json& j) {
  if (!j.is_array() || j.empty()) throw FormatError("basis must be a nonempty array");
  std::vector<std::string> names;
  std::vector<double> gens;
  for (const auto& g : j) {
    std::string text = g.is_string() ? g.get<std::string>() : g.value("name", std::string{});
    names.push_back(text);
    if (g.is_object() && g.contains("value"))
      gens.push_back(g["value"].get<double>());
    else
      gens.push_back(text == "1" ? 1.0 : parse_real(text));
  }
  return std::make_shared<const TorusBasis>(std::move(names), std::move(gens));
}

inline TorusPoint point_from(const json& j, std::size_t dim) {
  if (!j.is_array() || j.size() != dim) throw FormatError("torus coefficients must match the basis");
  std::vector<Rational> c;
  for (const auto& x : j) c.push_back(x.is_string() ? Rational::parse(x.get<std::string>()) : Rational(x.get<std::int64_t>()));
  return TorusPoint(std::move(c));
}

inline MSequence m_from(const json& j) {
  if (j.is_string()) return MSequence::parse(j.get<std::string>());
  if (j.is_array()) return MSequence::periodic(j.get<std::vector<std::uint64_t>>());
  if (j.is_object())
    return MSequence::eventually_periodic(j.value("prefix", std::vector<std::uint64_t>{}),
                                          j.at("period").get<std::vector<std::uint64_t>>());
  throw FormatError("m must be a string, an array or {prefix, period}");
}

inline RuleSource finite_from(const json& j) {
  const json& a = j.at("alphabet");
  auto names = string_list(a.is_object() ? a.at("letters") : a, "alphabet");
  const json& rules = j.at("rules");
  if (!rules.is_object()) throw FormatError("rules must map letters to images");
  auto alphabet = Alphabet::finite(names);
  FiniteRule rule;
  for (const auto& n : names) {
    if (!rules.contains(n)) throw FormatError("no image for letter '" + n + "'");
    const json& img = rules[n];
    Word w;
    if (img.is_string())
      w = alphabet.word(img.get<std::string>());
    else
      for (const auto& s : string_list(img, "image")) w.push_back(alphabet.letter(s));
    std::vector<std::uint32_t> ids;
    for (const auto& l : w) ids.push_back(std::get<FiniteLabel>(l).id);
    rule.images.push_back(std::move(ids));
  }
  for (const auto& [k, v] : rules.items())
    if (std::find(names.begin(), names.end(), k) == names.end())
      throw FormatError("rule for unknown letter '" + k + "'");
  return {j.value("name", std::string("finite")), Substitution(std::move(alphabet), std::move(rule)), {}, {}, {}};
}

}  // namespace detail

/// Parses a rule description:
///   {"alphabet": ["a","b"], "rules": {"a": "abbb", "b": "a"}}
///   {"family": "rho_m", "m": "thue-morse:1,2", "truncation": 64, "fold": true}
///   {"family": "rho_alpha", "alpha": "frac(sqrt2)"}
///   {"family": "rho_alpha", "basis": ["1", "sqrt2"], "alpha": ["0", "1"]}
///   {"family": "block2d", "basis": [...], "rows": 3, "cols": 3, "shifts": [[...], ...]}
inline RuleSource rule_from_json(const json& j) {
  try {
    if (!j.is_object()) throw FormatError("rule description must be a JSON object");
    if (!j.contains("family")) return detail::finite_from(j);
    const auto family = j["family"].get<std::string>();
    if (family == "finite") return detail::finite_from(j);
    if (family == "rho_m" || family == "rho-m") {
      auto m = detail::m_from(j.at("m"));
      auto trunc = j.value("truncation", std::uint64_t{64});
      auto rho = build_rho_m(m, trunc, j.value("fold", true));
      return {"rho_m", std::move(rho), {}, m, {}};
    }
    if (family == "rho_alpha" || family == "rho-alpha") {
      builtin::TorusParameter p;
      if (j.contains("basis")) {
        p.basis = detail::basis_from(j["basis"]);
        p.alpha = detail::point_from(j.at("alpha"), p.basis->dim());
      } else {
        p = builtin::parse_torus_parameter(j.at("alpha").get<std::string>());
      }
      return {"rho_alpha", builtin::rho_alpha(p), {}, {}, p};
    }
    if (family == "block2d") {
      if (!j.contains("shifts")) return {"block2d", {}, builtin::block2d(), {}, {}};
      auto basis = detail::basis_from(j.at("basis"));
      auto rows = j.at("rows").get<std::size_t>(), cols = j.at("cols").get<std::size_t>();
      std::vector<TorusPoint> shifts;
      for (const auto& s : j.at("shifts")) shifts.push_back(detail::point_from(s, basis->dim()));
      return {"block2d", {}, BlockSubstitution2D(basis, rows, cols, std::move(shifts)), {}, {}};
    }
    throw FormatError("unknown rule family '" + family + "'");
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed rule description: ") + e.what());
  }
}

inline RuleSource rule_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open rule file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw FormatError("rule file '" + path + "' is not valid JSON: " + e.what());
  }
  return rule_from_json(j);
}

inline json to_json(const Eigen::VectorXd& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

inline json to_json(const SubstitutionMatrix& m, const Alphabet& alphabet) {
  json out;
  json letters = json::array();
  for (const auto& l : m.letters) letters.push_back(alphabet.format(l));
  out["letters"] = letters;
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.counts.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.counts.cols(); ++c) row.push_back(m.counts(r, c));
    rows.push_back(row);
  }
  out["matrix"] = rows;
  return out;
}

inline json to_json(const PerronData& pf) {
  json out;
  out["lambda"] = pf.lambda;
  out["length"] = to_json(pf.length);
  out["frequency"] = to_json(pf.frequency);
  out["second_modulus"] = pf.second_modulus;
  out["pv"] = to_string(pf.pv);
  return out;
}

/// RFC 4180 field quoting.
inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

inline std::string format_double(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

/// Writes rows with CRLF line endings.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& os) : os_(os) {}

  void row(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) os_ << ',';
      os_ << csv_field(fields[i]);
    }
    os_ << "\r\n";
  }

 private:
  std::ostream& os_;
};

}  // namespace subdyn::io
