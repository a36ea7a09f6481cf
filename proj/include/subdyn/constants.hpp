#pragma once

#include <array>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <string>
#include <string_view>

#include "subdyn/error.hpp"
#include "subdyn/rational.hpp"

namespace subdyn {

inline constexpr double two_pi = 6.283185307179586476925286766559005768394338798750211641949889;

/// Irrational constants kept as 60-digit decimals and rounded to binary once,
/// so every module sees the same double for e.g. frac(sqrt2).
struct NamedConstant {
  std::string_view name;
  std::string_view digits;
};

inline constexpr std::array<NamedConstant, 7> named_constants{{
    {"sqrt2", "1.414213562373095048801688724209698078569671875376948073176680"},
    {"sqrt3", "1.732050807568877293527446341505872366942805253810380628055807"},
    {"sqrt5", "2.236067977499789696409173668731276235440618359611525724270897"},
    {"sqrt7", "2.645751311064590590501615753639260425710259183082450180368334"},
    {"sqrt13", "3.605551275463989293119221267470495946251296573845246212710453"},
    {"pi", "3.141592653589793238462643383279502884197169399375105820974945"},
    {"e", "2.718281828459045235360287471352662497757247093699959574966968"},
}};

inline constexpr std::array<NamedConstant, 7> named_fractional_parts{{
    {"sqrt2", "0.414213562373095048801688724209698078569671875376948073176680"},
    {"sqrt3", "0.732050807568877293527446341505872366942805253810380628055807"},
    {"sqrt5", "0.236067977499789696409173668731276235440618359611525724270897"},
    {"sqrt7", "0.645751311064590590501615753639260425710259183082450180368334"},
    {"sqrt13", "0.605551275463989293119221267470495946251296573845246212710453"},
    {"pi", "0.141592653589793238462643383279502884197169399375105820974945"},
    {"e", "0.718281828459045235360287471352662497757247093699959574966968"},
}};

namespace detail {
inline std::optional<double> lookup(const std::array<NamedConstant, 7>& table,
                                    std::string_view name) {
  for (const auto& c : table)
    if (c.name == name) return std::strtod(std::string(c.digits).c_str(), nullptr);
  return std::nullopt;
}
}  // namespace detail

inline std::optional<double> named_constant(std::string_view name) {
  return detail::lookup(named_constants, name);
}

/// Parses a real-valued command-line or rule-file quantity:
/// a decimal, a rational "p/q", a constant name ("sqrt2"), or "frac(name)".
inline double parse_real(const std::string& text) {
  if (text.rfind("frac(", 0) == 0 && text.size() > 6 && text.back() == ')') {
    auto inner = std::string_view(text).substr(5, text.size() - 6);
    if (auto v = detail::lookup(named_fractional_parts, inner)) return *v;
    throw FormatError("unknown constant in '" + text + "'");
  }
  if (auto v = named_constant(text)) return *v;
  if (text.find('/') != std::string::npos) return Rational::parse(text).to_double();
  char* end = nullptr;
  double v = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size() || !std::isfinite(v))
    throw FormatError("cannot parse real value '" + text + "'");
  return v;
}

}  // namespace subdyn
