#pragma once

#include <cctype>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "subdyn/block.hpp"
#include "subdyn/compact_family.hpp"
#include "subdyn/constants.hpp"
#include "subdyn/substitution.hpp"

namespace subdyn::builtin {

/// a -> ab, b -> a
inline Substitution fibonacci() { return Substitution::finite({"a", "b"}, {"ab", "a"}); }

/// a -> ab, b -> ba
inline Substitution thue_morse() { return Substitution::finite({"a", "b"}, {"ab", "ba"}); }

/// a -> abbb, b -> a; inflation factor (1 + sqrt 13)/2, non-PV.
inline Substitution sqrt13() { return Substitution::finite({"a", "b"}, {"abbb", "a"}); }

/// rho_m with m = (1,1,...): n -> 0 (n-1)(n+1), top -> 0 top top.
inline Substitution rho_infty(std::uint64_t truncation = 64, bool fold = true) {
  return build_rho_m(MSequence::constant(1), truncation, fold);
}

/// A torus shift alpha together with the basis it is written over.
struct TorusParameter {
  std::shared_ptr<const TorusBasis> basis;
  TorusPoint alpha;
  double value() const { return alpha.value(*basis); }
};

/// Exact decimal "0.125" -> 1/8.
inline std::optional<Rational> exact_decimal(const std::string& text) {
  auto dot = text.find('.');
  std::string digits = text;
  std::int64_t den = 1;
  if (dot != std::string::npos) {
    std::string frac = text.substr(dot + 1);
    if (frac.size() > 17) return std::nullopt;
    digits = text.substr(0, dot) + frac;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
  }
  if (digits.empty() || digits == "-") return std::nullopt;
  for (std::size_t i = 0; i < digits.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(digits[i])) && !(i == 0 && digits[i] == '-'))
      return std::nullopt;
  try {
    return Rational(std::stoll(digits), den);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

/// "1/2", "0.25", "sqrt2", "frac(sqrt2)", "pi", "frac(pi)". Irrational
/// constants get the basis {1, constant}; rationals the basis {1}.
inline TorusParameter parse_torus_parameter(const std::string& text) {
  std::string name = text;
  if (name.rfind("frac(", 0) == 0 && name.back() == ')') name = name.substr(5, name.size() - 6);
  if (auto g = named_constant(name)) {
    auto basis = std::make_shared<const TorusBasis>(std::vector<std::string>{"1", name},
                                                    std::vector<double>{1.0, *g});
    return {basis, TorusPoint({Rational(0), Rational(1)})};
  }
  std::optional<Rational> r;
  if (text.find('/') != std::string::npos)
    r = Rational::parse(text);
  else
    r = exact_decimal(text);
  if (!r) throw FormatError("torus parameter '" + text + "' is neither rational nor a named constant");
  auto basis = std::make_shared<const TorusBasis>(std::vector<std::string>{"1"}, std::vector<double>{1.0});
  return {basis, TorusPoint({*r})};
}

/// theta -> (theta)(theta + alpha)
inline Substitution rho_alpha(const TorusParameter& p) {
  auto zero = TorusPoint::zero(p.basis->dim());
  return Substitution(Alphabet::torus(p.basis), TorusRule{{zero, p.alpha}});
}

inline std::shared_ptr<const TorusBasis> basis_1_sqrt3_sqrt7() {
  return std::make_shared<const TorusBasis>(
      std::vector<std::string>{"1", "sqrt3", "sqrt7"},
      std::vector<double>{1.0, *named_constant("sqrt3"), *named_constant("sqrt7")});
}

/// 3x3 planar rule
///   theta   theta+sqrt7/2  theta
///   theta   theta+sqrt3/2  theta+1/2
///   theta   theta+1/4      theta+3/4
inline BlockSubstitution2D block2d() {
  auto basis = basis_1_sqrt3_sqrt7();
  auto p = [](Rational one, Rational s3, Rational s7) { return TorusPoint({one, s3, s7}); };
  const Rational z(0), h(1, 2);
  std::vector<TorusPoint> shifts{
      p(z, z, z), p(z, z, h),           p(z, z, z),
      p(z, z, z), p(z, h, z),           p(h, z, z),
      p(z, z, z), p(Rational(1, 4), z, z), p(Rational(3, 4), z, z),
  };
  return BlockSubstitution2D(basis, 3, 3, std::move(shifts));
}

}  // namespace subdyn::builtin
