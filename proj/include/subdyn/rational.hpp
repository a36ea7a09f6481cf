#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>

#include "subdyn/error.hpp"

namespace subdyn {

/// Exact rational number with 64-bit numerator and positive denominator,
/// always kept in lowest terms. Arithmetic throws ResourceError on overflow.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT implicit
  Rational(std::int64_t n, std::int64_t d) {
    if (d == 0) throw DomainError("rational with zero denominator");
    assign(static_cast<__int128>(n), static_cast<__int128>(d));
  }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  long double to_long_double() const {
    return static_cast<long double>(num_) / static_cast<long double>(den_);
  }

  /// Greatest integer not exceeding the value.
  std::int64_t floor() const {
    std::int64_t q = num_ / den_;
    if ((num_ % den_ != 0) && (num_ < 0)) --q;
    return q;
  }

  /// Representative of the class mod 1 in [0,1).
  Rational frac() const { return *this - Rational(floor()); }
  bool is_zero() const { return num_ == 0; }

  friend Rational operator+(const Rational& a, const Rational& b) {
    Rational r;
    r.assign(static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
             static_cast<__int128>(a.den_) * b.den_);
    return r;
  }
  friend Rational operator-(const Rational& a) {
    Rational r;
    r.assign(-static_cast<__int128>(a.num_), a.den_);
    return r;
  }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
  friend Rational operator*(const Rational& a, const Rational& b) {
    Rational r;
    r.assign(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
    return r;
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num_) * b.den_ <=> static_cast<__int128>(b.num_) * a.den_;
  }

  std::string str() const {
    return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
  }

  /// Parses "p", "-p" or "p/q".
  static Rational parse(const std::string& text) {
    try {
      auto slash = text.find('/');
      std::size_t used = 0;
      if (slash == std::string::npos) {
        std::int64_t n = std::stoll(text, &used);
        if (used != text.size()) throw FormatError("bad rational '" + text + "'");
        return Rational(n);
      }
      std::string a = text.substr(0, slash), b = text.substr(slash + 1);
      std::int64_t n = std::stoll(a, &used);
      if (used != a.size()) throw FormatError("bad rational '" + text + "'");
      std::int64_t d = std::stoll(b, &used);
      if (used != b.size()) throw FormatError("bad rational '" + text + "'");
      return Rational(n, d);
    } catch (const std::invalid_argument&) {
      throw FormatError("bad rational '" + text + "'");
    } catch (const std::out_of_range&) {
      throw FormatError("rational out of range '" + text + "'");
    }
  }

 private:
  static __int128 gcd128(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  void assign(__int128 n, __int128 d) {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    __int128 g = gcd128(n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    constexpr __int128 lo = INT64_MIN + 1, hi = INT64_MAX;
    if (n < lo || n > hi || d > hi) throw ResourceError("rational arithmetic overflow");
    num_ = static_cast<std::int64_t>(n);
    den_ = static_cast<std::int64_t>(d);
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

inline std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace subdyn
