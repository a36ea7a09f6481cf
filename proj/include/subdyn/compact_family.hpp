#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "subdyn/error.hpp"
#include "subdyn/substitution.hpp"

namespace subdyn {

/// Deterministic stream m_0, m_1, ... of nonnegative integers: an eventually
/// periodic sequence, or a Thue-Morse sequence over {lo, hi}.
class MSequence {
 public:
  static MSequence constant(std::uint64_t c) { return eventually_periodic({}, {c}); }
  static MSequence periodic(std::vector<std::uint64_t> period) {
    return eventually_periodic({}, std::move(period));
  }
  static MSequence eventually_periodic(std::vector<std::uint64_t> prefix,
                                       std::vector<std::uint64_t> period) {
    if (period.empty()) throw ParameterError("m sequence needs a nonempty period");
    MSequence s;
    s.prefix_ = std::move(prefix);
    s.period_ = std::move(period);
    return s;
  }
  /// m_i = lo if the binary digit sum of i is even, hi otherwise.
  static MSequence thue_morse(std::uint64_t lo, std::uint64_t hi) {
    MSequence s;
    s.tm_ = true;
    s.period_ = {lo, hi};
    return s;
  }

  /// "constant:c", "periodic:a,b,..", "eventually:a,b;c,d" or "thue-morse:lo,hi".
  static MSequence parse(const std::string& text) {
    auto colon = text.find(':');
    if (colon == std::string::npos) throw FormatError("m sequence '" + text + "' needs kind:values");
    std::string kind = text.substr(0, colon), rest = text.substr(colon + 1);
    auto list = [&](const std::string& s) {
      std::vector<std::uint64_t> v;
      std::stringstream ss(s);
      std::string item;
      while (std::getline(ss, item, ',')) {
        try {
          std::size_t used = 0;
          if (!item.empty() && item[0] == '-') throw std::invalid_argument("negative");
          v.push_back(std::stoull(item, &used));
          if (used != item.size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
          throw FormatError("bad m entry '" + item + "' in '" + text + "'");
        }
      }
      return v;
    };
    if (kind == "constant") {
      auto v = list(rest);
      if (v.size() != 1) throw FormatError("constant m takes one value");
      return constant(v[0]);
    }
    if (kind == "periodic") return periodic(list(rest));
    if (kind == "eventually") {
      auto semi = rest.find(';');
      if (semi == std::string::npos) throw FormatError("eventually:prefix;period expected");
      return eventually_periodic(list(rest.substr(0, semi)), list(rest.substr(semi + 1)));
    }
    if (kind == "thue-morse" || kind == "tm") {
      auto v = list(rest);
      if (v.size() != 2) throw FormatError("thue-morse m takes two values");
      return thue_morse(v[0], v[1]);
    }
    throw FormatError("unknown m sequence kind '" + kind + "'");
  }

  std::uint64_t at(std::size_t i) const {
    if (tm_) return period_[std::popcount(static_cast<std::uint64_t>(i)) & 1U];
    if (i < prefix_.size()) return prefix_[i];
    return period_[(i - prefix_.size()) % period_.size()];
  }

  std::vector<std::uint64_t> head(std::size_t count) const {
    std::vector<std::uint64_t> v(count);
    for (std::size_t i = 0; i < count; ++i) v[i] = at(i);
    return v;
  }

  /// sup_i m_i
  std::uint64_t bound() const {
    std::uint64_t b = 0;
    for (auto x : prefix_) b = std::max(b, x);
    for (auto x : period_) b = std::max(b, x);
    return b;
  }

  /// The tail value when m is eventually constant.
  std::optional<std::uint64_t> eventual_constant() const {
    if (tm_) {
      if (period_[0] == period_[1]) return period_[0];
      return std::nullopt;
    }
    if (std::all_of(period_.begin(), period_.end(), [&](auto x) { return x == period_[0]; }))
      return period_[0];
    return std::nullopt;
  }

 private:
  std::vector<std::uint64_t> prefix_;
  std::vector<std::uint64_t> period_;
  bool tm_ = false;
};

struct MuSolution {
  double mu = 0.0;
  double lambda = 0.0;      ///< mu + 1/mu
  std::size_t truncation = 0;
  double residual = 0.0;    ///< |1/mu - sum_{i<T} m_i mu^i|
  double tail_bound = 0.0;  ///< bound on sum_{i>=T} m_i mu^i
  int iterations = 0;
};

struct MuOptions {
  double tol = 1e-14;
  int max_iter = 200;
  std::size_t truncation = 0;  ///< 0 picks T adaptively so tail_bound < tol
};

namespace detail {

inline double truncated_series(const std::vector<std::uint64_t>& m, double mu) {
  double acc = 0.0;
  for (auto it = m.rbegin(); it != m.rend(); ++it) acc = acc * mu + static_cast<double>(*it);
  return acc;
}

inline MuSolution bisect_mu(const std::vector<std::uint64_t>& m, double bound, const MuOptions& opts) {
  auto g = [&](double mu) { return mu * truncated_series(m, mu) - 1.0; };
  double lo = 0.0, hi = 1.0;
  if (g(hi) <= 0.0)
    throw PreconditionError("no admissible mu: mu * sum m_i mu^i stays below 1 on (0,1)");
  MuSolution s;
  s.truncation = m.size();
  while (s.iterations < opts.max_iter && hi - lo > opts.tol) {
    double mid = 0.5 * (lo + hi);
    (g(mid) < 0.0 ? lo : hi) = mid;
    ++s.iterations;
  }
  s.mu = 0.5 * (lo + hi);
  if (!(s.mu > 0.0 && s.mu < 1.0)) throw PreconditionError("no admissible mu in (0,1)");
  s.lambda = s.mu + 1.0 / s.mu;
  s.residual = std::abs(1.0 / s.mu - truncated_series(m, s.mu));
  s.tail_bound = bound * std::pow(s.mu, static_cast<double>(m.size())) / (1.0 - s.mu);
  return s;
}

}  // namespace detail

/// Root mu in (0,1) of 1/mu = sum_i m_i mu^i by bisection; lambda = mu + 1/mu.
inline MuSolution solve_mu(const MSequence& m, const MuOptions& opts = {}) {
  if (!(opts.tol > 0.0)) throw ParameterError("tolerance must be positive");
  const double bound = static_cast<double>(m.bound());
  if (opts.truncation > 0) return detail::bisect_mu(m.head(opts.truncation), bound, opts);
  for (std::size_t t = 64; t <= (std::size_t{1} << 20); t *= 2) {
    auto s = detail::bisect_mu(m.head(t), bound, opts);
    if (s.tail_bound < opts.tol) return s;
  }
  throw ConvergenceError("series truncation did not reach the requested tail bound");
}

/// L(n) = mu^n + sum_{j=1}^{n} sum_{i>=j} m_i mu^{i+n+1-2j}, normalised to L(0) = 1.
inline double length_function(const MSequence& m, double mu, std::size_t n) {
  if (!(mu > 0.0 && mu < 1.0)) throw PreconditionError("mu must lie in (0,1)");
  const double bound = static_cast<double>(std::max<std::uint64_t>(m.bound(), 1));
  double total = std::pow(mu, static_cast<double>(n));
  for (std::size_t j = 1; j <= n; ++j) {
    double inner = 0.0;
    // exponent i + n + 1 - 2j with i >= j starts at n + 1 - j
    double p = std::pow(mu, static_cast<double>(n + 1 - j));
    for (std::size_t i = j;; ++i) {
      inner += static_cast<double>(m.at(i)) * p;
      if (bound * p / (1.0 - mu) < 1e-17 * std::max(inner, 1e-300) || p < 1e-300) break;
      p *= mu;
    }
    total += inner;
  }
  return total;
}

/// nu(n) = (1 - mu) mu^n
inline double frequency(double mu, std::size_t n) {
  if (!(mu > 0.0 && mu < 1.0)) throw PreconditionError("mu must lie in (0,1)");
  return (1.0 - mu) * std::pow(mu, static_cast<double>(n));
}

/// rho_m on {0..N, top}: 0 -> 0^{m_0} 1, n -> 0^{m_n} (n-1)(n+1). Letters above N
/// fold to top when fold is set; top -> 0^{c} top top when m is eventually c.
inline Substitution build_rho_m(const MSequence& m, std::uint64_t truncation = 64, bool fold = true) {
  if (truncation < 1) throw ParameterError("truncation must be at least 1");
  CompactRule rule{m.head(truncation + 1), m.eventual_constant()};
  return Substitution(Alphabet::compact(truncation, fold), std::move(rule));
}

struct CompactReport {
  MuSolution solution;
  std::vector<double> lengths;      ///< L(0..N)
  std::vector<double> frequencies;  ///< nu(0..N)
  double truncated_mass = 0.0;      ///< mu^{N+1}, frequency mass beyond N
};

inline CompactReport compact_report(const MSequence& m, std::size_t truncation,
                                    const MuOptions& opts = {}) {
  CompactReport r;
  r.solution = solve_mu(m, opts);
  for (std::size_t n = 0; n <= truncation; ++n) {
    r.lengths.push_back(length_function(m, r.solution.mu, n));
    r.frequencies.push_back(frequency(r.solution.mu, n));
  }
  r.truncated_mass = std::pow(r.solution.mu, static_cast<double>(truncation + 1));
  return r;
}

}  // namespace subdyn
