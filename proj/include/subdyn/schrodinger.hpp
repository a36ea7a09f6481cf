#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "subdyn/error.hpp"
#include "subdyn/language.hpp"
#include "subdyn/substitution.hpp"

namespace subdyn {

/// Hyperlocal potential: V(n) depends only on the letter at n.
using PotentialMap = std::function<double(const Letter&)>;

struct Potential {
  std::vector<double> values;
  std::size_t begin = 0;  ///< index in the generating word of values[0]
};

/// V(n) = phi(word[n]) for n in [begin, end).
inline Potential potential(const Word& word, const PotentialMap& phi, std::size_t begin, std::size_t end) {
  if (begin > end || end > word.size()) throw DomainError("potential window exceeds word");
  Potential p;
  p.begin = begin;
  p.values.reserve(end - begin);
  for (std::size_t n = begin; n < end; ++n) p.values.push_back(phi(word[n]));
  return p;
}

/// H psi(n) = psi(n+1) + psi(n-1) + V(n) psi(n) on N sites, Dirichlet boundary.
struct TridiagonalOperator {
  std::vector<double> diagonal;

  TridiagonalOperator() = default;
  explicit TridiagonalOperator(std::vector<double> v) : diagonal(std::move(v)) {}
  explicit TridiagonalOperator(const Potential& p) : diagonal(p.values) {}

  std::size_t size() const { return diagonal.size(); }
  double max_abs_potential() const {
    double m = 0.0;
    for (double v : diagonal) m = std::max(m, std::abs(v));
    return m;
  }

  /// Number of eigenvalues strictly below x (Sturm sequence).
  std::size_t count_below(double x) const {
    constexpr double pivmin = 1e-300;
    std::size_t count = 0;
    double q = 1.0;
    for (std::size_t i = 0; i < diagonal.size(); ++i) {
      q = diagonal[i] - x - (i == 0 ? 0.0 : 1.0 / q);
      if (std::abs(q) < pivmin) q = -pivmin;
      if (q < 0.0) ++count;
    }
    return count;
  }
};

inline constexpr double eigen_bracket_tol = 1e-12;

/// All eigenvalues, ascending, by recursive bisection on Sturm counts.
inline std::vector<double> eigenvalues(const TridiagonalOperator& h, double tol = eigen_bracket_tol) {
  const std::size_t n = h.size();
  if (n == 0) throw PreconditionError("operator needs at least one site");
  std::vector<double> out(n);
  const double bound = 2.0 + h.max_abs_potential();
  double lo = -bound - 1e-9, hi = bound + 1e-9;

  struct Interval {
    double lo, hi;
    std::size_t count_lo, count_hi;
  };
  std::vector<Interval> stack{{lo, hi, 0, n}};
  while (!stack.empty()) {
    Interval iv = stack.back();
    stack.pop_back();
    if (iv.count_hi == iv.count_lo) continue;
    if (iv.hi - iv.lo <= tol) {
      double mid = 0.5 * (iv.lo + iv.hi);
      for (std::size_t k = iv.count_lo; k < iv.count_hi; ++k) out[k] = mid;
      continue;
    }
    double mid = 0.5 * (iv.lo + iv.hi);
    std::size_t c = h.count_below(mid);
    c = std::clamp(c, iv.count_lo, iv.count_hi);
    stack.push_back({mid, iv.hi, c, iv.count_hi});
    stack.push_back({iv.lo, mid, iv.count_lo, c});
  }
  return out;
}

/// Eigenvalues of a truncation plus the normalised counting function.
struct SpectrumSample {
  std::vector<double> eigenvalues;  ///< ascending

  explicit SpectrumSample(std::vector<double> ev) : eigenvalues(std::move(ev)) {
    std::sort(eigenvalues.begin(), eigenvalues.end());
  }
  explicit SpectrumSample(const TridiagonalOperator& h) : SpectrumSample(subdyn::eigenvalues(h)) {}

  /// #{eigenvalues <= E} / N
  double ids(double energy) const {
    auto it = std::upper_bound(eigenvalues.begin(), eigenvalues.end(), energy);
    return static_cast<double>(it - eigenvalues.begin()) / static_cast<double>(eigenvalues.size());
  }
};

struct Gap {
  double left = 0.0;
  double right = 0.0;
  double width() const { return right - left; }
};

/// Gaps of a finite truncation; bands are the rest of [min, max].
struct GapReport {
  std::vector<Gap> gaps;
  double span = 0.0;          ///< max eigenvalue - min eigenvalue
  double band_measure = 0.0;  ///< span minus total gap width
  double resolution = 0.0;
  static constexpr const char* label = "finite-truncation approximation";
};

/// Consecutive-eigenvalue gaps wider than `resolution`.
inline GapReport gap_report(const SpectrumSample& s, double resolution) {
  if (!(resolution > 0.0)) throw ParameterError("gap resolution must be positive");
  GapReport r;
  r.resolution = resolution;
  const auto& ev = s.eigenvalues;
  if (ev.empty()) return r;
  r.span = ev.back() - ev.front();
  double total = 0.0;
  for (std::size_t k = 1; k < ev.size(); ++k) {
    if (ev[k] - ev[k - 1] > resolution) {
      r.gaps.push_back({ev[k - 1], ev[k]});
      total += ev[k] - ev[k - 1];
    }
  }
  r.band_measure = r.span - total;
  return r;
}

/// A block v repeated four times (the pattern behind Gordon-type arguments).
inline std::optional<Repetition> gordon_blocks(const Word& word) { return find_repetition(word, 4); }

}  // namespace subdyn
