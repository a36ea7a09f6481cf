#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "subdyn/block.hpp"
#include "subdyn/constants.hpp"
#include "subdyn/error.hpp"
#include "subdyn/geometry.hpp"
#include "subdyn/substitution.hpp"

namespace subdyn {

using Complex = std::complex<double>;

inline Complex unit_phase(double turns) {
  return {std::cos(two_pi * turns), std::sin(two_pi * turns)};
}

/// Letter -> complex weight. `balanced` means zero alphabet average;
/// `unimodular` means |w| = 1 identically.
struct WeightFunction {
  std::function<Complex(const Letter&)> fn;
  bool balanced = false;
  bool unimodular = false;

  Complex operator()(const Letter& l) const { return fn(l); }
};

/// Weights indexed like the finite alphabet.
inline WeightFunction finite_weights(const Alphabet& alphabet, std::vector<Complex> w) {
  if (!alphabet.is_finite() || w.size() != alphabet.finite_info().names.size())
    throw DomainError("one weight per finite letter required");
  Complex mean = 0.0;
  bool unimodular = true;
  for (const auto& x : w) {
    mean += x;
    unimodular = unimodular && std::abs(std::abs(x) - 1.0) == 0.0;
  }
  mean /= static_cast<double>(w.size());
  WeightFunction f;
  f.balanced = std::abs(mean) < 1e-15;
  f.unimodular = unimodular;
  f.fn = [w = std::move(w)](const Letter& l) { return w.at(std::get<FiniteLabel>(l).id); };
  return f;
}

/// theta -> e^{2 pi i theta}; balanced against Haar measure.
inline WeightFunction torus_weight(std::shared_ptr<const TorusBasis> basis) {
  WeightFunction f;
  f.balanced = true;
  f.unimodular = true;
  f.fn = [basis = std::move(basis)](const Letter& l) {
    return unit_phase(std::get<TorusPoint>(l).value(*basis));
  };
  return f;
}

/// eta(z) for |z| <= zmax, with eta(-z) = conj(eta(z)).
struct AutocorrelationTable {
  int zmax = 0;
  std::vector<Complex> values;  ///< index z + zmax
  std::size_t window = 0;       ///< sites averaged over (0 for closed-form tables)
  double residual = 0.0;        ///< recursion residual (closed-form tables)

  Complex at(int z) const {
    if (z < -zmax || z > zmax) throw DomainError("z outside autocorrelation table");
    return values[static_cast<std::size_t>(z + zmax)];
  }
};

/// (1/N) sum_{k, k-z in window} w[k] conj(w[k-z]) over a window of N sites.
inline AutocorrelationTable empirical_autocorrelation(std::span<const Complex> w, int zmax,
                                                      bool unimodular = false) {
  if (zmax < 0) throw ParameterError("zmax must be nonnegative");
  const std::size_t n = w.size();
  if (n <= static_cast<std::size_t>(zmax)) throw ParameterError("window smaller than zmax");
  AutocorrelationTable t;
  t.zmax = zmax;
  t.window = n;
  t.values.assign(static_cast<std::size_t>(2 * zmax + 1), 0.0);
  for (int z = 0; z <= zmax; ++z) {
    Complex acc = 0.0;
    if (z == 0 && unimodular) {
      acc = static_cast<double>(n);
    } else {
      for (std::size_t k = static_cast<std::size_t>(z); k < n; ++k) acc += w[k] * std::conj(w[k - z]);
    }
    Complex eta = acc / static_cast<double>(n);
    if (z == 0) eta = eta.real();
    t.values[static_cast<std::size_t>(zmax + z)] = eta;
    t.values[static_cast<std::size_t>(zmax - z)] = std::conj(eta);
  }
  return t;
}

inline AutocorrelationTable empirical_autocorrelation(const Word& word, const WeightFunction& wf,
                                                      int zmax) {
  std::vector<Complex> w;
  w.reserve(word.size());
  for (const auto& l : word) w.push_back(wf(l));
  return empirical_autocorrelation(w, zmax, wf.unimodular);
}

/// Point set on Z (integer positions); empty sites carry weight 0.
inline AutocorrelationTable empirical_autocorrelation(const PointSet1D& ps, const WeightFunction& wf,
                                                      int zmax) {
  if (ps.size() == 0) throw PreconditionError("empty point set");
  auto [lo, hi] = std::minmax_element(ps.positions.begin(), ps.positions.end());
  for (double x : ps.positions)
    if (x != std::round(x)) throw DomainError("autocorrelation needs points on Z");
  const auto base = static_cast<std::int64_t>(*lo);
  std::vector<Complex> w(static_cast<std::size_t>(static_cast<std::int64_t>(*hi) - base + 1), 0.0);
  for (std::size_t k = 0; k < ps.size(); ++k)
    w[static_cast<std::size_t>(static_cast<std::int64_t>(ps.positions[k]) - base)] = wf(ps.types[k]);
  bool dense = w.size() == ps.size();
  return empirical_autocorrelation(w, zmax, wf.unimodular && dense);
}

/// z -> -z. The closed-form table and the averaging estimator use opposite
/// orientations of z; reflect one to compare them.
inline AutocorrelationTable reflect(AutocorrelationTable t) {
  std::reverse(t.values.begin(), t.values.end());
  return t;
}

/// eta(1) = e^{-2 pi i alpha} / (2 - e^{2 pi i alpha})
inline Complex eta_one(double alpha) {
  return std::conj(unit_phase(alpha)) / (2.0 - unit_phase(alpha));
}

/// Closed-form table for the generalised Thue-Morse rule theta -> theta, theta+alpha
/// with weight e^{2 pi i theta}: eta(0) = 1, eta(1) closed form, then
/// eta(2z) = eta(z), eta(2z+1) = (eta(z) e^{-2 pi i alpha} + eta(z+1) e^{2 pi i alpha}) / 2.
inline AutocorrelationTable eta_recursive(double alpha, int zmax) {
  if (zmax < 0) throw ParameterError("zmax must be nonnegative");
  const Complex e = unit_phase(alpha);
  std::vector<Complex> pos(static_cast<std::size_t>(std::max(zmax, 1)) + 2);
  pos[0] = 1.0;
  pos[1] = eta_one(alpha);
  for (std::size_t z = 2; z < pos.size(); ++z) {
    const std::size_t y = z / 2;
    pos[z] = (z % 2 == 0) ? pos[y] : 0.5 * (pos[y] * std::conj(e) + pos[y + 1] * e);
  }
  auto eta = [&](std::int64_t z) { return z >= 0 ? pos[static_cast<std::size_t>(z)] : std::conj(pos[static_cast<std::size_t>(-z)]); };

  AutocorrelationTable t;
  t.zmax = zmax;
  t.values.resize(static_cast<std::size_t>(2 * zmax + 1));
  for (int z = -zmax; z <= zmax; ++z) t.values[static_cast<std::size_t>(z + zmax)] = eta(z);

  double resid = 0.0;
  const std::int64_t lim = zmax;
  for (std::int64_t z = -lim; z <= lim; ++z) {
    if (std::abs(2 * z) <= lim) resid = std::max(resid, std::abs(eta(2 * z) - eta(z)));
    if (std::abs(2 * z + 1) <= lim && std::abs(z + 1) <= lim + 1)
      resid = std::max(resid, std::abs(eta(2 * z + 1) - 0.5 * (eta(z) * std::conj(e) + eta(z + 1) * e)));
  }
  t.residual = resid;
  return t;
}

struct SingularityVerdict {
  double modulus = 0.0;   ///< |eta(1)|
  bool criterion_met = false;  ///< |eta(1)| < 1, the sufficient condition for singular continuity
};

inline SingularityVerdict singularity_check(double alpha) {
  double m = std::abs(eta_one(alpha));
  return {m, m < 1.0 - 1e-12};
}

/// Distribution function of the depth-N Riesz product on a uniform x grid.
struct DistributionTable {
  double alpha = 0.0;
  int depth = 0;
  int quadrature_log2 = 0;
  std::vector<double> x;
  std::vector<double> values;
};

struct RieszOptions {
  int quadrature_log2 = 0;  ///< 0 selects max(depth + 4, 20)
};

/// F_N(x) = int_0^x prod_{n<N} |1 + e^{2 pi i (2^n k + alpha)}|^2 / 2 dk
/// by the trapezoid rule on 2^q equal steps, reported at x = i/K, i = 0..K.
inline DistributionTable riesz_distribution(double alpha, int depth, int grid, const RieszOptions& opts = {}) {
  if (depth < 1) throw ParameterError("Riesz depth must be at least 1");
  if (grid < 2) throw ParameterError("distribution grid needs at least 2 intervals");
  const int q = opts.quadrature_log2 > 0 ? opts.quadrature_log2 : std::max(depth + 4, 20);
  if (q < depth + 4)
    throw ParameterError("quadrature step 2^-" + std::to_string(q) + " too coarse for depth " +
                         std::to_string(depth));
  if (q > 30) throw ParameterError("quadrature beyond 2^30 points");

  const std::uint64_t m = std::uint64_t{1} << q;
  const std::uint64_t mask = m - 1;
  const int lo_bits = q / 2;
  const std::uint64_t lo_mask = (std::uint64_t{1} << lo_bits) - 1;
  std::vector<Complex> lo_table(std::size_t{1} << lo_bits), hi_table(std::size_t{1} << (q - lo_bits));
  for (std::size_t i = 0; i < lo_table.size(); ++i)
    lo_table[i] = unit_phase(static_cast<double>(i) / static_cast<double>(m));
  for (std::size_t i = 0; i < hi_table.size(); ++i)
    hi_table[i] = unit_phase(static_cast<double>(i << lo_bits) / static_cast<double>(m));
  const Complex c = unit_phase(alpha);

  auto density = [&](std::uint64_t j) {
    double prod = 1.0;
    for (int n = 0; n < depth; ++n) {
      std::uint64_t k = (j << n) & mask;
      Complex t = hi_table[k >> lo_bits] * lo_table[k & lo_mask];
      prod *= std::max(0.0, 1.0 + (c.real() * t.real() - c.imag() * t.imag()));
    }
    return prod;
  };

  DistributionTable out;
  out.alpha = alpha;
  out.depth = depth;
  out.quadrature_log2 = q;
  out.x.resize(static_cast<std::size_t>(grid) + 1);
  out.values.resize(static_cast<std::size_t>(grid) + 1);
  for (int i = 0; i <= grid; ++i) out.x[static_cast<std::size_t>(i)] = static_cast<double>(i) / grid;

  const long double h = 1.0L / static_cast<long double>(m);
  long double cumulative = 0.0L;
  double prev = density(0);
  std::size_t next_out = 1;
  out.values[0] = 0.0;
  for (std::uint64_t j = 1; j <= m; ++j) {
    double cur = density(j & mask);
    long double step = 0.5L * h * (static_cast<long double>(prev) + cur);
    // report every grid point that falls in (x_{j-1}, x_j]
    while (next_out <= static_cast<std::size_t>(grid)) {
      long double target = static_cast<long double>(next_out) / grid;
      long double xj = static_cast<long double>(j) * h;
      if (target > xj) break;
      long double frac = (target - (xj - h)) / h;
      // linear interpolation of the trapezoid segment
      out.values[next_out] = static_cast<double>(cumulative + frac * h *
                                                 (prev + 0.5L * frac * (cur - prev)));
      ++next_out;
    }
    cumulative += step;
    prev = cur;
  }
  if (std::abs(out.values.back() - 1.0) > 1e-9)
    throw ConvergenceError("Riesz distribution total mass " + std::to_string(out.values.back()) +
                           " differs from 1");
  return out;
}

struct TmDecomposition {
  double pure_point = 0.0;  ///< |(w_a + w_b)/2|^2, Bragg comb on Z
  double continuous = 0.0;  ///< |(w_a - w_b)/2|^2, Thue-Morse measure prefactor
};

inline TmDecomposition tm_decomposition(Complex wa, Complex wb) {
  return {std::norm((wa + wb) / 2.0), std::norm((wa - wb) / 2.0)};
}

/// I(k) = |sum_x w(x) e^{-2 pi i k x}|^2 / N
inline std::vector<double> empirical_diffraction(std::span<const double> positions,
                                                 std::span<const Complex> weights,
                                                 std::span<const double> ks) {
  if (positions.empty()) throw PreconditionError("empty point set");
  if (weights.size() != positions.size()) throw PreconditionError("one weight per point required");
  std::vector<double> out;
  out.reserve(ks.size());
  for (double k : ks) {
    Complex acc = 0.0;
    for (std::size_t i = 0; i < positions.size(); ++i) {
      double ph = std::fmod(k * positions[i], 1.0);
      acc += weights[i] * std::conj(unit_phase(ph));
    }
    out.push_back(std::norm(acc) / static_cast<double>(positions.size()));
  }
  return out;
}

/// 2D version with unit weights unless given.
inline std::vector<double> empirical_diffraction(const PointSet2D& ps, std::span<const Point2> ks,
                                                 std::span<const Complex> weights = {}) {
  if (ps.size() == 0) throw PreconditionError("empty point set");
  if (!weights.empty() && weights.size() != ps.size())
    throw PreconditionError("one weight per point required");
  std::vector<double> out;
  out.reserve(ks.size());
  for (const auto& k : ks) {
    Complex acc = 0.0;
    for (std::size_t i = 0; i < ps.size(); ++i) {
      double ph = std::fmod(k[0] * ps.points[i][0] + k[1] * ps.points[i][1], 1.0);
      Complex term = std::conj(unit_phase(ph));
      acc += weights.empty() ? term : weights[i] * term;
    }
    out.push_back(std::norm(acc) / static_cast<double>(ps.size()));
  }
  return out;
}

/// Unit-vector autocorrelations of one supertile, corner-anchored window.
/// e1 is one column to the right; e2 is one row up (rows count downward).
struct BlockEta {
  Complex origin = 0.0;
  Complex e1 = 0.0;
  Complex e2 = 0.0;
  std::size_t cells = 0;
};

using TorusWeight = std::function<Complex(double)>;

inline BlockEta block_autocorrelation(const BlockArray2D& a, const TorusWeight& w, bool unimodular) {
  const std::size_t rows = a.rows(), cols = a.cols();
  std::vector<Complex> wt(rows * cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) wt[r * cols + c] = w(a.value(r, c));
  BlockEta out;
  out.cells = rows * cols;
  Complex s0 = 0.0, s1 = 0.0, s2 = 0.0;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const Complex x = wt[r * cols + c];
      if (!unimodular) s0 += x * std::conj(x);
      if (c >= 1) s1 += x * std::conj(wt[r * cols + c - 1]);
      if (r + 1 < rows) s2 += x * std::conj(wt[(r + 1) * cols + c]);
    }
  }
  const double n = static_cast<double>(out.cells);
  out.origin = unimodular ? Complex(1.0) : Complex(s0.real() / n);
  out.e1 = s1 / n;
  out.e2 = s2 / n;
  return out;
}

struct BlockEtaReport {
  BlockEta level;          ///< level n
  BlockEta previous;       ///< level n-1
  double cauchy_gap = 0.0; ///< max |eta_n(e_i) - eta_{n-1}(e_i)|
  bool converged = false;  ///< cauchy_gap < 1e-2
  int n = 0;
};

inline constexpr int block_eta_min_level = 6;

/// eta(e1), eta(e2) of the level-n supertile of theta, with a Cauchy check
/// against level n-1.
inline BlockEtaReport eta_block_2d(const BlockSubstitution2D& rule, const TorusPoint& theta, int n,
                                   const TorusWeight& w = unit_phase, bool unimodular = true) {
  if (n < block_eta_min_level)
    throw ParameterError("eta_block_2d needs level >= " + std::to_string(block_eta_min_level));
  BlockEtaReport rep;
  rep.n = n;
  rep.previous = block_autocorrelation(block_supertile(rule, theta, n - 1), w, unimodular);
  rep.level = block_autocorrelation(block_supertile(rule, theta, n), w, unimodular);
  rep.cauchy_gap = std::max(std::abs(rep.level.e1 - rep.previous.e1), std::abs(rep.level.e2 - rep.previous.e2));
  rep.converged = rep.cauchy_gap < 1e-2;
  return rep;
}

}  // namespace subdyn
