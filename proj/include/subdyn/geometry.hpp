#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "subdyn/constants.hpp"
#include "subdyn/error.hpp"
#include "subdyn/perron.hpp"
#include "subdyn/substitution.hpp"

namespace subdyn {

struct Tile {
  Letter type;
  double left = 0.0;
  double length = 0.0;
};

struct Tiling1D {
  std::vector<Tile> tiles;
  double lambda = 1.0;
  int level = 0;

  double total_length() const {
    return tiles.empty() ? 0.0 : tiles.back().left + tiles.back().length;
  }
};

/// Default cap on the number of tiles produced by inflate_tiling.
inline constexpr std::size_t default_tile_cap = std::size_t{1} << 24;

/// Lays rho^n(seed) out from 0 with tile lengths L(type). Positions use
/// compensated summation; lengths are always read from L.
inline Tiling1D inflate_tiling(const Substitution& rho, const LengthFunction& length, double lambda,
                               const Word& seed, int n, std::size_t cap = default_tile_cap) {
  Word word = iterate(rho, seed, n, cap);
  Tiling1D t;
  t.lambda = lambda;
  t.level = n;
  t.tiles.reserve(word.size());
  double sum = 0.0, carry = 0.0;  // Neumaier summation
  for (auto& letter : word) {
    double len = length(letter);
    if (!(len > 0.0)) throw DomainError("tile lengths must be positive");
    t.tiles.push_back(Tile{std::move(letter), sum + carry, len});
    double next = sum + len;
    carry += std::abs(sum) >= len ? (sum - next) + len : (len - next) + sum;
    sum = next;
  }
  return t;
}

/// Finite-alphabet convenience overload using the PF length vector.
inline Tiling1D inflate_tiling(const Substitution& rho, const PerronData& pf, const Word& seed, int n,
                               std::size_t cap = default_tile_cap) {
  auto m = substitution_matrix(rho);
  return inflate_tiling(rho, length_from(m, pf), pf.lambda, seed, n, cap);
}

/// Left endpoints of a 1D tiling, with their tile types.
struct PointSet1D {
  std::vector<double> positions;
  std::vector<Letter> types;
  std::size_t size() const { return positions.size(); }
};

inline PointSet1D point_set(const Tiling1D& t) {
  PointSet1D ps;
  ps.positions.reserve(t.tiles.size());
  ps.types.reserve(t.tiles.size());
  for (const auto& tile : t.tiles) {
    ps.positions.push_back(tile.left);
    ps.types.push_back(tile.type);
  }
  return ps;
}

/// Point set on Z from a word: letter k sits at k.
inline PointSet1D lattice_point_set(const Word& w) {
  PointSet1D ps;
  ps.types = w;
  ps.positions.resize(w.size());
  for (std::size_t k = 0; k < w.size(); ++k) ps.positions[k] = static_cast<double>(k);
  return ps;
}

struct DeloneConstants {
  double min_gap = 0.0;
  double max_gap = 0.0;
};

inline DeloneConstants delone_constants(const PointSet1D& ps) {
  if (ps.size() < 2) throw PreconditionError("Delone constants need at least two points");
  DeloneConstants d{std::numeric_limits<double>::infinity(), 0.0};
  for (std::size_t k = 1; k < ps.size(); ++k) {
    double gap = ps.positions[k] - ps.positions[k - 1];
    if (!(gap > 0.0)) throw PreconditionError("points must be strictly increasing");
    d.min_gap = std::min(d.min_gap, gap);
    d.max_gap = std::max(d.max_gap, gap);
  }
  return d;
}

using Point2 = std::array<double, 2>;

struct PointSet2D {
  std::vector<Point2> points;
  std::vector<std::array<std::int64_t, 2>> sites;  ///< lattice site each point came from
  std::size_t size() const { return points.size(); }
};

/// Rectangular window [m_lo, m_hi) x [n_lo, n_hi) of Z^2.
struct LatticeWindow {
  std::int64_t m_lo = 0, m_hi = 0, n_lo = 0, n_hi = 0;
};

struct Modulation {
  double amplitude_x = 0.2;
  double amplitude_y = 0.2;
  double frequency_x = 1.4142135623730950488;  // sqrt 2
  double frequency_y = 2.6457513110645905905;  // sqrt 7
};

/// {(m,n) + (a_x sin(2 pi m f_x), a_y sin(2 pi n f_y))} over the window.
inline PointSet2D modulated_lattice(const Modulation& mod, const LatticeWindow& win) {
  if (win.m_hi < win.m_lo || win.n_hi < win.n_lo) throw ParameterError("empty lattice window");
  PointSet2D ps;
  const auto count = static_cast<std::size_t>((win.m_hi - win.m_lo) * (win.n_hi - win.n_lo));
  ps.points.reserve(count);
  ps.sites.reserve(count);
  for (auto n = win.n_lo; n < win.n_hi; ++n) {
    const double dy = mod.amplitude_y * std::sin(two_pi * std::fmod(static_cast<double>(n) * mod.frequency_y, 1.0));
    for (auto m = win.m_lo; m < win.m_hi; ++m) {
      const double dx =
          mod.amplitude_x * std::sin(two_pi * std::fmod(static_cast<double>(m) * mod.frequency_x, 1.0));
      ps.points.push_back({static_cast<double>(m) + dx, static_cast<double>(n) + dy});
      ps.sites.push_back({m, n});
    }
  }
  return ps;
}

}  // namespace subdyn
