#pragma once

#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <string>

#include "subdyn/block.hpp"
#include "subdyn/constants.hpp"
#include "subdyn/geometry.hpp"

namespace subdyn::svg {

inline std::string hsl(double hue_turns, double sat = 0.7, double light = 0.55) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "hsl(%.1f,%.0f%%,%.0f%%)", 360.0 * (hue_turns - std::floor(hue_turns)),
                100.0 * sat, 100.0 * light);
  return buf;
}

/// One coloured bar per tile; colours cycle through tile types.
inline void write_tiling(std::ostream& os, const Tiling1D& t, const Alphabet& alphabet,
                         double width = 1000.0, double height = 40.0) {
  const double total = t.total_length();
  const double scale = total > 0.0 ? width / total : 1.0;
  std::map<Letter, std::size_t> palette;
  for (const auto& tile : t.tiles) palette.emplace(tile.type, palette.size());
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height + 20
     << "\" viewBox=\"0 0 " << width << ' ' << height + 20 << "\">\n";
  for (const auto& tile : t.tiles) {
    double hue = static_cast<double>(palette[tile.type]) * 0.61803398874989485;
    os << "<rect x=\"" << tile.left * scale << "\" y=\"0\" width=\"" << tile.length * scale
       << "\" height=\"" << height << "\" fill=\"" << hsl(hue) << "\" stroke=\"black\" stroke-width=\"0.5\">"
       << "<title>" << alphabet.format(tile.type) << "</title></rect>\n";
  }
  os << "</svg>\n";
}

/// Block array drawn as cells tinted by 2 pi theta with an arrow at angle 2 pi theta.
inline void write_block(std::ostream& os, const BlockArray2D& a, double cell = 24.0) {
  const double w = cell * static_cast<double>(a.cols()), h = cell * static_cast<double>(a.rows());
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
     << "\" viewBox=\"0 0 " << w << ' ' << h << "\">\n";
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) {
      const double theta = a.value(r, c);
      const double x = cell * static_cast<double>(c), y = cell * static_cast<double>(r);
      os << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << cell << "\" height=\"" << cell
         << "\" fill=\"" << hsl(theta, 0.6, 0.75) << "\"/>\n";
      const double cx = x + cell / 2, cy = y + cell / 2, len = 0.4 * cell;
      // screen y grows downward
      const double dx = len * std::cos(two_pi * theta), dy = -len * std::sin(two_pi * theta);
      os << "<line x1=\"" << cx - dx << "\" y1=\"" << cy - dy << "\" x2=\"" << cx + dx << "\" y2=\"" << cy + dy
         << "\" stroke=\"black\" stroke-width=\"" << cell / 16 << "\"/>\n"
         << "<circle cx=\"" << cx + dx << "\" cy=\"" << cy + dy << "\" r=\"" << cell / 12 << "\"/>\n";
    }
  }
  os << "</svg>\n";
}

}  // namespace subdyn::svg
