#pragma once

// Hand transcription of the 2x2 example coloring: vertices x, y in {-1, 0, 1}.

#include "chromatile/chromatile.hpp"

namespace fixtures {

using chromatile::Box;
using chromatile::Color;
using chromatile::EdgeColoring;
using chromatile::GridEdge;
using chromatile::LatticePoint;

inline Box figure_box() { return Box(LatticePoint{-1, -1}, {2, 2}); }

inline EdgeColoring figure_coloring() {
  EdgeColoring c;
  auto h = [&](std::int64_t x, std::int64_t y, Color col) { c.assign({LatticePoint{x, y}, 0}, col); };
  auto v = [&](std::int64_t x, std::int64_t y, Color col) { c.assign({LatticePoint{x, y}, 1}, col); };
  const Color one = Color::plain(0), two = Color::plain(1), three = Color::plain(2);
  const Color c1 = Color::boundary(0), c2 = Color::boundary(1);

  h(-1, 1, one), h(0, 1, two);
  h(-1, 0, two), h(0, 0, one);
  h(-1, -1, two), h(0, -1, one);

  v(-1, 0, three), v(-1, -1, one);
  v(0, 0, three), v(0, -1, c1);
  v(1, 0, three), v(1, -1, two);

  for (std::int64_t y = -1; y <= 1; ++y) h(-2, y, c1), h(1, y, c1);
  for (std::int64_t x = -1; x <= 1; ++x) v(x, -2, c2), v(x, 1, c2);
  return c;
}

}  // namespace fixtures
