#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "tsimp/geometry_queries.hpp"
#include "tsimp/persistence.hpp"
#include "tsimp/terrain.hpp"

namespace tsimp::testing {

using Rng = std::mt19937_64;

struct RandomTerrainOptions {
  std::size_t vertices = 20;
  int coord_range = 60;       ///< integer coordinates in [0, coord_range]
  int height_range = 1000;    ///< heights k / height_den with k in [0, height_range]
  int height_den = 7;
  bool distinct_heights = true;
  bool rim_high = false;      ///< hull vertices above every interior height
};

/// Random points triangulated with Delaunay and random rational heights.
Terrain random_terrain(Rng& rng, const RandomTerrainOptions& opt = {});

/// rows x cols grid with unit spacing, heights row-major, SW-NE diagonals.
Terrain grid_terrain(std::size_t rows, std::size_t cols, const std::vector<Rational>& heights);

/// Smooth value noise summed over octaves, integer heights.
std::vector<Rational> fractal_heights(std::size_t n, std::uint64_t seed);

/// Random rational in [lo, hi] with the given denominator.
Rational random_rational(Rng& rng, int lo, int hi, int den);

// ---- oracles --------------------------------------------------------------

struct Diagram {
  std::vector<std::pair<Rational, Rational>> pairs[2];  ///< positive persistence only, sorted
  std::vector<Rational> essential[2];                   ///< sorted
};

/// Plain dense Z2 reduction of the lower-star filtration without any shortcut.
Diagram naive_diagram(const Terrain& t);
/// Positive-persistence diagram of a library result, normalised for comparison.
Diagram normalise(const PersistenceDiagram& d);
bool same(const Diagram& a, const Diagram& b);

/// 0-dimensional pairs by union-find over vertices in height order (elder rule).
std::vector<std::pair<Rational, Rational>> union_find_pairs(const Terrain& t);

/// Height of t at p by scanning every face. Throws if p is outside.
Rational scan_height(const Terrain& t, const Point2& p);

/// Max |segment - base| from every crossing with every base edge, plus base
/// vertices on the segment and the endpoints.
Rational scan_segment_deviation(const Terrain& base, const Point2& p, const Rational& hp, const Point2& q,
                                const Rational& hq);
/// Max |triangle - base| over the closed triangle.
Rational scan_triangle_deviation(const Terrain& base, const Point2& a, const Rational& ha, const Point2& b,
                                 const Rational& hb, const Point2& c, const Rational& hc);

/// Every triangulation of a convex polygon 0..n-1, as lists of diagonals (i < j).
std::vector<std::vector<std::pair<int, int>>> polygon_triangulations(int n);

/// Perfect matching between a and b where a_i ~ b_j iff close(a_i, b_j).
template <class A, class B, class Close>
bool perfect_matching(const std::vector<A>& a, const std::vector<B>& b, Close close) {
  if (a.size() != b.size()) return false;
  const std::size_t n = a.size();
  std::vector<int> match_b(n, -1);
  std::vector<char> seen;
  auto augment = [&](auto&& self, std::size_t i) -> bool {
    for (std::size_t j = 0; j < n; ++j) {
      if (seen[j] || !close(a[i], b[j])) continue;
      seen[j] = 1;
      if (match_b[j] < 0 || self(self, static_cast<std::size_t>(match_b[j]))) {
        match_b[j] = static_cast<int>(i);
        return true;
      }
    }
    return false;
  };
  for (std::size_t i = 0; i < n; ++i) {
    seen.assign(n, 0);
    if (!augment(augment, i)) return false;
  }
  return true;
}

}  // namespace tsimp::testing
