#pragma once

#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tsimp/geometry_queries.hpp"
#include "tsimp/terrain.hpp"

namespace tsimp {

/// Closed height interval of two vertices. The ids record the endpoints in
/// vertex order (height, then id).
struct HeightInterval {
  Rational lo;
  Rational hi;
  VertexId lo_id = kNone;
  VertexId hi_id = kNone;

  static HeightInterval of(const Terrain& t, VertexId x, VertexId y);
  bool intersects(const HeightInterval& other) const { return lo <= other.hi && other.lo <= hi; }
  /// Intersection under vertex order, so equal heights never touch.
  bool intersects_in_order(const HeightInterval& other) const {
    return !before(hi, hi_id, other.lo, other.lo_id) && !before(other.hi, other.hi_id, lo, lo_id);
  }

 private:
  static bool before(const Rational& h, VertexId u, const Rational& k, VertexId v) {
    const int c = cmp(h, k);
    return c < 0 || (c == 0 && u < v);
  }
};

using DiagonalSet = std::vector<std::pair<VertexId, VertexId>>;

enum class LinkMode { FirstValid, BestLinf };

struct LinkTriangulation {
  DiagonalSet diagonals;
  std::vector<Triangle> triangles;  ///< counterclockwise, over link vertices
  Rational deviation;               ///< max deviation from base over the region (BestLinf only)
};

/// Memoized L-infinity deviations keyed by vertex ids. Valid while the
/// positions and heights of the keyed vertices stay fixed and the budget is unchanged.
class DeviationCache {
 public:
  std::optional<Rational> segment(VertexId a, VertexId b) const;
  void store_segment(VertexId a, VertexId b, const Rational& dev);
  std::optional<Rational> interior(VertexId a, VertexId b, VertexId c) const;
  void store_interior(VertexId a, VertexId b, VertexId c, const Rational& dev);
  void clear();

 private:
  std::unordered_map<std::uint64_t, Rational> segments_;
  std::unordered_map<std::uint64_t, Rational> interiors_;
};

/// Closed height intervals of ab and of the opposite vertices cd intersect. Throws BoundaryEdge.
bool topologically_flippable(const Terrain& t, EdgeId e);
/// Same test in vertex order. Such flips also keep the type of every vertex. Throws BoundaryEdge.
bool order_flippable(const Terrain& t, EdgeId e);
/// The quad around e is strictly convex. Throws BoundaryEdge.
bool geometrically_flippable(const Terrain& t, EdgeId e);
/// Throws BoundaryEdge, NotConvex.
void flip_edge(Terrain& t, EdgeId e);

/// Throws BoundaryVertex, NotOnLink.
bool persistence_aware(const Terrain& t, VertexId v, VertexId a, VertexId b);

/// Throws BoundaryVertex, WrongDegree, NotRegular.
void remove_degree3(Terrain& t, VertexId v);

/// Returns nullopt when no valid triangulation of the link exists.
/// Throws BoundaryVertex, NotRegular.
std::optional<LinkTriangulation> find_link_triangulation(const Terrain& t, const BaseIndex& base, VertexId v,
                                                         const AwarenessBudget& budget, LinkMode mode,
                                                         DeviationCache* cache = nullptr);

/// Validates that diags triangulate the link of v (count, straight-line
/// properness, no crossings) and performs the removal. Persistence-awareness is
/// not checked here. Throws BoundaryVertex, InvalidDiagonalSet.
void remove_vertex(Terrain& t, VertexId v, const DiagonalSet& diags);

/// Triangles of the link polygon induced by the diagonals. Throws InvalidDiagonalSet.
std::vector<Triangle> link_triangles(const Terrain& t, VertexId v, const DiagonalSet& diags);

}  // namespace tsimp
