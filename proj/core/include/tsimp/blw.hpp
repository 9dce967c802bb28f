#pragma once

#include <optional>
#include <vector>

#include "tsimp/geometry_queries.hpp"
#include "tsimp/persistence.hpp"
#include "tsimp/terrain.hpp"

namespace tsimp {

/// Output of the topological simplification stage.
struct BlwResult {
  SimplexwiseFunction g;
  /// Realization order per cell: ascending g, then flow order. Within a
  /// gradient pair the coface ranks first.
  std::vector<std::uint32_t> vertex_rank;
  std::vector<std::uint32_t> edge_rank;
  std::vector<std::uint32_t> face_rank;
  /// Edge paired with each vertex or face in the simplified gradient, kNone for critical cells.
  std::vector<EdgeId> vertex_edge;
  std::vector<EdgeId> face_edge;
  Rational max_shift;                ///< strict bound on |g - canonical| actually used
  std::size_t cancelled_pairs = 0;
  std::size_t critical_cells = 0;    ///< critical cells of the simplified gradient

  std::uint32_t rank(int dim, std::int32_t id) const {
    return dim == 0 ? vertex_rank[id] : dim == 1 ? edge_rank[id] : face_rank[id];
  }
};

/// Cancels every persistence pair with persistence below 2 epsilon (all finite
/// pairs for an infinite budget) and returns a monotone function within
/// epsilon of the canonical one. Throws NonGenericEpsilon.
BlwResult blw_simplify(const Terrain& base, const AwarenessBudget& budget);

struct SplitPoint {
  Point2 position;
  Rational height;
};

struct SubdivisionPlan {
  std::vector<std::optional<SplitPoint>> edge_split;  ///< by base edge id
  std::vector<std::optional<SplitPoint>> face_split;  ///< by base face id
  std::size_t edges_split = 0;
  std::size_t faces_split = 0;

  std::size_t size() const { return edges_split + faces_split; }
};

enum class SubdivisionMode { Sparse, Full };

/// Sparse mode splits an edge whose value differs from both endpoints and a
/// face whose value differs from all corners or that has a split edge. A split
/// face also splits the edge it is paired with. Cells left whole are realized
/// by their highest vertex; wherever that changes the criticality of a vertex
/// of the realized terrain, the cells around it are split as well.
SubdivisionPlan plan_subdivision(const Terrain& base, const BlwResult& blw, const AwarenessBudget& budget,
                                 SubdivisionMode mode = SubdivisionMode::Sparse);

/// Point on e at parameter max(1/2, (g_e - eps - t_u) / (t_v - t_u)) from the
/// lower endpoint u. Throws InfeasiblePlacement unless g_e - t_v < eps.
SplitPoint place_edge_vertex(const Terrain& base, EdgeId e, const Rational& g_e, const AwarenessBudget& budget);

/// Same rule along the segment from the midpoint of the two lower corners to
/// the highest corner.
SplitPoint place_face_vertex(const Terrain& base, FaceId f, const Rational& g_f, const AwarenessBudget& budget);

/// Builds the subdivided terrain. Vertex ids follow the realization order so
/// that height ties resolve along the flow. Throws InfeasiblePlacement if a
/// vertex ends up farther than epsilon from the base.
Terrain realize(const Terrain& base, const BlwResult& blw, const SubdivisionPlan& plan,
                const AwarenessBudget& budget);

}  // namespace tsimp
