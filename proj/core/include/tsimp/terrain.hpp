#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "tsimp/predicates.hpp"
#include "tsimp/rational.hpp"

namespace tsimp {

using VertexId = std::int32_t;
using EdgeId = std::int32_t;
using FaceId = std::int32_t;
using HalfedgeId = std::int32_t;

inline constexpr std::int32_t kNone = -1;

struct TerrainPoint {
  Rational x;
  Rational y;
  Rational height;
};

using Triangle = std::array<VertexId, 3>;

/// Counterclockwise ring of neighbours around an interior vertex.
struct LinkPolygon {
  VertexId center = kNone;
  std::vector<VertexId> ring;
  std::vector<Rational> heights;

  std::size_t size() const { return ring.size(); }
};

/// Lower (or upper) part of a link: vertices plus link edges with both ends included.
struct LinkPart {
  std::vector<VertexId> vertices;
  std::vector<std::pair<VertexId, VertexId>> edges;
};

struct Criticality {
  enum class Kind { Minimum, Maximum, Regular, Saddle, Boundary };
  Kind kind = Kind::Regular;
  int components = 0;  ///< upper-link component count; k for a k-saddle

  /// Number of homological events contributed by the vertex (a k-saddle counts k - 1).
  int weight() const;

  friend bool operator==(const Criticality&, const Criticality&) = default;
};

const char* to_string(Criticality::Kind kind);

/// Planar straight-line triangulation with exact heights, stored as a halfedge
/// structure. Halfedges come in pairs (twin = h ^ 1, edge = h / 2). Boundary
/// halfedges have face kNone and chain along the domain boundary. Elements
/// removed by local edits are marked dead and never reused, so ids stay stable.
class Terrain {
 public:
  /// Builds and validates a terrain. Triangles may be given in either orientation.
  static Terrain build(std::span<const TerrainPoint> points, std::span<const Triangle> triangles);

  std::size_t num_vertices() const { return live_vertices_; }
  std::size_t num_edges() const { return live_edges_; }
  std::size_t num_faces() const { return live_faces_; }

  std::size_t vertex_capacity() const { return vertices_.size(); }
  std::size_t edge_capacity() const { return halfedges_.size() / 2; }
  std::size_t face_capacity() const { return faces_.size(); }

  bool vertex_alive(VertexId v) const { return vertices_[v].out != kNone; }
  bool edge_alive(EdgeId e) const { return halfedges_[2 * e].origin != kNone; }
  bool face_alive(FaceId f) const { return faces_[f] != kNone; }

  const Point2& position(VertexId v) const { return vertices_[v].position; }
  const Rational& height(VertexId v) const { return vertices_[v].height; }
  void set_height(VertexId v, Rational h) { vertices_[v].height = std::move(h); }

  /// VertexOrder: height first, vertex id breaks ties.
  bool vertex_less(VertexId a, VertexId b) const {
    const int c = cmp(vertices_[a].height, vertices_[b].height);
    return c < 0 || (c == 0 && a < b);
  }

  // halfedge navigation
  VertexId origin(HalfedgeId h) const { return halfedges_[h].origin; }
  VertexId target(HalfedgeId h) const { return halfedges_[h ^ 1].origin; }
  HalfedgeId next(HalfedgeId h) const { return halfedges_[h].next; }
  HalfedgeId prev(HalfedgeId h) const { return halfedges_[h].prev; }
  static HalfedgeId twin(HalfedgeId h) { return h ^ 1; }
  static EdgeId edge_of(HalfedgeId h) { return h >> 1; }
  static HalfedgeId halfedge_of(EdgeId e) { return 2 * e; }
  FaceId face(HalfedgeId h) const { return halfedges_[h].face; }
  HalfedgeId face_halfedge(FaceId f) const { return faces_[f]; }
  HalfedgeId out_halfedge(VertexId v) const { return vertices_[v].out; }
  /// Next outgoing halfedge of origin(h) in counterclockwise order.
  HalfedgeId ccw_out(HalfedgeId h) const { return twin(prev(h)); }

  bool is_boundary_halfedge(HalfedgeId h) const { return face(h) == kNone; }
  bool is_boundary_edge(EdgeId e) const {
    return face(2 * e) == kNone || face(2 * e + 1) == kNone;
  }
  /// Boundary vertices keep a boundary halfedge as their out halfedge.
  bool is_boundary_vertex(VertexId v) const { return face(out_halfedge(v)) == kNone; }

  Triangle face_vertices(FaceId f) const;
  std::array<VertexId, 2> edge_vertices(EdgeId e) const {
    return {origin(2 * e), origin(2 * e + 1)};
  }

  /// Outgoing halfedges in counterclockwise order. For a boundary vertex the
  /// list runs from the first interior spoke to the outgoing boundary halfedge,
  /// so consecutive entries always bound a face.
  std::vector<HalfedgeId> outgoing(VertexId v) const;
  std::vector<VertexId> neighbors(VertexId v) const;
  std::size_t degree(VertexId v) const;
  std::optional<HalfedgeId> find_halfedge(VertexId a, VertexId b) const;

  /// Link cycle of an interior vertex. Throws BoundaryVertex.
  LinkPolygon link(VertexId v) const;

  std::vector<VertexId> vertex_ids() const;
  std::vector<EdgeId> edge_ids() const;
  std::vector<FaceId> face_ids() const;

  // Local edits. Geometric preconditions are checked by the callers in local_ops.

  /// Replaces edge ab (faces abc, bad) by cd.
  void flip(EdgeId e);

  /// Deletes interior vertex v with its star and fills the link polygon with
  /// the given counterclockwise triangles over link vertices.
  void replace_star(VertexId v, std::span<const Triangle> triangles);

  VertexId split_face(FaceId f, const Point2& p, Rational h);
  VertexId split_edge(EdgeId e, const Point2& p, Rational h);

  /// Throws InternalInvariant on any broken connectivity invariant.
  void validate_structure() const;

  /// Copy with dead elements dropped and ids renumbered densely.
  Terrain compacted() const;

  std::vector<TerrainPoint> points() const;     ///< live vertices in id order
  std::vector<Triangle> triangles() const;      ///< faces over compacted vertex indices

 private:
  struct VertexRecord {
    Point2 position;
    Rational height;
    HalfedgeId out = kNone;
  };
  struct HalfedgeRecord {
    VertexId origin = kNone;
    HalfedgeId next = kNone;
    HalfedgeId prev = kNone;
    FaceId face = kNone;
  };

  HalfedgeId new_edge(VertexId a, VertexId b);
  void link_face(FaceId f, HalfedgeId h0, HalfedgeId h1, HalfedgeId h2);
  void check_embedding() const;

  std::vector<VertexRecord> vertices_;
  std::vector<HalfedgeRecord> halfedges_;
  std::vector<HalfedgeId> faces_;
  std::size_t live_vertices_ = 0;
  std::size_t live_edges_ = 0;
  std::size_t live_faces_ = 0;
};

/// Lower link under VertexOrder. Throws BoundaryVertex.
LinkPart lower_link(const Terrain& t, VertexId v);
LinkPart upper_link(const Terrain& t, VertexId v);

Criticality classify(const Terrain& t, VertexId v);

struct CriticalCounts {
  int minima = 0;
  int maxima = 0;
  int saddles = 0;        ///< saddle vertices
  int saddle_weight = 0;  ///< sum of (k - 1) over k-saddles
  int boundary = 0;

  /// Interior homological events: minima + maxima + saddle_weight.
  int interior_total() const { return minima + maxima + saddle_weight; }
};

CriticalCounts count_critical(const Terrain& t);

/// Piecewise-linear height at p. Throws OutsideDomain.
Rational height_at(const Terrain& t, const Point2& p);

/// Exact max |a - b| over the common domain via the overlay candidates.
/// Throws DomainMismatch when the boundaries disagree.
Rational linf_distance(const Terrain& a, const Terrain& b);

}  // namespace tsimp
