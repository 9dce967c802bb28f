#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "tsimp/terrain.hpp"

namespace tsimp {

struct Feature {
  enum class Kind : std::uint8_t { Vertex, Edge, Face };
  Kind kind = Kind::Face;
  std::int32_t id = kNone;

  friend bool operator==(const Feature&, const Feature&) = default;
};

/// Base features met by a segment, in order from its start to its end.
using Zone = std::vector<Feature>;

/// L-infinity budget. An empty epsilon means no bound.
class AwarenessBudget {
 public:
  AwarenessBudget() = default;  ///< infinite
  explicit AwarenessBudget(Rational epsilon);

  static AwarenessBudget infinite() { return {}; }

  bool is_infinite() const { return !epsilon_.has_value(); }
  const Rational& epsilon() const { return *epsilon_; }
  bool admits(const Rational& deviation) const { return !epsilon_ || deviation <= *epsilon_; }

 private:
  std::optional<Rational> epsilon_;
};

/// A vertex of a candidate edge or triangle: a planar position with a height.
struct LiftedPoint {
  const Point2* position;
  const Rational* height;
};

/// Point location and zone walks over an immutable base terrain. Keeps a
/// location hint between queries, so one index should not be shared across
/// threads.
class BaseIndex {
 public:
  explicit BaseIndex(const Terrain& base, std::uint64_t seed = 0x5eed);

  const Terrain& terrain() const { return *base_; }

  /// Smallest feature containing p. Throws OutsideDomain.
  Feature locate(const Point2& p) const;
  Rational height_at(const Point2& p) const;

  Zone zone(const Point2& u, const Point2& v) const;
  std::vector<VertexId> range(const Point2& a, const Point2& b, const Point2& c) const;

  /// Largest |segment height - base height| over the candidate points of uv.
  /// Stops early and returns a value above the budget once the budget is exceeded.
  Rational segment_deviation(LiftedPoint u, LiftedPoint v, const AwarenessBudget& budget = {}) const;
  /// Same for the base vertices strictly inside or on the closed triangle uvw.
  Rational interior_deviation(LiftedPoint u, LiftedPoint v, LiftedPoint w,
                              const AwarenessBudget& budget = {}) const;

 private:
  FaceId walk(const Point2& p, FaceId start, int max_steps) const;
  Feature classify_in_face(FaceId f, const Point2& p) const;

  const Terrain* base_;
  mutable FaceId hint_ = kNone;
  mutable std::minstd_rand rng_;
};

Zone zone_of_segment(const BaseIndex& base, const Point2& u, const Point2& v);
Zone zone_of_segment(const Terrain& base, const Point2& u, const Point2& v);

std::vector<VertexId> triangular_range_query(const BaseIndex& base, const Point2& a, const Point2& b,
                                             const Point2& c);
std::vector<VertexId> triangular_range_query(const Terrain& base, const Point2& a, const Point2& b,
                                             const Point2& c);

bool segment_linf_aware(const BaseIndex& base, LiftedPoint u, LiftedPoint v, const AwarenessBudget& budget);
bool triangle_linf_aware(const BaseIndex& base, LiftedPoint u, LiftedPoint v, LiftedPoint w,
                         const AwarenessBudget& budget);

/// Height of the plane through the three lifted points, at p.
Rational plane_height(LiftedPoint a, LiftedPoint b, LiftedPoint c, const Point2& p);

/// Throws NonGenericEpsilon if 2 epsilon equals a height difference of two base
/// vertices, InvalidEpsilon if epsilon <= 0.
void check_generic_epsilon(const Terrain& base, const Rational& epsilon);

}  // namespace tsimp
