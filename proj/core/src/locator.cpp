#include <cmath>

#include "tsimp/error.hpp"
#include "tsimp/geometry_queries.hpp"

namespace tsimp {

BaseIndex::BaseIndex(const Terrain& base, std::uint64_t seed)
    : base_(&base), rng_(static_cast<std::uint32_t>(seed % 2147483646u) + 1u) {}

FaceId BaseIndex::walk(const Point2& p, FaceId start, int max_steps) const {
  const Terrain& t = *base_;
  FaceId f = start;
  for (int step = 0; step < max_steps; ++step) {
    const HalfedgeId h0 = t.face_halfedge(f);
    const HalfedgeId hs[3] = {h0, t.next(h0), t.prev(h0)};
    const unsigned r = rng_() % 3;
    HalfedgeId cross = kNone;
    for (unsigned k = 0; k < 3; ++k) {
      const HalfedgeId h = hs[(r + k) % 3];
      if (orientation(t.position(t.origin(h)), t.position(t.target(h)), p) < 0) {
        cross = h;
        break;
      }
    }
    if (cross == kNone) return f;
    f = t.face(Terrain::twin(cross));
    if (f == kNone) return kNone;
  }
  return kNone;
}

Feature BaseIndex::classify_in_face(FaceId f, const Point2& p) const {
  const Terrain& t = *base_;
  const HalfedgeId h0 = t.face_halfedge(f);
  const HalfedgeId hs[3] = {h0, t.next(h0), t.prev(h0)};
  int zeros = 0;
  HalfedgeId on = kNone;
  for (HalfedgeId h : hs) {
    if (orientation(t.position(t.origin(h)), t.position(t.target(h)), p) == 0) {
      ++zeros;
      on = h;
    }
  }
  if (zeros == 0) return {Feature::Kind::Face, f};
  if (zeros == 1) return {Feature::Kind::Edge, Terrain::edge_of(on)};
  for (HalfedgeId h : hs)
    if (t.position(t.origin(h)) == p) return {Feature::Kind::Vertex, t.origin(h)};
  throw Error(ErrorCode::InternalInvariant, "point location lost a vertex");
}

Feature BaseIndex::locate(const Point2& p) const {
  const Terrain& t = *base_;
  if (hint_ == kNone || static_cast<std::size_t>(hint_) >= t.face_capacity() || !t.face_alive(hint_)) {
    hint_ = kNone;
    for (FaceId f = 0; f < static_cast<FaceId>(t.face_capacity()); ++f)
      if (t.face_alive(f)) {
        hint_ = f;
        break;
      }
    if (hint_ == kNone) throw Error(ErrorCode::OutsideDomain, "empty terrain");
  }
  const int cap = 64 + 4 * static_cast<int>(std::sqrt(static_cast<double>(t.num_faces())));
  FaceId f = walk(p, hint_, cap);
  if (f == kNone) {
    for (FaceId g = 0; g < static_cast<FaceId>(t.face_capacity()); ++g) {
      if (!t.face_alive(g)) continue;
      const auto [a, b, c] = t.face_vertices(g);
      if (in_closed_triangle(p, t.position(a), t.position(b), t.position(c))) {
        f = g;
        break;
      }
    }
    if (f == kNone) throw Error(ErrorCode::OutsideDomain, "point outside the terrain domain");
  }
  hint_ = f;
  return classify_in_face(f, p);
}

Rational plane_height(LiftedPoint a, LiftedPoint b, LiftedPoint c, const Point2& p) {
  const Rational area = signed_area2(*a.position, *b.position, *c.position);
  const Rational wa = signed_area2(p, *b.position, *c.position);
  const Rational wb = signed_area2(*a.position, p, *c.position);
  const Rational wc = signed_area2(*a.position, *b.position, p);
  return (wa * *a.height + wb * *b.height + wc * *c.height) / area;
}

Rational BaseIndex::height_at(const Point2& p) const {
  const Terrain& t = *base_;
  const Feature f = locate(p);
  switch (f.kind) {
    case Feature::Kind::Vertex: return t.height(f.id);
    case Feature::Kind::Edge: {
      const auto [a, b] = t.edge_vertices(f.id);
      const Rational s = param_on_segment(p, t.position(a), t.position(b));
      return t.height(a) + s * (t.height(b) - t.height(a));
    }
    case Feature::Kind::Face: {
      const auto [a, b, c] = t.face_vertices(f.id);
      return plane_height({&t.position(a), &t.height(a)}, {&t.position(b), &t.height(b)},
                          {&t.position(c), &t.height(c)}, p);
    }
  }
  return {};
}

Rational height_at(const Terrain& t, const Point2& p) { return BaseIndex(t).height_at(p); }

namespace {

Rational domain_area(const Terrain& t) {
  Rational area = 0;
  for (FaceId f : t.face_ids()) {
    const auto [a, b, c] = t.face_vertices(f);
    area += signed_area2(t.position(a), t.position(b), t.position(c));
  }
  return area;
}

// Max deviation of `from` against `other` along every edge of `from`, including vertices.
Rational one_sided(const Terrain& from, const BaseIndex& other) {
  Rational best = 0;
  for (VertexId v : from.vertex_ids()) {
    const Rational d = abs(from.height(v) - other.height_at(from.position(v)));
    if (d > best) best = d;
  }
  for (EdgeId e : from.edge_ids()) {
    const auto [a, b] = from.edge_vertices(e);
    const Rational d = other.segment_deviation({&from.position(a), &from.height(a)},
                                               {&from.position(b), &from.height(b)});
    if (d > best) best = d;
  }
  return best;
}

}  // namespace

Rational linf_distance(const Terrain& a, const Terrain& b) {
  if (domain_area(a) != domain_area(b))
    throw Error(ErrorCode::DomainMismatch, "terrains cover regions of different area");
  BaseIndex ia(a), ib(b);
  try {
    const Rational ab = one_sided(a, ib);
    const Rational ba = one_sided(b, ia);
    return ab > ba ? ab : ba;
  } catch (const Error& err) {
    if (err.code() == ErrorCode::OutsideDomain)
      throw Error(ErrorCode::DomainMismatch, "terrain domains differ");
    throw;
  }
}

}  // namespace tsimp
