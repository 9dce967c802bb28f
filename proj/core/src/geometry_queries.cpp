#include "tsimp/geometry_queries.hpp"

#include <algorithm>
#include <unordered_set>

#include "tsimp/error.hpp"

namespace tsimp {

AwarenessBudget::AwarenessBudget(Rational epsilon) : epsilon_(std::move(epsilon)) {
  if (*epsilon_ <= 0) throw Error(ErrorCode::InvalidEpsilon, "epsilon must be positive");
}

Zone BaseIndex::zone(const Point2& u, const Point2& v) const {
  const Terrain& t = *base_;
  Zone z;
  const Feature start = locate(u);
  if (u == v) {
    z.push_back(start);
    return z;
  }
  const Rational dx = v.x - u.x, dy = v.y - u.y;
  auto pos = [&](VertexId x) -> const Point2& { return t.position(x); };
  auto side = [&](VertexId x) { return orientation(u, v, pos(x)); };
  // sign of (p - q) . (v - u)
  auto dir = [&](const Point2& p, const Point2& q) { return sgn((p.x - q.x) * dx + (p.y - q.y) * dy); };
  auto outside = [] { return Error(ErrorCode::OutsideDomain, "segment leaves the terrain domain"); };

  enum class State { AtVertex, InFace, Done };
  State state = State::Done;
  VertexId at = kNone;
  FaceId face = kNone;
  VertexId entry_vertex = kNone;

  auto enter_face = [&](FaceId f, VertexId from_vertex) {
    z.push_back({Feature::Kind::Face, f});
    face = f;
    entry_vertex = from_vertex;
    state = State::InFace;
  };
  auto enter_vertex = [&](VertexId x) {
    z.push_back({Feature::Kind::Vertex, x});
    at = x;
    state = State::AtVertex;
  };
  // Move along edge h (origin already visited); ends inside it if v lies there.
  auto along_edge = [&](HalfedgeId h) {
    z.push_back({Feature::Kind::Edge, Terrain::edge_of(h)});
    const VertexId y = t.target(h);
    if (dir(pos(y), v) > 0) {
      state = State::Done;
    } else {
      enter_vertex(y);
    }
  };

  switch (start.kind) {
    case Feature::Kind::Vertex: enter_vertex(start.id); break;
    case Feature::Kind::Face: enter_face(start.id, kNone); break;
    case Feature::Kind::Edge: {
      const HalfedgeId h = Terrain::halfedge_of(start.id);
      const Point2 &a = pos(t.origin(h)), &b = pos(t.target(h));
      const int o = orientation(a, b, v);
      if (o == 0) {
        z.push_back(start);
        const VertexId ahead = dir(b, u) > 0 ? t.target(h) : t.origin(h);
        if (dir(pos(ahead), v) > 0) return z;
        enter_vertex(ahead);
      } else {
        const HalfedgeId into = o > 0 ? h : Terrain::twin(h);
        if (t.face(into) == kNone) throw outside();
        z.push_back(start);
        enter_face(t.face(into), kNone);
      }
      break;
    }
  }

  while (state != State::Done) {
    if (state == State::AtVertex) {
      if (pos(at) == v) break;
      const HalfedgeId first = t.out_halfedge(at);
      HalfedgeId h = first;
      bool moved = false;
      do {
        const VertexId y = t.target(h);
        if (side(y) == 0 && dir(pos(y), pos(at)) > 0) {
          along_edge(h);
          moved = true;
          break;
        }
        h = t.ccw_out(h);
      } while (h != first);
      if (moved) continue;
      h = first;
      do {
        if (t.face(h) != kNone) {
          const VertexId y0 = t.target(h), y1 = t.origin(t.prev(h));
          if (orientation(pos(at), pos(y0), v) > 0 && orientation(pos(at), pos(y1), v) < 0) {
            enter_face(t.face(h), at);
            moved = true;
            break;
          }
        }
        h = t.ccw_out(h);
      } while (h != first);
      if (!moved) throw outside();
      continue;
    }

    // InFace
    const HalfedgeId h0 = t.face_halfedge(face);
    const HalfedgeId hs[3] = {h0, t.next(h0), t.prev(h0)};
    int o[3];
    for (int i = 0; i < 3; ++i) o[i] = orientation(pos(t.origin(hs[i])), pos(t.target(hs[i])), v);
    if (o[0] >= 0 && o[1] >= 0 && o[2] >= 0) {
      const int zeros = (o[0] == 0) + (o[1] == 0) + (o[2] == 0);
      if (zeros == 1) {
        for (int i = 0; i < 3; ++i)
          if (o[i] == 0) z.push_back({Feature::Kind::Edge, Terrain::edge_of(hs[i])});
      } else if (zeros == 2) {
        for (HalfedgeId h : hs)
          if (pos(t.origin(h)) == v) z.push_back({Feature::Kind::Vertex, t.origin(h)});
      }
      break;
    }
    bool moved = false;
    for (HalfedgeId h : hs) {
      const VertexId c = t.origin(h);
      if (c != entry_vertex && side(c) == 0 && dir(pos(c), u) > 0) {
        enter_vertex(c);
        moved = true;
        break;
      }
    }
    if (moved) continue;
    for (HalfedgeId h : hs) {
      if (side(t.origin(h)) < 0 && side(t.target(h)) > 0) {
        z.push_back({Feature::Kind::Edge, Terrain::edge_of(h)});
        const FaceId g = t.face(Terrain::twin(h));
        if (g == kNone) throw outside();
        enter_face(g, kNone);
        moved = true;
        break;
      }
    }
    if (!moved) throw Error(ErrorCode::InternalInvariant, "zone walk found no exit");
  }
  return z;
}

std::vector<VertexId> BaseIndex::range(const Point2& a, const Point2& b, const Point2& c) const {
  if (orientation(a, b, c) == 0) throw Error(ErrorCode::DegenerateTriangle, "degenerate query triangle");
  const Terrain& t = *base_;
  std::unordered_set<VertexId> seen;
  std::vector<VertexId> stack;
  std::vector<VertexId> found;
  auto consider = [&](VertexId x) {
    if (!seen.insert(x).second) return;
    if (in_closed_triangle(t.position(x), a, b, c)) {
      found.push_back(x);
      stack.push_back(x);
    }
  };
  const Point2* corners[3] = {&a, &b, &c};
  for (int i = 0; i < 3; ++i) {
    for (const Feature& f : zone(*corners[i], *corners[(i + 1) % 3])) {
      switch (f.kind) {
        case Feature::Kind::Vertex: consider(f.id); break;
        case Feature::Kind::Edge: {
          const auto [p, q] = t.edge_vertices(f.id);
          consider(p);
          consider(q);
          break;
        }
        case Feature::Kind::Face:
          for (VertexId x : t.face_vertices(f.id)) consider(x);
          break;
      }
    }
  }
  while (!stack.empty()) {
    const VertexId x = stack.back();
    stack.pop_back();
    const HalfedgeId first = t.out_halfedge(x);
    HalfedgeId h = first;
    do {
      consider(t.target(h));
      h = t.ccw_out(h);
    } while (h != first);
  }
  std::sort(found.begin(), found.end());
  return found;
}

namespace {

Rational base_height_from(const Terrain& t, const Feature& f, const BaseIndex& index, const Point2& p) {
  if (f.kind == Feature::Kind::Vertex) return t.height(f.id);
  return index.height_at(p);
}

}  // namespace

Rational BaseIndex::segment_deviation(LiftedPoint u, LiftedPoint v, const AwarenessBudget& budget) const {
  const Terrain& t = *base_;
  const Point2 &pu = *u.position, &pv = *v.position;
  const Zone z = zone(pu, pv);
  Rational best = abs(*u.height - base_height_from(t, z.front(), *this, pu));
  if (!budget.admits(best)) return best;
  const Rational dv = abs(*v.height - base_height_from(t, z.back(), *this, pv));
  if (dv > best) best = dv;
  if (!budget.admits(best)) return best;
  const Rational dh = *v.height - *u.height;

  for (const Feature& f : z) {
    Rational dev;
    if (f.kind == Feature::Kind::Vertex) {
      const Point2& p = t.position(f.id);
      if (p == pu || p == pv) continue;
      const Rational lambda = param_on_segment(p, pu, pv);
      dev = abs(*u.height + lambda * dh - t.height(f.id));
    } else if (f.kind == Feature::Kind::Edge) {
      const auto [a, b] = t.edge_vertices(f.id);
      const Point2 &pa = t.position(a), &pb = t.position(b);
      const Rational sa = signed_area2(pu, pv, pa), sb = signed_area2(pu, pv, pb);
      if (sgn(sa) == 0 && sgn(sb) == 0) continue;  // overlap: endpoints are listed separately
      const Rational ta = signed_area2(pa, pb, pu), tb = signed_area2(pa, pb, pv);
      const Rational lambda = ta / (ta - tb);
      const Rational mu = sa / (sa - sb);
      dev = abs(*u.height + lambda * dh - (t.height(a) + mu * (t.height(b) - t.height(a))));
    } else {
      continue;
    }
    if (dev > best) {
      best = dev;
      if (!budget.admits(best)) return best;
    }
  }
  return best;
}

Rational BaseIndex::interior_deviation(LiftedPoint u, LiftedPoint v, LiftedPoint w,
                                       const AwarenessBudget& budget) const {
  const Terrain& t = *base_;
  Rational best = 0;
  for (VertexId x : range(*u.position, *v.position, *w.position)) {
    const Rational dev = abs(plane_height(u, v, w, t.position(x)) - t.height(x));
    if (dev > best) {
      best = dev;
      if (!budget.admits(best)) return best;
    }
  }
  return best;
}

Zone zone_of_segment(const BaseIndex& base, const Point2& u, const Point2& v) { return base.zone(u, v); }
Zone zone_of_segment(const Terrain& base, const Point2& u, const Point2& v) {
  return BaseIndex(base).zone(u, v);
}

std::vector<VertexId> triangular_range_query(const BaseIndex& base, const Point2& a, const Point2& b,
                                             const Point2& c) {
  return base.range(a, b, c);
}
std::vector<VertexId> triangular_range_query(const Terrain& base, const Point2& a, const Point2& b,
                                             const Point2& c) {
  return BaseIndex(base).range(a, b, c);
}

bool segment_linf_aware(const BaseIndex& base, LiftedPoint u, LiftedPoint v, const AwarenessBudget& budget) {
  if (budget.is_infinite()) return true;
  return budget.admits(base.segment_deviation(u, v, budget));
}

bool triangle_linf_aware(const BaseIndex& base, LiftedPoint u, LiftedPoint v, LiftedPoint w,
                         const AwarenessBudget& budget) {
  if (orientation(*u.position, *v.position, *w.position) == 0)
    throw Error(ErrorCode::DegenerateTriangle, "degenerate candidate triangle");
  if (budget.is_infinite()) return true;
  return segment_linf_aware(base, u, v, budget) && segment_linf_aware(base, v, w, budget) &&
         segment_linf_aware(base, w, u, budget) && budget.admits(base.interior_deviation(u, v, w, budget));
}

void check_generic_epsilon(const Terrain& base, const Rational& epsilon) {
  if (epsilon <= 0) throw Error(ErrorCode::InvalidEpsilon, "epsilon must be positive");
  std::vector<Rational> heights;
  heights.reserve(base.num_vertices());
  for (VertexId v : base.vertex_ids()) heights.push_back(base.height(v));
  std::sort(heights.begin(), heights.end());
  heights.erase(std::unique(heights.begin(), heights.end()), heights.end());
  const Rational gap = 2 * epsilon;
  for (const Rational& h : heights) {
    const Rational target = h + gap;
    if (std::binary_search(heights.begin(), heights.end(), target))
      throw Error(ErrorCode::NonGenericEpsilon,
                  "2*epsilon equals the height difference " + to_string(target) + " - " + to_string(h));
  }
}

}  // namespace tsimp
