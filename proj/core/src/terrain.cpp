#include "tsimp/terrain.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <unordered_map>

#include "tsimp/error.hpp"

namespace tsimp {

namespace {

std::uint64_t key(VertexId a, VertexId b) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
         static_cast<std::uint32_t>(b);
}

// Position of direction (dx, dy) in [0, 2pi): half 0 is y > 0 or (y == 0, x > 0).
int half_of(const Rational& dx, const Rational& dy) {
  const int sy = sgn(dy);
  return (sy > 0 || (sy == 0 && sgn(dx) > 0)) ? 0 : 1;
}

// True if the angle of direction a is strictly less than that of b.
bool angle_less(const Point2& o, const Point2& a, const Point2& b) {
  const int ha = half_of(a.x - o.x, a.y - o.y);
  const int hb = half_of(b.x - o.x, b.y - o.y);
  if (ha != hb) return ha < hb;
  return orientation(o, a, b) > 0;
}

std::string vname(VertexId v) { return "vertex " + std::to_string(v); }

}  // namespace

int Criticality::weight() const {
  switch (kind) {
    case Kind::Minimum:
    case Kind::Maximum: return 1;
    case Kind::Saddle: return components - 1;
    default: return 0;
  }
}

const char* to_string(Criticality::Kind kind) {
  switch (kind) {
    case Criticality::Kind::Minimum: return "minimum";
    case Criticality::Kind::Maximum: return "maximum";
    case Criticality::Kind::Regular: return "regular";
    case Criticality::Kind::Saddle: return "saddle";
    case Criticality::Kind::Boundary: return "boundary";
  }
  return "unknown";
}

HalfedgeId Terrain::new_edge(VertexId a, VertexId b) {
  const auto h = static_cast<HalfedgeId>(halfedges_.size());
  halfedges_.push_back({a, kNone, kNone, kNone});
  halfedges_.push_back({b, kNone, kNone, kNone});
  ++live_edges_;
  return h;
}

void Terrain::link_face(FaceId f, HalfedgeId h0, HalfedgeId h1, HalfedgeId h2) {
  const HalfedgeId hs[3] = {h0, h1, h2};
  for (int i = 0; i < 3; ++i) {
    halfedges_[hs[i]].next = hs[(i + 1) % 3];
    halfedges_[hs[i]].prev = hs[(i + 2) % 3];
    halfedges_[hs[i]].face = f;
  }
  faces_[f] = h0;
}

Terrain Terrain::build(std::span<const TerrainPoint> points, std::span<const Triangle> triangles) {
  const auto n = static_cast<VertexId>(points.size());
  Terrain t;
  t.vertices_.reserve(points.size());
  for (const auto& p : points) t.vertices_.push_back({Point2(p.x, p.y), p.height, kNone});

  for (const auto& tri : triangles)
    for (VertexId v : tri)
      if (v < 0 || v >= n) throw Error(ErrorCode::InvalidIndex, "triangle index " + std::to_string(v));

  {
    std::vector<VertexId> order(points.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](VertexId a, VertexId b) {
      return t.vertices_[a].position < t.vertices_[b].position;
    });
    for (std::size_t i = 1; i < order.size(); ++i)
      if (t.vertices_[order[i - 1]].position == t.vertices_[order[i]].position)
        throw Error(ErrorCode::DuplicatePoint,
                    vname(order[i - 1]) + " and " + vname(order[i]) + " coincide");
  }

  std::vector<Triangle> tris(triangles.begin(), triangles.end());
  for (auto& tri : tris) {
    if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2])
      throw Error(ErrorCode::DegenerateTriangle, "repeated vertex in triangle");
    const int o = orientation(t.vertices_[tri[0]].position, t.vertices_[tri[1]].position,
                              t.vertices_[tri[2]].position);
    if (o == 0) throw Error(ErrorCode::DegenerateTriangle, "collinear triangle");
    if (o < 0) std::swap(tri[1], tri[2]);
  }

  std::unordered_map<std::uint64_t, int> undirected;
  std::unordered_map<std::uint64_t, HalfedgeId> directed;
  undirected.reserve(tris.size() * 2);
  directed.reserve(tris.size() * 4);
  for (const auto& tri : tris)
    for (int i = 0; i < 3; ++i) {
      const VertexId a = tri[i], b = tri[(i + 1) % 3];
      if (++undirected[key(std::min(a, b), std::max(a, b))] > 2)
        throw Error(ErrorCode::NonManifoldEdge, vname(a) + "-" + std::to_string(b) + " has more than two faces");
    }
  for (const auto& tri : tris)
    for (int i = 0; i < 3; ++i) {
      const VertexId a = tri[i], b = tri[(i + 1) % 3];
      if (directed.count(key(a, b)))
        throw Error(ErrorCode::CrossingEdges, "overlapping triangles along " + vname(a) + "-" + std::to_string(b));
      directed[key(a, b)] = kNone;
    }

  directed.clear();
  t.faces_.assign(tris.size(), kNone);
  for (std::size_t f = 0; f < tris.size(); ++f) {
    HalfedgeId hs[3];
    for (int i = 0; i < 3; ++i) {
      const VertexId a = tris[f][i], b = tris[f][(i + 1) % 3];
      if (auto it = directed.find(key(a, b)); it != directed.end()) {
        hs[i] = it->second;
      } else {
        const HalfedgeId h = t.new_edge(a, b);
        directed[key(a, b)] = h;
        directed[key(b, a)] = h ^ 1;
        hs[i] = h;
      }
    }
    t.link_face(static_cast<FaceId>(f), hs[0], hs[1], hs[2]);
  }
  t.live_faces_ = tris.size();

  // Boundary chains and out pointers.
  std::vector<HalfedgeId> boundary_out(points.size(), kNone);
  std::vector<int> boundary_in(points.size(), 0);
  for (HalfedgeId h = 0; h < static_cast<HalfedgeId>(t.halfedges_.size()); ++h) {
    const VertexId a = t.halfedges_[h].origin;
    if (t.halfedges_[h].face == kNone) {
      if (boundary_out[a] != kNone) throw Error(ErrorCode::NonManifoldVertex, vname(a) + " is pinched");
      boundary_out[a] = h;
      ++boundary_in[t.target(h)];
    } else if (t.vertices_[a].out == kNone) {
      t.vertices_[a].out = h;
    }
  }
  for (VertexId v = 0; v < n; ++v) {
    if (t.vertices_[v].out == kNone) throw Error(ErrorCode::UnusedVertex, vname(v) + " is in no triangle");
    if (boundary_out[v] != kNone) t.vertices_[v].out = boundary_out[v];
  }
  for (HalfedgeId h = 0; h < static_cast<HalfedgeId>(t.halfedges_.size()); ++h) {
    if (t.halfedges_[h].face != kNone) continue;
    const HalfedgeId nx = boundary_out[t.target(h)];
    t.halfedges_[h].next = nx;
    t.halfedges_[nx].prev = h;
  }
  t.live_vertices_ = points.size();

  // Every vertex must have a single fan.
  std::vector<int> out_degree(points.size(), 0);
  for (const auto& he : t.halfedges_) ++out_degree[he.origin];
  for (VertexId v = 0; v < n; ++v) {
    const HalfedgeId start = t.vertices_[v].out;
    int count = 0;
    HalfedgeId h = start;
    do {
      ++count;
      h = t.ccw_out(h);
    } while (h != start && count <= out_degree[v]);
    if (count != out_degree[v]) throw Error(ErrorCode::NonManifoldVertex, vname(v) + " has more than one fan");
  }

  t.check_embedding();
  return t;
}

void Terrain::check_embedding() const {
  // Local injectivity: each fan turns exactly once (interior) or less than once (boundary).
  for (VertexId v = 0; v < static_cast<VertexId>(vertices_.size()); ++v) {
    if (!vertex_alive(v)) continue;
    const auto spokes = outgoing(v);
    const Point2& o = position(v);
    const bool boundary = is_boundary_vertex(v);
    int wraps = 0;
    const std::size_t steps = boundary ? spokes.size() - 1 : spokes.size();
    for (std::size_t i = 0; i < steps; ++i) {
      const Point2& a = position(target(spokes[i]));
      const Point2& b = position(target(spokes[(i + 1) % spokes.size()]));
      if (angle_less(o, b, a)) ++wraps;
    }
    bool ok;
    if (!boundary) {
      ok = wraps == 1;
    } else {
      const Point2& first = position(target(spokes.front()));
      const Point2& last = position(target(spokes.back()));
      ok = wraps == 0 || (wraps == 1 && angle_less(o, last, first));
    }
    if (!ok) throw Error(ErrorCode::CrossingEdges, "triangles around " + vname(v) + " overlap");
  }

  // The boundary must be a set of simple, pairwise disjoint cycles.
  std::vector<HalfedgeId> bnd;
  for (HalfedgeId h = 0; h < static_cast<HalfedgeId>(halfedges_.size()); ++h)
    if (halfedges_[h].origin != kNone && halfedges_[h].face == kNone) bnd.push_back(h);
  auto lo = [&](HalfedgeId h) { return std::min(position(origin(h)).fx, position(target(h)).fx); };
  auto hi = [&](HalfedgeId h) { return std::max(position(origin(h)).fx, position(target(h)).fx); };
  std::sort(bnd.begin(), bnd.end(), [&](HalfedgeId a, HalfedgeId b) { return lo(a) < lo(b); });
  for (std::size_t i = 0; i < bnd.size(); ++i) {
    const HalfedgeId a = bnd[i];
    const double reach = hi(a);
    const double slack = 1e-9 * (1.0 + std::abs(reach));
    for (std::size_t j = i + 1; j < bnd.size() && lo(bnd[j]) <= reach + slack; ++j) {
      const HalfedgeId b = bnd[j];
      const VertexId a0 = origin(a), a1 = target(a), b0 = origin(b), b1 = target(b);
      const Point2 &pa0 = position(a0), &pa1 = position(a1), &pb0 = position(b0), &pb1 = position(b1);
      bool bad;
      if (a0 == b0 || a0 == b1 || a1 == b0 || a1 == b1) {
        const VertexId other_b = (a0 == b0 || a1 == b0) ? b1 : b0;
        const VertexId other_a = (b0 == a0 || b1 == a0) ? a1 : a0;
        bad = on_segment(position(other_b), pa0, pa1) || on_segment(position(other_a), pb0, pb1);
      } else {
        bad = segments_intersect(pa0, pa1, pb0, pb1);
      }
      if (bad) throw Error(ErrorCode::CrossingEdges, "boundary edges intersect near " + vname(a0));
    }
  }
}

Triangle Terrain::face_vertices(FaceId f) const {
  const HalfedgeId h = faces_[f];
  return {origin(h), origin(next(h)), origin(prev(h))};
}

std::vector<HalfedgeId> Terrain::outgoing(VertexId v) const {
  std::vector<HalfedgeId> out;
  const HalfedgeId b = vertices_[v].out;
  HalfedgeId h = face(b) == kNone ? ccw_out(b) : b;
  const HalfedgeId start = h;
  do {
    out.push_back(h);
    h = ccw_out(h);
  } while (h != start);
  return out;
}

std::vector<VertexId> Terrain::neighbors(VertexId v) const {
  std::vector<VertexId> out;
  for (HalfedgeId h : outgoing(v)) out.push_back(target(h));
  return out;
}

std::size_t Terrain::degree(VertexId v) const {
  std::size_t d = 0;
  const HalfedgeId start = vertices_[v].out;
  HalfedgeId h = start;
  do {
    ++d;
    h = ccw_out(h);
  } while (h != start);
  return d;
}

std::optional<HalfedgeId> Terrain::find_halfedge(VertexId a, VertexId b) const {
  const HalfedgeId start = vertices_[a].out;
  HalfedgeId h = start;
  do {
    if (target(h) == b) return h;
    h = ccw_out(h);
  } while (h != start);
  return std::nullopt;
}

LinkPolygon Terrain::link(VertexId v) const {
  if (is_boundary_vertex(v)) throw Error(ErrorCode::BoundaryVertex, vname(v) + " is on the boundary");
  LinkPolygon lp;
  lp.center = v;
  for (HalfedgeId h : outgoing(v)) {
    lp.ring.push_back(target(h));
    lp.heights.push_back(height(target(h)));
  }
  return lp;
}

std::vector<VertexId> Terrain::vertex_ids() const {
  std::vector<VertexId> ids;
  ids.reserve(live_vertices_);
  for (VertexId v = 0; v < static_cast<VertexId>(vertices_.size()); ++v)
    if (vertex_alive(v)) ids.push_back(v);
  return ids;
}

std::vector<EdgeId> Terrain::edge_ids() const {
  std::vector<EdgeId> ids;
  ids.reserve(live_edges_);
  for (EdgeId e = 0; e < static_cast<EdgeId>(edge_capacity()); ++e)
    if (edge_alive(e)) ids.push_back(e);
  return ids;
}

std::vector<FaceId> Terrain::face_ids() const {
  std::vector<FaceId> ids;
  ids.reserve(live_faces_);
  for (FaceId f = 0; f < static_cast<FaceId>(faces_.size()); ++f)
    if (face_alive(f)) ids.push_back(f);
  return ids;
}

void Terrain::flip(EdgeId e) {
  const HalfedgeId h = 2 * e, t = h ^ 1;
  if (face(h) == kNone || face(t) == kNone) throw Error(ErrorCode::BoundaryEdge, "cannot flip a boundary edge");
  const FaceId f1 = face(h), f2 = face(t);
  const HalfedgeId hn = next(h), hp = prev(h), tn = next(t), tp = prev(t);
  const VertexId a = origin(h), b = origin(t), c = origin(hp), d = origin(tp);
  halfedges_[h].origin = c;
  halfedges_[t].origin = d;
  link_face(f1, h, tp, hn);
  link_face(f2, t, hp, tn);
  if (vertices_[a].out == h) vertices_[a].out = tn;
  if (vertices_[b].out == t) vertices_[b].out = hn;
}

void Terrain::replace_star(VertexId v, std::span<const Triangle> triangles) {
  if (is_boundary_vertex(v)) throw Error(ErrorCode::BoundaryVertex, vname(v) + " is on the boundary");
  const auto spokes = outgoing(v);
  std::unordered_map<std::uint64_t, HalfedgeId> sides;
  std::vector<FaceId> free_faces;
  for (HalfedgeId s : spokes) {
    const HalfedgeId rim = next(s);
    sides[key(origin(rim), target(rim))] = rim;
    free_faces.push_back(face(s));
  }
  for (HalfedgeId s : spokes) {
    const VertexId a = target(s);
    if (vertices_[a].out == (s ^ 1)) vertices_[a].out = next(s);
    halfedges_[s] = {};
    halfedges_[s ^ 1] = {};
    --live_edges_;
  }
  for (FaceId f : free_faces) faces_[f] = kNone;
  live_faces_ -= free_faces.size();
  vertices_[v].out = kNone;
  --live_vertices_;

  std::size_t reuse = 0;
  for (const auto& tri : triangles) {
    HalfedgeId hs[3];
    for (int i = 0; i < 3; ++i) {
      const VertexId a = tri[i], b = tri[(i + 1) % 3];
      if (auto it = sides.find(key(a, b)); it != sides.end()) {
        hs[i] = it->second;
      } else {
        const HalfedgeId h = new_edge(a, b);
        sides[key(a, b)] = h;
        sides[key(b, a)] = h ^ 1;
        hs[i] = h;
      }
    }
    FaceId f;
    if (reuse < free_faces.size()) {
      f = free_faces[reuse++];
    } else {
      f = static_cast<FaceId>(faces_.size());
      faces_.push_back(kNone);
    }
    link_face(f, hs[0], hs[1], hs[2]);
    ++live_faces_;
  }
}

VertexId Terrain::split_face(FaceId f, const Point2& p, Rational h) {
  const HalfedgeId e0 = faces_[f], e1 = next(e0), e2 = next(e1);
  const VertexId a = origin(e0), b = origin(e1), c = origin(e2);
  const auto v = static_cast<VertexId>(vertices_.size());
  vertices_.push_back({p, std::move(h), kNone});
  ++live_vertices_;
  const HalfedgeId va = new_edge(v, a), vb = new_edge(v, b), vc = new_edge(v, c);
  const auto f1 = static_cast<FaceId>(faces_.size());
  faces_.push_back(kNone);
  faces_.push_back(kNone);
  live_faces_ += 2;
  link_face(f, e0, vb ^ 1, va);
  link_face(f1, e1, vc ^ 1, vb);
  link_face(f1 + 1, e2, va ^ 1, vc);
  vertices_[v].out = va;
  return v;
}

VertexId Terrain::split_edge(EdgeId e, const Point2& p, Rational h) {
  HalfedgeId hab = 2 * e;
  if (face(hab) == kNone) hab ^= 1;
  const HalfedgeId hba = hab ^ 1;
  const VertexId b = origin(hba);
  const auto v = static_cast<VertexId>(vertices_.size());
  vertices_.push_back({p, std::move(h), kNone});
  ++live_vertices_;

  // Shorten ab to av and add vb; each incident face abc becomes avc + vbc.
  const HalfedgeId vb = new_edge(v, b);
  const HalfedgeId hab_next = next(hab), hab_prev = prev(hab);
  const HalfedgeId hba_next = next(hba), hba_prev = prev(hba);
  halfedges_[hba].origin = v;  // hba becomes v->a
  if (vertices_[b].out == hba) vertices_[b].out = vb ^ 1;

  {
    const VertexId c = origin(hab_prev);
    const HalfedgeId vc = new_edge(v, c);
    const FaceId f0 = face(hab);
    const auto f1 = static_cast<FaceId>(faces_.size());
    faces_.push_back(kNone);
    ++live_faces_;
    link_face(f0, hab, vc, hab_prev);
    link_face(f1, vb, hab_next, vc ^ 1);
  }
  if (face(hba) != kNone) {
    const VertexId d = origin(hba_prev);
    const HalfedgeId vd = new_edge(v, d);
    const FaceId g0 = face(hba);
    const auto g1 = static_cast<FaceId>(faces_.size());
    faces_.push_back(kNone);
    ++live_faces_;
    link_face(g0, hba, hba_next, vd ^ 1);
    link_face(g1, vb ^ 1, vd, hba_prev);
    vertices_[v].out = hba;
  } else {
    // boundary chain: ... -> b->a  becomes  b->v -> v->a
    halfedges_[vb ^ 1].next = hba;
    halfedges_[vb ^ 1].prev = hba_prev;
    halfedges_[hba_prev].next = vb ^ 1;
    halfedges_[hba].prev = vb ^ 1;
    halfedges_[hba].next = hba_next;
    if (vertices_[b].out == (vb ^ 1) || vertices_[b].out == hba) vertices_[b].out = vb ^ 1;
    vertices_[v].out = hba;
  }
  (void)hba_next;
  return v;
}

void Terrain::validate_structure() const {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::InternalInvariant, what); };
  std::size_t nv = 0, ne = 0, nf = 0;
  for (VertexId v = 0; v < static_cast<VertexId>(vertices_.size()); ++v) {
    if (!vertex_alive(v)) continue;
    ++nv;
    const HalfedgeId o = vertices_[v].out;
    if (origin(o) != v) fail(vname(v) + " out halfedge does not start at it");
    for (HalfedgeId h : outgoing(v))
      if (face(h) == kNone && h != o) fail(vname(v) + " boundary halfedge is not its out halfedge");
  }
  for (HalfedgeId h = 0; h < static_cast<HalfedgeId>(halfedges_.size()); ++h) {
    const auto& r = halfedges_[h];
    if (r.origin == kNone) {
      if (halfedges_[h ^ 1].origin != kNone) fail("half-dead edge " + std::to_string(h >> 1));
      continue;
    }
    if (h % 2 == 0) ++ne;
    if (!vertex_alive(r.origin)) fail("halfedge from dead vertex");
    if (r.origin == target(h)) fail("loop edge");
    if (halfedges_[r.next].prev != h || halfedges_[r.prev].next != h) fail("next/prev mismatch");
    if (origin(r.next) != target(h)) fail("next does not continue the chain");
    if (halfedges_[r.next].face != r.face) fail("face mismatch along a cycle");
    if (r.face != kNone && next(next(next(h))) != h) fail("face cycle is not a triangle");
    if (r.face == kNone && halfedges_[h ^ 1].face == kNone) fail("edge with no face");
  }
  for (FaceId f = 0; f < static_cast<FaceId>(faces_.size()); ++f) {
    if (!face_alive(f)) continue;
    ++nf;
    if (face(faces_[f]) != f) fail("face halfedge points elsewhere");
    const auto [a, b, c] = face_vertices(f);
    if (orientation(position(a), position(b), position(c)) <= 0) fail("face is not counterclockwise");
  }
  if (nv != live_vertices_ || ne != live_edges_ || nf != live_faces_) fail("live element counts drifted");
}

Terrain Terrain::compacted() const {
  Terrain t;
  std::vector<VertexId> vmap(vertices_.size(), kNone);
  std::vector<HalfedgeId> hmap(halfedges_.size(), kNone);
  std::vector<FaceId> fmap(faces_.size(), kNone);
  for (VertexId v = 0; v < static_cast<VertexId>(vertices_.size()); ++v)
    if (vertex_alive(v)) {
      vmap[v] = static_cast<VertexId>(t.vertices_.size());
      t.vertices_.push_back(vertices_[v]);
    }
  HalfedgeId next_h = 0;
  for (HalfedgeId h = 0; h < static_cast<HalfedgeId>(halfedges_.size()); h += 2)
    if (halfedges_[h].origin != kNone) {
      hmap[h] = next_h;
      hmap[h + 1] = next_h + 1;
      next_h += 2;
    }
  for (FaceId f = 0; f < static_cast<FaceId>(faces_.size()); ++f)
    if (face_alive(f)) {
      fmap[f] = static_cast<FaceId>(t.faces_.size());
      t.faces_.push_back(hmap[faces_[f]]);
    }
  t.halfedges_.resize(static_cast<std::size_t>(next_h));
  for (HalfedgeId h = 0; h < static_cast<HalfedgeId>(halfedges_.size()); ++h) {
    if (hmap[h] == kNone) continue;
    const auto& r = halfedges_[h];
    t.halfedges_[hmap[h]] = {vmap[r.origin], hmap[r.next], hmap[r.prev], r.face == kNone ? kNone : fmap[r.face]};
  }
  for (auto& v : t.vertices_) v.out = hmap[v.out];
  t.live_vertices_ = t.vertices_.size();
  t.live_edges_ = t.halfedges_.size() / 2;
  t.live_faces_ = t.faces_.size();
  return t;
}

std::vector<TerrainPoint> Terrain::points() const {
  std::vector<TerrainPoint> out;
  out.reserve(live_vertices_);
  for (VertexId v : vertex_ids()) out.push_back({position(v).x, position(v).y, height(v)});
  return out;
}

std::vector<Triangle> Terrain::triangles() const {
  std::vector<VertexId> vmap(vertices_.size(), kNone);
  VertexId next_v = 0;
  for (VertexId v = 0; v < static_cast<VertexId>(vertices_.size()); ++v)
    if (vertex_alive(v)) vmap[v] = next_v++;
  std::vector<Triangle> out;
  out.reserve(live_faces_);
  for (FaceId f : face_ids()) {
    const auto [a, b, c] = face_vertices(f);
    out.push_back({vmap[a], vmap[b], vmap[c]});
  }
  return out;
}

namespace {

LinkPart link_part(const Terrain& t, VertexId v, bool lower) {
  const LinkPolygon lp = t.link(v);
  const std::size_t d = lp.size();
  std::vector<char> in(d);
  for (std::size_t i = 0; i < d; ++i) in[i] = t.vertex_less(lp.ring[i], v) == lower;
  LinkPart part;
  for (std::size_t i = 0; i < d; ++i) {
    if (!in[i]) continue;
    part.vertices.push_back(lp.ring[i]);
    if (in[(i + 1) % d]) part.edges.emplace_back(lp.ring[i], lp.ring[(i + 1) % d]);
  }
  return part;
}

}  // namespace

LinkPart lower_link(const Terrain& t, VertexId v) { return link_part(t, v, true); }
LinkPart upper_link(const Terrain& t, VertexId v) { return link_part(t, v, false); }

Criticality classify(const Terrain& t, VertexId v) {
  if (t.is_boundary_vertex(v)) return {Criticality::Kind::Boundary, 0};
  const LinkPolygon lp = t.link(v);
  const std::size_t d = lp.size();
  std::vector<char> up(d);
  std::size_t ups = 0;
  for (std::size_t i = 0; i < d; ++i) {
    up[i] = t.vertex_less(v, lp.ring[i]);
    ups += up[i];
  }
  if (ups == d) return {Criticality::Kind::Minimum, 1};
  if (ups == 0) return {Criticality::Kind::Maximum, 0};
  int runs = 0;
  for (std::size_t i = 0; i < d; ++i)
    if (up[i] && !up[(i + d - 1) % d]) ++runs;
  if (runs == 1) return {Criticality::Kind::Regular, 1};
  return {Criticality::Kind::Saddle, runs};
}

CriticalCounts count_critical(const Terrain& t) {
  CriticalCounts c;
  for (VertexId v : t.vertex_ids()) {
    const Criticality k = classify(t, v);
    switch (k.kind) {
      case Criticality::Kind::Minimum: ++c.minima; break;
      case Criticality::Kind::Maximum: ++c.maxima; break;
      case Criticality::Kind::Saddle:
        ++c.saddles;
        c.saddle_weight += k.weight();
        break;
      case Criticality::Kind::Boundary: ++c.boundary; break;
      case Criticality::Kind::Regular: break;
    }
  }
  return c;
}

}  // namespace tsimp
