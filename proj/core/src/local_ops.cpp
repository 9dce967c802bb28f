#include "tsimp/local_ops.hpp"

#include <algorithm>

#include "tsimp/error.hpp"

namespace tsimp {

namespace {

std::uint64_t pair_key(VertexId a, VertexId b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
}

constexpr VertexId kTripleLimit = 1 << 21;

std::optional<std::uint64_t> triple_key(VertexId a, VertexId b, VertexId c) {
  if (a >= kTripleLimit || b >= kTripleLimit || c >= kTripleLimit) return std::nullopt;
  VertexId s[3] = {a, b, c};
  std::sort(s, s + 3);
  return (static_cast<std::uint64_t>(s[0]) << 42) | (static_cast<std::uint64_t>(s[1]) << 21) |
         static_cast<std::uint64_t>(s[2]);
}

std::pair<HalfedgeId, HalfedgeId> interior_halves(const Terrain& t, EdgeId e) {
  const HalfedgeId h = Terrain::halfedge_of(e);
  if (t.is_boundary_edge(e)) throw Error(ErrorCode::BoundaryEdge, "edge " + std::to_string(e) + " is on the boundary");
  return {h, Terrain::twin(h)};
}

// Persistence-awareness of the link chord between ring positions i and j.
bool aware_on_ring(const Terrain& t, VertexId v, const std::vector<VertexId>& ring, std::size_t i, std::size_t j) {
  if (t.vertex_less(ring[j], ring[i])) std::swap(i, j);
  const VertexId a = ring[i], b = ring[j];
  const std::size_t d = ring.size();
  if (t.vertex_less(a, v) && t.vertex_less(v, b)) return true;
  const bool below = t.vertex_less(b, v);
  // below: some arc stays under b; above: some arc stays over a
  auto ok = [&](VertexId x) { return below ? t.vertex_less(x, b) : t.vertex_less(a, x); };
  for (std::size_t step : {std::size_t{1}, d - 1}) {
    bool good = true;
    for (std::size_t k = (i + step) % d; k != j; k = (k + step) % d)
      if (!ok(ring[k])) {
        good = false;
        break;
      }
    if (good) return true;
  }
  return false;
}

// Chord ij lies in the counterclockwise polygon P, touching its boundary only at i and j.
bool proper_diagonal(const std::vector<const Point2*>& P, std::size_t i, std::size_t j) {
  const std::size_t d = P.size();
  auto in_cone = [&](std::size_t a, std::size_t b) {
    const Point2& pa = *P[a];
    const Point2& pb = *P[b];
    const Point2& a0 = *P[(a + d - 1) % d];
    const Point2& a1 = *P[(a + 1) % d];
    if (orientation(pa, a1, a0) >= 0) return orientation(pa, pb, a0) > 0 && orientation(pb, pa, a1) > 0;
    return !(orientation(pa, pb, a1) >= 0 && orientation(pb, pa, a0) >= 0);
  };
  if (!in_cone(i, j) || !in_cone(j, i)) return false;
  for (std::size_t m = 0; m < d; ++m) {
    if (m == i || m == j) continue;
    if (on_segment(*P[m], *P[i], *P[j])) return false;
    const std::size_t m1 = (m + 1) % d;
    if (m1 == i || m1 == j) continue;
    if (segments_intersect(*P[i], *P[j], *P[m], *P[m1])) return false;
  }
  return true;
}

}  // namespace

std::optional<Rational> DeviationCache::segment(VertexId a, VertexId b) const {
  const auto it = segments_.find(pair_key(a, b));
  if (it == segments_.end()) return std::nullopt;
  return it->second;
}

void DeviationCache::store_segment(VertexId a, VertexId b, const Rational& dev) { segments_[pair_key(a, b)] = dev; }

std::optional<Rational> DeviationCache::interior(VertexId a, VertexId b, VertexId c) const {
  const auto k = triple_key(a, b, c);
  if (!k) return std::nullopt;
  const auto it = interiors_.find(*k);
  if (it == interiors_.end()) return std::nullopt;
  return it->second;
}

void DeviationCache::store_interior(VertexId a, VertexId b, VertexId c, const Rational& dev) {
  if (const auto k = triple_key(a, b, c)) interiors_[*k] = dev;
}

void DeviationCache::clear() {
  segments_.clear();
  interiors_.clear();
}

HeightInterval HeightInterval::of(const Terrain& t, VertexId x, VertexId y) {
  if (t.vertex_less(y, x)) std::swap(x, y);
  return HeightInterval{t.height(x), t.height(y), x, y};
}

bool topologically_flippable(const Terrain& t, EdgeId e) {
  const auto [h, k] = interior_halves(t, e);
  const VertexId a = t.origin(h), b = t.origin(k);
  const VertexId c = t.origin(t.prev(h)), d = t.origin(t.prev(k));
  return HeightInterval::of(t, a, b).intersects(HeightInterval::of(t, c, d));
}

bool order_flippable(const Terrain& t, EdgeId e) {
  const auto [h, k] = interior_halves(t, e);
  const VertexId a = t.origin(h), b = t.origin(k);
  const VertexId c = t.origin(t.prev(h)), d = t.origin(t.prev(k));
  return HeightInterval::of(t, a, b).intersects_in_order(HeightInterval::of(t, c, d));
}

bool geometrically_flippable(const Terrain& t, EdgeId e) {
  const auto [h, k] = interior_halves(t, e);
  const Point2& a = t.position(t.origin(h));
  const Point2& b = t.position(t.origin(k));
  const Point2& c = t.position(t.origin(t.prev(h)));
  const Point2& d = t.position(t.origin(t.prev(k)));
  return orientation(d, b, c) > 0 && orientation(c, a, d) > 0;
}

void flip_edge(Terrain& t, EdgeId e) {
  if (!geometrically_flippable(t, e)) throw Error(ErrorCode::NotConvex, "quad around edge " + std::to_string(e) + " is not strictly convex");
  t.flip(e);
}

bool persistence_aware(const Terrain& t, VertexId v, VertexId a, VertexId b) {
  const LinkPolygon lp = t.link(v);
  const auto ia = std::find(lp.ring.begin(), lp.ring.end(), a);
  const auto ib = std::find(lp.ring.begin(), lp.ring.end(), b);
  if (ia == lp.ring.end() || ib == lp.ring.end() || a == b)
    throw Error(ErrorCode::NotOnLink, "vertices are not two distinct link vertices");
  return aware_on_ring(t, v, lp.ring, static_cast<std::size_t>(ia - lp.ring.begin()),
                       static_cast<std::size_t>(ib - lp.ring.begin()));
}

void remove_degree3(Terrain& t, VertexId v) {
  if (t.is_boundary_vertex(v)) throw Error(ErrorCode::BoundaryVertex, "vertex is on the boundary");
  if (t.degree(v) != 3) throw Error(ErrorCode::WrongDegree, "vertex degree is not 3");
  if (classify(t, v).kind != Criticality::Kind::Regular) throw Error(ErrorCode::NotRegular, "vertex is critical");
  remove_vertex(t, v, {});
}

std::vector<Triangle> link_triangles(const Terrain& t, VertexId v, const DiagonalSet& diags) {
  const LinkPolygon lp = t.link(v);
  const std::size_t d = lp.size();
  auto invalid = [](const std::string& why) { return Error(ErrorCode::InvalidDiagonalSet, why); };
  if (diags.size() + 3 != d) throw invalid("expected " + std::to_string(d - 3) + " diagonals");

  std::vector<const Point2*> P;
  for (VertexId x : lp.ring) P.push_back(&t.position(x));
  std::vector<char> adj(d * d, 0);
  for (std::size_t i = 0; i < d; ++i) {
    adj[i * d + (i + 1) % d] = 1;
    adj[((i + 1) % d) * d + i] = 1;
  }
  std::vector<std::pair<std::size_t, std::size_t>> chords;
  for (const auto& [a, b] : diags) {
    const auto ia = std::find(lp.ring.begin(), lp.ring.end(), a);
    const auto ib = std::find(lp.ring.begin(), lp.ring.end(), b);
    if (ia == lp.ring.end() || ib == lp.ring.end()) throw invalid("diagonal endpoint not on the link");
    std::size_t i = static_cast<std::size_t>(ia - lp.ring.begin());
    std::size_t j = static_cast<std::size_t>(ib - lp.ring.begin());
    if (i > j) std::swap(i, j);
    if (i == j || adj[i * d + j]) throw invalid("diagonal repeats a polygon edge or another diagonal");
    if (!proper_diagonal(P, i, j)) throw invalid("diagonal leaves the link polygon");
    for (const auto& [k, l] : chords)
      if ((i < k && k < j && j < l) || (k < i && i < l && l < j)) throw invalid("diagonals cross");
    adj[i * d + j] = adj[j * d + i] = 1;
    chords.emplace_back(i, j);
  }

  std::vector<Triangle> tris;
  std::vector<std::pair<std::size_t, std::size_t>> todo = {{0, d - 1}};
  while (!todo.empty()) {
    const auto [i, j] = todo.back();
    todo.pop_back();
    if (j - i < 2) continue;
    std::size_t apex = d;
    for (std::size_t k = i + 1; k < j; ++k)
      if (adj[i * d + k] && adj[k * d + j]) {
        apex = k;
        break;
      }
    if (apex == d) throw invalid("diagonals do not triangulate the link");
    if (orientation(*P[i], *P[apex], *P[j]) <= 0) throw invalid("degenerate triangle in the link triangulation");
    tris.push_back({lp.ring[i], lp.ring[apex], lp.ring[j]});
    todo.emplace_back(i, apex);
    todo.emplace_back(apex, j);
  }
  return tris;
}

void remove_vertex(Terrain& t, VertexId v, const DiagonalSet& diags) {
  if (t.is_boundary_vertex(v)) throw Error(ErrorCode::BoundaryVertex, "vertex is on the boundary");
  const std::vector<Triangle> tris = link_triangles(t, v, diags);
  t.replace_star(v, tris);
}

namespace {

class LinkSolver {
 public:
  LinkSolver(const Terrain& t, const BaseIndex& base, VertexId v, const AwarenessBudget& budget, LinkMode mode,
             DeviationCache* cache)
      : t_(t), base_(base), v_(v), budget_(budget), mode_(mode), cache_(cache) {
    ring_ = t.link(v).ring;
    d_ = ring_.size();
    for (VertexId x : ring_) P_.push_back(&t.position(x));
    diag_.assign(d_ * d_, 0);
    seg_known_.assign(d_ * d_, 0);
    seg_dev_.resize(d_ * d_);
    solved_.assign(d_ * d_, 0);
    apex_.assign(d_ * d_, 0);
    cost_.resize(d_ * d_);
  }

  std::optional<LinkTriangulation> run() {
    if (!solve(0, d_ - 1)) return std::nullopt;
    LinkTriangulation out;
    out.deviation = mode_ == LinkMode::BestLinf ? cost_[0 * d_ + d_ - 1] : Rational(0);
    std::vector<std::pair<std::size_t, std::size_t>> todo = {{0, d_ - 1}};
    while (!todo.empty()) {
      const auto [i, j] = todo.back();
      todo.pop_back();
      if (j - i < 2) continue;
      const std::size_t k = apex_[i * d_ + j];
      out.triangles.push_back({ring_[i], ring_[k], ring_[j]});
      if (k - i >= 2) out.diagonals.emplace_back(ring_[i], ring_[k]);
      if (j - k >= 2) out.diagonals.emplace_back(ring_[k], ring_[j]);
      todo.emplace_back(i, k);
      todo.emplace_back(k, j);
    }
    return out;
  }

 private:
  LiftedPoint lifted(std::size_t i) const { return {P_[i], &t_.height(ring_[i])}; }

  bool polygon_edge(std::size_t i, std::size_t j) const { return j == i + 1 || (i == 0 && j == d_ - 1); }

  const Rational& segment_dev(std::size_t i, std::size_t j) {
    const std::size_t idx = i * d_ + j;
    if (!seg_known_[idx]) {
      std::optional<Rational> hit = cache_ ? cache_->segment(ring_[i], ring_[j]) : std::nullopt;
      if (hit) {
        seg_dev_[idx] = *hit;
      } else {
        seg_dev_[idx] = base_.segment_deviation(lifted(i), lifted(j), budget_);
        if (cache_) cache_->store_segment(ring_[i], ring_[j], seg_dev_[idx]);
      }
      seg_known_[idx] = 1;
    }
    return seg_dev_[idx];
  }

  bool diagonal_ok(std::size_t i, std::size_t j) {
    if (polygon_edge(i, j)) return true;
    char& state = diag_[i * d_ + j];
    if (state == 0) {
      bool ok = aware_on_ring(t_, v_, ring_, i, j) && proper_diagonal(P_, i, j);
      if (ok && needs_deviation()) ok = budget_.admits(segment_dev(i, j));
      state = ok ? 1 : 2;
    }
    return state == 1;
  }

  bool needs_deviation() const { return !budget_.is_infinite() || mode_ == LinkMode::BestLinf; }

  Rational interior_dev(std::size_t i, std::size_t k, std::size_t j) {
    const VertexId a = ring_[i], b = ring_[k], c = ring_[j];
    if (cache_)
      if (auto hit = cache_->interior(a, b, c)) return *hit;
    Rational dev = base_.interior_deviation(lifted(i), lifted(k), lifted(j), budget_);
    if (cache_) cache_->store_interior(a, b, c, dev);
    return dev;
  }

  bool solve(std::size_t i, std::size_t j) {
    if (j - i < 2) return true;
    const std::size_t idx = i * d_ + j;
    if (solved_[idx]) return solved_[idx] == 1;
    bool found = false;
    for (std::size_t k = i + 1; k < j; ++k) {
      if (orientation(*P_[i], *P_[k], *P_[j]) <= 0) continue;
      if (!diagonal_ok(i, k) || !diagonal_ok(k, j)) continue;
      if (!solve(i, k) || !solve(k, j)) continue;
      if (mode_ == LinkMode::FirstValid) {
        if (!budget_.is_infinite() && !budget_.admits(interior_dev(i, k, j))) continue;
        apex_[idx] = k;
        found = true;
        break;
      }
      Rational c = interior_dev(i, k, j);
      if (!budget_.admits(c)) continue;
      for (const auto& [x, y] : {std::pair{i, k}, std::pair{k, j}, std::pair{i, j}}) {
        const Rational& s = segment_dev(x, y);
        if (s > c) c = s;
      }
      for (const auto& [x, y] : {std::pair{i, k}, std::pair{k, j}})
        if (y - x >= 2 && cost_[x * d_ + y] > c) c = cost_[x * d_ + y];
      if (!found || c < cost_[idx]) {
        cost_[idx] = c;
        apex_[idx] = k;
        found = true;
      }
    }
    solved_[idx] = found ? 1 : 2;
    return found;
  }

  const Terrain& t_;
  const BaseIndex& base_;
  VertexId v_;
  const AwarenessBudget& budget_;
  LinkMode mode_;
  DeviationCache* cache_;
  std::vector<VertexId> ring_;
  std::vector<const Point2*> P_;
  std::size_t d_ = 0;
  std::vector<char> diag_;
  std::vector<char> seg_known_;
  std::vector<Rational> seg_dev_;
  std::vector<char> solved_;
  std::vector<std::size_t> apex_;
  std::vector<Rational> cost_;
};

}  // namespace

std::optional<LinkTriangulation> find_link_triangulation(const Terrain& t, const BaseIndex& base, VertexId v,
                                                         const AwarenessBudget& budget, LinkMode mode,
                                                         DeviationCache* cache) {
  if (t.is_boundary_vertex(v)) throw Error(ErrorCode::BoundaryVertex, "vertex is on the boundary");
  if (classify(t, v).kind != Criticality::Kind::Regular) throw Error(ErrorCode::NotRegular, "vertex is critical");
  return LinkSolver(t, base, v, budget, mode, cache).run();
}

}  // namespace tsimp
