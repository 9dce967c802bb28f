#include "support.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "tsimp/delaunay.hpp"

namespace tsimp::testing {

Rational random_rational(Rng& rng, int lo, int hi, int den) {
  std::uniform_int_distribution<int> d(lo, hi);
  Rational r(d(rng), den);
  r.canonicalize();
  return r;
}

Terrain random_terrain(Rng& rng, const RandomTerrainOptions& opt) {
  std::uniform_int_distribution<int> coord(0, opt.coord_range);
  std::set<std::pair<int, int>> used;
  std::vector<Point2> pts;
  while (pts.size() < opt.vertices) {
    const int x = coord(rng), y = coord(rng);
    if (used.emplace(x, y).second) pts.emplace_back(Rational(x), Rational(y));
  }
  const std::vector<Triangle> tris = delaunay_triangulation(pts);

  std::vector<int> pool(static_cast<std::size_t>(opt.height_range) + 1);
  std::iota(pool.begin(), pool.end(), 0);
  std::shuffle(pool.begin(), pool.end(), rng);
  std::uniform_int_distribution<int> any(0, opt.height_range);
  std::vector<TerrainPoint> tp;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const int k = opt.distinct_heights ? pool[i % pool.size()] : any(rng);
    Rational h(k, opt.height_den);
    h.canonicalize();
    tp.push_back({pts[i].x, pts[i].y, h});
  }
  Terrain t = Terrain::build(tp, tris);
  if (opt.rim_high) {
    // Boundary above every interior height and increasing once around the
    // boundary cycle from a vertex with an interior neighbour, so that the
    // boundary adds no critical events of its own.
    VertexId start = kNone;
    for (VertexId v : t.vertex_ids()) {
      if (!t.is_boundary_vertex(v)) continue;
      for (VertexId u : t.neighbors(v))
        if (!t.is_boundary_vertex(u)) start = v;
      if (start != kNone) break;
    }
    if (start == kNone) throw std::logic_error("no interior vertex next to the boundary");
    std::vector<VertexId> cycle;
    HalfedgeId h = t.out_halfedge(start);
    do {
      cycle.push_back(t.origin(h));
      h = t.next(h);
    } while (t.origin(h) != start);
    std::vector<int> rim(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(cycle.size()));
    std::sort(rim.begin(), rim.end());
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      Rational hk(opt.height_range + 1 + rim[k], opt.height_den);
      hk.canonicalize();
      t.set_height(cycle[k], hk);
    }
  }
  return t;
}

Terrain grid_terrain(std::size_t rows, std::size_t cols, const std::vector<Rational>& heights) {
  std::vector<TerrainPoint> pts;
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      pts.push_back({Rational(static_cast<long>(c)), Rational(static_cast<long>(r)), heights[r * cols + c]});
  std::vector<Triangle> tris;
  auto id = [&](std::size_t r, std::size_t c) { return static_cast<VertexId>(r * cols + c); };
  for (std::size_t r = 0; r + 1 < rows; ++r)
    for (std::size_t c = 0; c + 1 < cols; ++c) {
      tris.push_back({id(r, c), id(r, c + 1), id(r + 1, c + 1)});
      tris.push_back({id(r, c), id(r + 1, c + 1), id(r + 1, c)});
    }
  return Terrain::build(pts, tris);
}

std::vector<Rational> fractal_heights(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const std::pair<int, double> octaves[] = {{50, 1000}, {25, 500}, {12, 250}, {6, 125}, {3, 62}, {1, 31}};
  std::vector<double> sum(n * n, 0.0);
  for (const auto& [step, amp] : octaves) {
    const std::size_t m = n / static_cast<std::size_t>(step) + 2;
    std::vector<double> lattice(m * m);
    for (double& x : lattice) x = u(rng);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) {
        const double i = static_cast<double>(r) / step, j = static_cast<double>(c) / step;
        const auto i0 = static_cast<std::size_t>(i), j0 = static_cast<std::size_t>(j);
        const double a = i - static_cast<double>(i0), b = j - static_cast<double>(j0);
        sum[r * n + c] += amp * ((1 - a) * (1 - b) * lattice[i0 * m + j0] + a * (1 - b) * lattice[(i0 + 1) * m + j0] +
                                 (1 - a) * b * lattice[i0 * m + j0 + 1] + a * b * lattice[(i0 + 1) * m + j0 + 1]);
      }
  }
  std::vector<Rational> out;
  out.reserve(sum.size());
  for (double s : sum) out.emplace_back(static_cast<long>(std::lround(s)) + 3000);
  return out;
}

namespace {

struct Cell {
  int dim;
  std::array<std::int32_t, 3> verts;  // sorted, unused slots -1
  Rational value;
};

}  // namespace

Diagram naive_diagram(const Terrain& t0) {
  const Terrain t = t0.compacted();
  const std::vector<TerrainPoint> pts = t.points();
  const std::vector<Triangle> tris = t.triangles();
  std::vector<Cell> cells;
  std::set<std::pair<int, int>> edge_set;
  for (std::size_t i = 0; i < pts.size(); ++i) cells.push_back({0, {static_cast<int>(i), -1, -1}, pts[i].height});
  for (const auto& f : tris) {
    std::array<int, 3> s{f[0], f[1], f[2]};
    std::sort(s.begin(), s.end());
    edge_set.emplace(s[0], s[1]);
    edge_set.emplace(s[0], s[2]);
    edge_set.emplace(s[1], s[2]);
    cells.push_back({2, {s[0], s[1], s[2]}, std::max({pts[s[0]].height, pts[s[1]].height, pts[s[2]].height})});
  }
  for (const auto& [a, b] : edge_set) cells.push_back({1, {a, b, -1}, std::max(pts[a].height, pts[b].height)});
  std::stable_sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) {
    if (a.value != b.value) return a.value < b.value;
    if (a.dim != b.dim) return a.dim < b.dim;
    return a.verts < b.verts;
  });
  std::map<std::array<std::int32_t, 3>, std::size_t> index;
  for (std::size_t i = 0; i < cells.size(); ++i) index[cells[i].verts] = i;

  const std::size_t n = cells.size();
  std::vector<std::vector<std::size_t>> col(n);
  for (std::size_t j = 0; j < n; ++j) {
    const Cell& c = cells[j];
    if (c.dim == 1) {
      col[j] = {index.at({c.verts[0], -1, -1}), index.at({c.verts[1], -1, -1})};
    } else if (c.dim == 2) {
      col[j] = {index.at({c.verts[0], c.verts[1], -1}), index.at({c.verts[0], c.verts[2], -1}),
                index.at({c.verts[1], c.verts[2], -1})};
    }
    std::sort(col[j].begin(), col[j].end());
  }
  std::vector<long> low_owner(n, -1);
  std::vector<char> positive(n, 1);
  Diagram d;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::size_t>& c = col[j];
    while (!c.empty() && low_owner[c.back()] >= 0) {
      std::vector<std::size_t> sum;
      const auto& other = col[static_cast<std::size_t>(low_owner[c.back()])];
      std::set_symmetric_difference(c.begin(), c.end(), other.begin(), other.end(), std::back_inserter(sum));
      c.swap(sum);
    }
    if (c.empty()) continue;
    low_owner[c.back()] = static_cast<long>(j);
    positive[c.back()] = 0;
    positive[j] = 0;
    const Cell& birth = cells[c.back()];
    if (birth.value != cells[j].value) d.pairs[birth.dim].emplace_back(birth.value, cells[j].value);
  }
  for (std::size_t j = 0; j < n; ++j)
    if (positive[j] && col[j].empty()) {
      if (cells[j].dim > 1) throw std::logic_error("oracle found a 2-cycle");
      d.essential[cells[j].dim].push_back(cells[j].value);
    }
  for (int k = 0; k < 2; ++k) {
    std::sort(d.pairs[k].begin(), d.pairs[k].end());
    std::sort(d.essential[k].begin(), d.essential[k].end());
  }
  return d;
}

Diagram normalise(const PersistenceDiagram& pd) {
  Diagram d;
  for (int k = 0; k < 2; ++k) {
    for (const auto& p : pd.pairs[k])
      if (p.birth != p.death) d.pairs[k].emplace_back(p.birth, p.death);
    d.essential[k] = pd.essential[k];
    std::sort(d.pairs[k].begin(), d.pairs[k].end());
    std::sort(d.essential[k].begin(), d.essential[k].end());
  }
  return d;
}

bool same(const Diagram& a, const Diagram& b) {
  for (int k = 0; k < 2; ++k)
    if (a.pairs[k] != b.pairs[k] || a.essential[k] != b.essential[k]) return false;
  return true;
}

std::vector<std::pair<Rational, Rational>> union_find_pairs(const Terrain& t) {
  std::vector<VertexId> order = t.vertex_ids();
  std::sort(order.begin(), order.end(), [&](VertexId a, VertexId b) { return t.vertex_less(a, b); });
  std::vector<VertexId> parent(t.vertex_capacity(), kNone);
  std::vector<char> seen(t.vertex_capacity(), 0);
  auto find = [&](VertexId v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  std::vector<std::pair<Rational, Rational>> out;
  for (VertexId v : order) {
    parent[v] = v;
    seen[v] = 1;
    for (VertexId u : t.neighbors(v)) {
      if (!seen[u]) continue;
      VertexId a = find(u), b = find(v);
      if (a == b) continue;
      // roots are the oldest vertices of their components
      if (t.vertex_less(b, a)) std::swap(a, b);
      if (t.height(b) != t.height(v)) out.emplace_back(t.height(b), t.height(v));
      parent[b] = a;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

Rational cross(const Point2& o, const Point2& a, const Point2& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// Height of the plane through (a, ha), (b, hb), (c, hc) at p, by barycentric weights.
Rational plane_at(const Point2& a, const Rational& ha, const Point2& b, const Rational& hb, const Point2& c,
                  const Rational& hc, const Point2& p) {
  const Rational area = cross(a, b, c);
  Rational h = (cross(p, b, c) * ha + cross(a, p, c) * hb + cross(a, b, p) * hc) / area;
  h.canonicalize();
  return h;
}

bool inside(const Point2& p, const Point2& a, const Point2& b, const Point2& c) {
  const int s1 = sgn(cross(a, b, p)), s2 = sgn(cross(b, c, p)), s3 = sgn(cross(c, a, p));
  const bool has_neg = s1 < 0 || s2 < 0 || s3 < 0, has_pos = s1 > 0 || s2 > 0 || s3 > 0;
  return !(has_neg && has_pos);
}

bool on_closed_segment(const Point2& p, const Point2& a, const Point2& b) {
  return sgn(cross(a, b, p)) == 0 && std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
         std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

}  // namespace

Rational scan_height(const Terrain& t, const Point2& p) {
  for (FaceId f : t.face_ids()) {
    const auto [a, b, c] = t.face_vertices(f);
    if (inside(p, t.position(a), t.position(b), t.position(c)))
      return plane_at(t.position(a), t.height(a), t.position(b), t.height(b), t.position(c), t.height(c), p);
  }
  throw std::out_of_range("point outside the terrain");
}

Rational scan_segment_deviation(const Terrain& base, const Point2& p, const Rational& hp, const Point2& q,
                                const Rational& hq) {
  std::vector<Rational> params{Rational(0), Rational(1)};
  const Point2 d(q.x - p.x, q.y - p.y);
  for (VertexId v : base.vertex_ids()) {
    const Point2& x = base.position(v);
    if (on_closed_segment(x, p, q)) {
      Rational s = d.x != 0 ? Rational((x.x - p.x) / d.x) : Rational((x.y - p.y) / d.y);
      params.push_back(s);
    }
  }
  for (EdgeId e : base.edge_ids()) {
    const auto [ia, ib] = base.edge_vertices(e);
    const Point2 &a = base.position(ia), &b = base.position(ib);
    const Rational denom = d.x * (b.y - a.y) - d.y * (b.x - a.x);
    if (denom == 0) continue;
    Rational s = ((a.x - p.x) * (b.y - a.y) - (a.y - p.y) * (b.x - a.x)) / denom;
    Rational u = ((a.x - p.x) * d.y - (a.y - p.y) * d.x) / denom;
    if (s >= 0 && s <= 1 && u >= 0 && u <= 1) params.push_back(s);
  }
  Rational worst = 0;
  for (Rational& s : params) {
    s.canonicalize();
    Rational x = p.x + s * d.x, y = p.y + s * d.y, h = hp + s * (hq - hp);
    x.canonicalize();
    y.canonicalize();
    const Rational dev = abs(Rational(h - scan_height(base, Point2(x, y))));
    if (dev > worst) worst = dev;
  }
  return worst;
}

Rational scan_triangle_deviation(const Terrain& base, const Point2& a, const Rational& ha, const Point2& b,
                                 const Rational& hb, const Point2& c, const Rational& hc) {
  Rational worst = std::max({scan_segment_deviation(base, a, ha, b, hb), scan_segment_deviation(base, b, hb, c, hc),
                             scan_segment_deviation(base, c, hc, a, ha)});
  for (VertexId v : base.vertex_ids()) {
    const Point2& x = base.position(v);
    if (!inside(x, a, b, c)) continue;
    const Rational dev = abs(Rational(plane_at(a, ha, b, hb, c, hc, x) - base.height(v)));
    if (dev > worst) worst = dev;
  }
  return worst;
}

std::vector<std::vector<std::pair<int, int>>> polygon_triangulations(int n) {
  // memo over sub-polygons i..j
  std::map<std::pair<int, int>, std::vector<std::vector<std::pair<int, int>>>> memo;
  auto solve = [&](auto&& self, int i, int j) -> const std::vector<std::vector<std::pair<int, int>>>& {
    auto it = memo.find({i, j});
    if (it != memo.end()) return it->second;
    std::vector<std::vector<std::pair<int, int>>> out;
    if (j - i < 2) {
      out.emplace_back();
    } else {
      for (int k = i + 1; k < j; ++k) {
        const auto left = self(self, i, k);
        const auto right = self(self, k, j);
        for (const auto& l : left)
          for (const auto& r : right) {
            std::vector<std::pair<int, int>> diag = l;
            diag.insert(diag.end(), r.begin(), r.end());
            if (k > i + 1) diag.emplace_back(i, k);
            if (j > k + 1) diag.emplace_back(k, j);
            out.push_back(std::move(diag));
          }
      }
    }
    return memo.emplace(std::make_pair(i, j), std::move(out)).first->second;
  };
  return solve(solve, 0, n - 1);
}

}  // namespace tsimp::testing
