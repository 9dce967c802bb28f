#include "tsimp/blw.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <string>

#include "tsimp/error.hpp"

namespace tsimp {

namespace {

[[noreturn]] void broken(const std::string& what) { throw Error(ErrorCode::InternalInvariant, "simplification: " + what); }

/// Discrete gradient on the cells of a terrain. A partner of kNone marks a
/// critical cell (or an unused id).
struct Gradient {
  std::vector<EdgeId> vertex_edge;   // vertex -> paired edge
  std::vector<CellRef> edge_partner; // edge -> paired vertex or face
  std::vector<EdgeId> face_edge;     // face -> paired edge

  explicit Gradient(const Terrain& t)
      : vertex_edge(t.vertex_capacity(), kNone),
        edge_partner(t.edge_capacity(), CellRef{0, kNone}),
        face_edge(t.face_capacity(), kNone) {}

  void pair_vertex(VertexId v, EdgeId e) {
    vertex_edge[v] = e;
    edge_partner[e] = {0, v};
  }
  void pair_face(EdgeId e, FaceId f) {
    face_edge[f] = e;
    edge_partner[e] = {2, f};
  }
  bool critical(const CellRef& c) const {
    if (c.dim == 0) return vertex_edge[c.id] == kNone;
    if (c.dim == 1) return edge_partner[c.id].id == kNone;
    return face_edge[c.id] == kNone;
  }
};

/// Processes lower stars in vertex order. Appends every cell to `order` so that
/// each gradient pair is consecutive and faces precede cofaces.
void lower_star_gradient(const Terrain& t, Gradient& grad, std::vector<CellRef>& order) {
  std::vector<VertexId> verts = t.vertex_ids();
  std::sort(verts.begin(), verts.end(), [&](VertexId a, VertexId b) { return t.vertex_less(a, b); });

  for (VertexId x : verts) {
    order.push_back({0, x});
    const std::vector<HalfedgeId> spokes = t.outgoing(x);
    const std::size_t n = spokes.size();
    const bool cyclic = !t.is_boundary_vertex(x);
    std::vector<VertexId> y(n);
    std::vector<char> low(n);
    std::size_t lows = 0;
    for (std::size_t i = 0; i < n; ++i) {
      y[i] = t.target(spokes[i]);
      low[i] = t.vertex_less(y[i], x);
      lows += low[i];
    }
    if (lows == 0) continue;  // minimum

    auto edge_at = [&](std::size_t i) { return Terrain::edge_of(spokes[i]); };
    // face between ring positions i and i + 1
    auto face_at = [&](std::size_t i) { return t.face(spokes[i]); };
    auto less_at = [&](std::size_t i, std::size_t j) { return t.vertex_less(y[i], y[j]); };

    if (cyclic && lows == n) {
      std::size_t start = 0;
      for (std::size_t i = 1; i < n; ++i)
        if (less_at(i, start)) start = i;
      grad.pair_vertex(x, edge_at(start));
      order.push_back({1, edge_at(start)});
      std::size_t l = start, r = start, done = 1;
      while (done < n) {
        const std::size_t cl = (l + n - 1) % n, cr = (r + 1) % n;
        if (cl != cr && less_at(cl, cr)) {
          grad.pair_face(edge_at(cl), face_at(cl));
          order.push_back({1, edge_at(cl)});
          order.push_back({2, face_at(cl)});
          l = cl;
        } else {
          grad.pair_face(edge_at(cr), face_at(r));
          order.push_back({1, edge_at(cr)});
          order.push_back({2, face_at(r)});
          r = cr;
        }
        ++done;
      }
      order.push_back({2, face_at(r)});  // closing triangle: a maximum
      continue;
    }

    // Runs of lower neighbours. On a cycle, scanning starts just after a non-lower position.
    const std::size_t first =
        cyclic ? (static_cast<std::size_t>(std::find(low.begin(), low.end(), 0) - low.begin()) + 1) % n : 0;
    std::vector<std::vector<std::size_t>> runs;
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t i = (first + k) % n;
      if (!low[i]) continue;
      if (!(k > 0 && low[(i + n - 1) % n]) || runs.empty()) runs.emplace_back();
      runs.back().push_back(i);
    }
    std::sort(runs.begin(), runs.end(), [&](const auto& a, const auto& b) {
      const auto la = *std::min_element(a.begin(), a.end(), less_at);
      const auto lb = *std::min_element(b.begin(), b.end(), less_at);
      return less_at(la, lb);
    });

    bool first_arc = true;
    for (const auto& run : runs) {
      std::size_t s = 0;
      for (std::size_t k = 1; k < run.size(); ++k)
        if (less_at(run[k], run[s])) s = k;
      const EdgeId e0 = edge_at(run[s]);
      if (first_arc) grad.pair_vertex(x, e0);
      first_arc = false;
      order.push_back({1, e0});
      std::size_t l = s, r = s;
      while (l > 0 || r + 1 < run.size()) {
        const bool take_left = l > 0 && (r + 1 >= run.size() || less_at(run[l - 1], run[r + 1]));
        if (take_left) {
          --l;
          grad.pair_face(edge_at(run[l]), face_at(run[l]));
          order.push_back({1, edge_at(run[l])});
          order.push_back({2, face_at(run[l])});
        } else {
          ++r;
          grad.pair_face(edge_at(run[r]), face_at(run[r - 1]));
          order.push_back({1, edge_at(run[r])});
          order.push_back({2, face_at(run[r - 1])});
        }
      }
    }
  }
}

// Rebuilds the pairs of one dimension from a forest: every tree must contain
// exactly one root candidate, and every other node is paired with the edge
// leading to its parent.
struct Forest {
  std::vector<std::vector<std::pair<std::int32_t, EdgeId>>> adj;  // node -> (neighbour, edge)

  explicit Forest(std::size_t nodes) : adj(nodes) {}
  void link(std::int32_t a, std::int32_t b, EdgeId e) {
    adj[a].emplace_back(b, e);
    adj[b].emplace_back(a, e);
  }

  template <class IsRoot, class Pair>
  void orient(const std::vector<char>& present, IsRoot is_root, Pair pair, const char* what) const {
    std::vector<char> seen(adj.size(), 0);
    std::vector<std::int32_t> comp, stack;
    for (std::size_t s = 0; s < adj.size(); ++s) {
      if (!present[s] || seen[s]) continue;
      comp.clear();
      stack.assign(1, static_cast<std::int32_t>(s));
      seen[s] = 1;
      std::size_t edges = 0;
      while (!stack.empty()) {
        const std::int32_t x = stack.back();
        stack.pop_back();
        comp.push_back(x);
        for (const auto& [y, e] : adj[x]) {
          ++edges;
          if (!seen[y]) {
            seen[y] = 1;
            stack.push_back(y);
          }
        }
      }
      if (edges / 2 + 1 != comp.size()) broken(std::string(what) + " forest has a cycle");
      std::int32_t root = kNone;
      for (std::int32_t x : comp)
        if (is_root(x)) {
          if (root != kNone) broken(std::string(what) + " tree keeps two critical cells");
          root = x;
        }
      if (root == kNone) broken(std::string(what) + " tree lost its critical cell");
      std::vector<std::int32_t> queue{root};
      for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        const std::int32_t x = queue[qi];
        for (const auto& [y, e] : adj[x]) {
          if (seen[y] == 2 || y == root) continue;
          seen[y] = 2;
          pair(y, e);
          queue.push_back(y);
        }
      }
    }
  }
};

Rational canonical_value(const SimplexwiseFunction& f, const CellRef& c) { return f.value(c.dim, c.id); }

// Assigns values to the gradient. Every pair or critical cell is a node; a
// facet in another node forces an arc. Values stay within `shift` of the
// canonical ones and are monotone along arcs.
BlwResult finish_values(const Terrain& t, const SimplexwiseFunction& f, const Gradient& grad,
                        const std::vector<CellRef>& order, const Rational& shift, std::size_t cancelled) {
  std::vector<std::int32_t> vnode(t.vertex_capacity(), kNone), enode(t.edge_capacity(), kNone),
      fnode(t.face_capacity(), kNone);
  auto node_of = [&](const CellRef& c) -> std::int32_t& {
    return c.dim == 0 ? vnode[c.id] : c.dim == 1 ? enode[c.id] : fnode[c.id];
  };
  struct Node {
    CellRef low;
    CellRef high{-1, kNone};  // coface of a pair
    std::size_t first;        // smallest position in the original order
  };
  std::vector<Node> nodes;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const CellRef& c = order[i];
    std::int32_t& slot = node_of(c);
    if (slot != kNone) {
      continue;
    }
    slot = static_cast<std::int32_t>(nodes.size());
    Node n{c, {-1, kNone}, i};
    CellRef partner{-1, kNone};
    if (c.dim == 0 && grad.vertex_edge[c.id] != kNone) partner = {1, grad.vertex_edge[c.id]};
    if (c.dim == 1 && grad.edge_partner[c.id].id != kNone) partner = grad.edge_partner[c.id];
    if (c.dim == 2 && grad.face_edge[c.id] != kNone) partner = {1, grad.face_edge[c.id]};
    if (partner.id != kNone) {
      node_of(partner) = slot;
      if (partner.dim > c.dim) {
        n.high = partner;
      } else {
        n.high = c;
        n.low = partner;
      }
    }
    nodes.push_back(n);
  }

  const std::size_t m = nodes.size();
  std::vector<std::vector<std::int32_t>> succ(m);
  std::vector<std::int32_t> indeg(m, 0);
  auto arc = [&](std::int32_t a, std::int32_t b) {
    if (a == b) return;
    succ[a].push_back(b);
    ++indeg[b];
  };
  for (EdgeId e : t.edge_ids()) {
    const auto [a, b] = t.edge_vertices(e);
    arc(vnode[a], enode[e]);
    arc(vnode[b], enode[e]);
  }
  for (FaceId g : t.face_ids()) {
    const HalfedgeId h = t.face_halfedge(g);
    for (HalfedgeId k : {h, t.next(h), t.prev(h)}) arc(enode[Terrain::edge_of(k)], fnode[g]);
  }

  using Entry = std::pair<std::size_t, std::int32_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> ready;
  for (std::size_t i = 0; i < m; ++i)
    if (indeg[i] == 0) ready.emplace(nodes[i].first, static_cast<std::int32_t>(i));
  std::vector<std::int32_t> topo;
  topo.reserve(m);
  while (!ready.empty()) {
    const std::int32_t x = ready.top().second;
    ready.pop();
    topo.push_back(x);
    for (std::int32_t y : succ[x])
      if (--indeg[y] == 0) ready.emplace(nodes[y].first, y);
  }
  if (topo.size() != m) broken("gradient has a closed path");

  std::vector<Rational> lo(m), hi(m), target(m);
  for (std::size_t i = 0; i < m; ++i) {
    Rational a = canonical_value(f, nodes[i].low), b = a;
    if (nodes[i].high.id != kNone) {
      const Rational c = canonical_value(f, nodes[i].high);
      a = std::min(a, c);
      b = std::max(b, c);
    }
    lo[i] = b - shift;
    hi[i] = a + shift;
    target[i] = std::max(lo[i], std::min(hi[i], b));
  }
  std::vector<Rational> cap = hi;  // least upper bound over all successors
  for (std::size_t k = m; k-- > 0;) {
    const std::int32_t x = topo[k];
    for (std::int32_t y : succ[x])
      if (cap[y] < cap[x]) cap[x] = cap[y];
  }
  std::vector<Rational> value(m);
  for (std::size_t k = 0; k < m; ++k) {
    const std::int32_t x = topo[k];
    value[x] = std::min(cap[x], target[x]);
  }
  for (std::size_t k = 0; k < m; ++k) {
    const std::int32_t x = topo[k];
    if (value[x] < lo[x]) broken("no monotone values within the shift");
    for (std::int32_t y : succ[x])
      if (value[y] < value[x]) value[y] = value[x];
  }

  BlwResult out;
  out.g.vertex.resize(t.vertex_capacity());
  out.g.edge.resize(t.edge_capacity());
  out.g.face.resize(t.face_capacity());
  out.vertex_rank.assign(t.vertex_capacity(), 0);
  out.edge_rank.assign(t.edge_capacity(), 0);
  out.face_rank.assign(t.face_capacity(), 0);
  auto set_value = [&](const CellRef& c, const Rational& v) {
    (c.dim == 0 ? out.g.vertex[c.id] : c.dim == 1 ? out.g.edge[c.id] : out.g.face[c.id]) = v;
  };
  std::vector<std::int32_t> by_value(topo);
  std::stable_sort(by_value.begin(), by_value.end(),
                   [&](std::int32_t a, std::int32_t b) { return value[a] < value[b]; });
  std::uint32_t next_rank = 0;
  auto set_rank = [&](const CellRef& c) {
    (c.dim == 0 ? out.vertex_rank[c.id] : c.dim == 1 ? out.edge_rank[c.id] : out.face_rank[c.id]) = next_rank++;
  };
  for (std::int32_t x : by_value) {
    set_value(nodes[x].low, value[x]);
    if (nodes[x].high.id != kNone) {
      set_value(nodes[x].high, value[x]);
      set_rank(nodes[x].high);
    } else {
      ++out.critical_cells;
    }
    set_rank(nodes[x].low);
  }
  out.vertex_edge = grad.vertex_edge;
  out.face_edge = grad.face_edge;
  out.max_shift = shift;
  out.cancelled_pairs = cancelled;
  return out;
}

}  // namespace

BlwResult blw_simplify(const Terrain& base, const AwarenessBudget& budget) {
  if (!budget.is_infinite()) check_generic_epsilon(base, budget.epsilon());
  const Terrain& t = base;
  const SimplexwiseFunction f = canonical_filtration(t);

  Gradient grad(t);
  std::vector<CellRef> order;
  order.reserve(t.num_vertices() + t.num_edges() + t.num_faces());
  lower_star_gradient(t, grad, order);
  if (order.size() != t.num_vertices() + t.num_edges() + t.num_faces()) broken("lower stars do not cover the complex");

  const CellPairing pairing = reduce(t, order);

  // Pairs among critical cells, cancelled below 2 epsilon.
  std::vector<char> cancelled_vertex(t.vertex_capacity(), 0), cancelled_face(t.face_capacity(), 0);
  std::vector<EdgeId> saddles0, saddles1;
  Rational widest = 0;
  std::size_t cancelled = 0;
  for (const auto& [b, d] : pairing.pairs) {
    const CellRef& cb = order[b];
    const CellRef& cd = order[d];
    const bool crit_b = grad.critical(cb), crit_d = grad.critical(cd);
    if (!crit_b && !crit_d) {
      if (d != b + 1) broken("gradient pair is not a persistence pair");
      continue;
    }
    if (!crit_b || !crit_d) broken("critical cell paired with a regular one");
    const Rational pers = canonical_value(f, cd) - canonical_value(f, cb);
    if (!budget.is_infinite() && pers >= 2 * budget.epsilon()) continue;
    ++cancelled;
    if (pers > widest) widest = pers;
    if (cb.dim == 0) {
      cancelled_vertex[cb.id] = 1;
      saddles0.push_back(cd.id);
    } else {
      cancelled_face[cd.id] = 1;
      saddles1.push_back(cb.id);
    }
  }

  // Strictly inside (widest / 2, epsilon).
  Rational shift = budget.is_infinite() ? Rational(widest + 1) : Rational((widest / 2 + budget.epsilon()) / 2);
  shift.canonicalize();

  if (cancelled > 0) {
    // vertices: spanning forest of vertex-edge pairs plus cancelled saddles
    Forest vf(t.vertex_capacity());
    std::vector<char> vpresent(t.vertex_capacity(), 0);
    std::vector<char> vroot(t.vertex_capacity(), 0);
    for (VertexId v : t.vertex_ids()) {
      vpresent[v] = 1;
      if (grad.vertex_edge[v] != kNone) {
        const auto [a, b] = t.edge_vertices(grad.vertex_edge[v]);
        vf.link(a, b, grad.vertex_edge[v]);
      } else if (!cancelled_vertex[v]) {
        vroot[v] = 1;
      }
    }
    for (EdgeId e : saddles0) {
      const auto [a, b] = t.edge_vertices(e);
      vf.link(a, b, e);
    }
    // faces: dual forest with one extra node for the outside
    const auto outside = static_cast<std::int32_t>(t.face_capacity());
    Forest ff(t.face_capacity() + 1);
    std::vector<char> fpresent(t.face_capacity() + 1, 0);
    std::vector<char> froot(t.face_capacity() + 1, 0);
    fpresent[outside] = 1;
    froot[outside] = 1;
    auto dual_link = [&](EdgeId e) {
      const HalfedgeId h = Terrain::halfedge_of(e);
      const FaceId a = t.face(h), b = t.face(Terrain::twin(h));
      ff.link(a == kNone ? outside : a, b == kNone ? outside : b, e);
    };
    for (FaceId g : t.face_ids()) {
      fpresent[g] = 1;
      if (grad.face_edge[g] != kNone) {
        dual_link(grad.face_edge[g]);
      } else if (!cancelled_face[g]) {
        froot[g] = 1;
      }
    }
    for (EdgeId e : saddles1) dual_link(e);

    for (VertexId v : t.vertex_ids())
      if (grad.vertex_edge[v] != kNone) {
        grad.edge_partner[grad.vertex_edge[v]] = {0, kNone};
        grad.vertex_edge[v] = kNone;
      }
    for (FaceId g : t.face_ids())
      if (grad.face_edge[g] != kNone) {
        grad.edge_partner[grad.face_edge[g]] = {0, kNone};
        grad.face_edge[g] = kNone;
      }
    vf.orient(vpresent, [&](std::int32_t v) { return vroot[v] != 0; },
              [&](std::int32_t v, EdgeId e) { grad.pair_vertex(v, e); }, "vertex");
    ff.orient(fpresent, [&](std::int32_t g) { return froot[g] != 0; },
              [&](std::int32_t g, EdgeId e) { grad.pair_face(e, g); }, "dual");
  }

  return finish_values(t, f, grad, order, shift, cancelled);
}

namespace {

[[noreturn]] void infeasible(const std::string& what) { throw Error(ErrorCode::InfeasiblePlacement, what); }

// Point at parameter max(1/2, (value - eps - lo) / (hi - lo)) from `from` towards `to`.
SplitPoint place_along(const Point2& from, const Rational& lo, const Point2& to, const Rational& hi,
                       const Rational& value, const AwarenessBudget& budget) {
  Rational lambda(1, 2);
  if (!budget.is_infinite()) {
    if (value - hi >= budget.epsilon()) infeasible("split value is too far above the cell");
    if (hi != lo) {
      Rational needed = (value - budget.epsilon() - lo) / (hi - lo);
      needed.canonicalize();
      if (needed > lambda) lambda = needed;
    }
  }
  return {lerp(from, to, lambda), value};
}

}  // namespace

SplitPoint place_edge_vertex(const Terrain& base, EdgeId e, const Rational& g_e, const AwarenessBudget& budget) {
  auto [u, v] = base.edge_vertices(e);
  if (base.vertex_less(v, u)) std::swap(u, v);
  return place_along(base.position(u), base.height(u), base.position(v), base.height(v), g_e, budget);
}

SplitPoint place_face_vertex(const Terrain& base, FaceId f, const Rational& g_f, const AwarenessBudget& budget) {
  std::array<VertexId, 3> c = base.face_vertices(f);
  std::sort(c.begin(), c.end(), [&](VertexId a, VertexId b) { return base.vertex_less(a, b); });
  const Point2& a = base.position(c[0]);
  const Point2& b = base.position(c[1]);
  Rational mx = (a.x + b.x) / 2, my = (a.y + b.y) / 2, mh = (base.height(c[0]) + base.height(c[1])) / 2;
  mx.canonicalize();
  my.canonicalize();
  mh.canonicalize();
  return place_along(Point2(mx, my), mh, base.position(c[2]), base.height(c[2]), g_f, budget);
}

namespace {

Terrain realize_with_origin(const Terrain& base, const BlwResult& blw, const SubdivisionPlan& plan,
                            const AwarenessBudget& budget, std::vector<CellRef>* origin);

}  // namespace

SubdivisionPlan plan_subdivision(const Terrain& base, const BlwResult& blw, const AwarenessBudget& budget,
                                 SubdivisionMode mode) {
  const SimplexwiseFunction& g = blw.g;
  const bool full = mode == SubdivisionMode::Full;
  std::vector<char> edge(base.edge_capacity(), 0), face(base.face_capacity(), 0);
  std::vector<FaceId> pending;
  std::size_t added = 0;
  auto split_face = [&](FaceId f) {
    if (!face[f]) {
      face[f] = 1;
      ++added;
      pending.push_back(f);
    }
  };
  auto split_edge = [&](EdgeId e) {
    if (edge[e]) return;
    edge[e] = 1;
    ++added;
    const HalfedgeId h = Terrain::halfedge_of(e);
    for (HalfedgeId k : {h, Terrain::twin(h)})
      if (base.face(k) != kNone) split_face(base.face(k));
  };
  auto close = [&] {
    while (!pending.empty()) {
      const FaceId f = pending.back();
      pending.pop_back();
      if (blw.face_edge[f] != kNone) split_edge(blw.face_edge[f]);
    }
  };
  auto make_plan = [&] {
    SubdivisionPlan plan;
    plan.edge_split.resize(base.edge_capacity());
    plan.face_split.resize(base.face_capacity());
    for (EdgeId e : base.edge_ids())
      if (edge[e]) {
        plan.edge_split[e] = place_edge_vertex(base, e, g.edge[e], budget);
        ++plan.edges_split;
      }
    for (FaceId f : base.face_ids())
      if (face[f]) {
        plan.face_split[f] = place_face_vertex(base, f, g.face[f], budget);
        ++plan.faces_split;
      }
    return plan;
  };

  for (EdgeId e : base.edge_ids()) {
    const auto [u, v] = base.edge_vertices(e);
    if (full || (g.edge[e] != g.vertex[u] && g.edge[e] != g.vertex[v])) split_edge(e);
  }
  for (FaceId f : base.face_ids()) {
    const auto [a, b, c] = base.face_vertices(f);
    if (full || (g.face[f] != g.vertex[a] && g.face[f] != g.vertex[b] && g.face[f] != g.vertex[c])) split_face(f);
  }
  close();
  if (full) return make_plan();

  // Critical cells of the simplified gradient.
  std::vector<char> edge_paired(base.edge_capacity(), 0);
  for (VertexId v : base.vertex_ids())
    if (blw.vertex_edge[v] != kNone) edge_paired[blw.vertex_edge[v]] = 1;
  for (FaceId f : base.face_ids())
    if (blw.face_edge[f] != kNone) edge_paired[blw.face_edge[f]] = 1;
  auto later = [&](VertexId a, VertexId b) {
    const int c = cmp(g.vertex[a], g.vertex[b]);
    return c != 0 ? c > 0 : blw.vertex_rank[a] > blw.vertex_rank[b];
  };
  auto top_of = [&](std::initializer_list<VertexId> vs) {
    VertexId best = *vs.begin();
    for (VertexId v : vs)
      if (later(v, best)) best = v;
    return best;
  };

  std::vector<std::vector<CellRef>> merged(base.vertex_capacity());
  std::vector<CellRef> origin;
  while (true) {
    SubdivisionPlan plan = make_plan();
    const Terrain t = realize_with_origin(base, blw, plan, budget, &origin);
    for (auto& m : merged) m.clear();
    for (EdgeId e : base.edge_ids())
      if (!edge[e]) {
        const auto [u, v] = base.edge_vertices(e);
        merged[top_of({u, v})].push_back({1, e});
      }
    for (FaceId f : base.face_ids())
      if (!face[f]) {
        const auto [a, b, c] = base.face_vertices(f);
        merged[top_of({a, b, c})].push_back({2, f});
      }
    auto critical = [&](const CellRef& c) {
      return c.dim == 0 ? blw.vertex_edge[c.id] == kNone
                        : c.dim == 1 ? !edge_paired[c.id] : blw.face_edge[c.id] == kNone;
    };

    added = 0;
    for (VertexId x : t.vertex_ids()) {
      if (t.is_boundary_vertex(x)) continue;
      const CellRef c = origin[x];
      int expected = critical(c) ? 1 : 0;
      if (c.dim == 0)
        for (const CellRef& m : merged[c.id]) expected += critical(m) ? 1 : 0;
      if (classify(t, x).weight() == expected) continue;
      if (c.dim == 0 && !merged[c.id].empty()) {
        for (const CellRef& m : merged[c.id]) m.dim == 1 ? split_edge(m.id) : split_face(m.id);
      } else if (c.dim == 0) {
        for (HalfedgeId h : base.outgoing(c.id)) {
          split_edge(Terrain::edge_of(h));
          if (base.face(h) != kNone) split_face(base.face(h));
        }
      } else {
        std::vector<FaceId> around;
        if (c.dim == 2) {
          around.push_back(c.id);
        } else {
          const HalfedgeId h = Terrain::halfedge_of(c.id);
          for (HalfedgeId k : {h, Terrain::twin(h)})
            if (base.face(k) != kNone) around.push_back(base.face(k));
        }
        for (FaceId f : around) {
          const HalfedgeId h = base.face_halfedge(f);
          for (HalfedgeId k : {h, base.next(h), base.prev(h)}) split_edge(Terrain::edge_of(k));
        }
      }
    }
    close();
    if (added == 0) return plan;
  }
}

namespace {

Terrain realize_with_origin(const Terrain& base, const BlwResult& blw, const SubdivisionPlan& plan,
                            const AwarenessBudget& budget, std::vector<CellRef>* origin) {
  struct Item {
    CellRef cell;
    std::uint32_t rank;
    TerrainPoint point;
    Rational base_height;
  };
  std::vector<Item> items;
  std::vector<std::int32_t> vslot(base.vertex_capacity(), kNone), eslot(base.edge_capacity(), kNone),
      fslot(base.face_capacity(), kNone);
  for (VertexId v : base.vertex_ids()) {
    vslot[v] = static_cast<std::int32_t>(items.size());
    const Point2& p = base.position(v);
    items.push_back({{0, v}, blw.vertex_rank[v], {p.x, p.y, blw.g.vertex[v]}, base.height(v)});
  }
  for (EdgeId e : base.edge_ids()) {
    if (!plan.edge_split[e]) continue;
    const SplitPoint& s = *plan.edge_split[e];
    const auto [u, v] = base.edge_vertices(e);
    const Rational lambda = param_on_segment(s.position, base.position(u), base.position(v));
    Rational h = base.height(u) + lambda * (base.height(v) - base.height(u));
    h.canonicalize();
    eslot[e] = static_cast<std::int32_t>(items.size());
    items.push_back({{1, e}, blw.edge_rank[e], {s.position.x, s.position.y, s.height}, h});
  }
  for (FaceId f : base.face_ids()) {
    if (!plan.face_split[f]) continue;
    const SplitPoint& s = *plan.face_split[f];
    const auto [a, b, c] = base.face_vertices(f);
    const Rational h = plane_height({&base.position(a), &base.height(a)}, {&base.position(b), &base.height(b)},
                                    {&base.position(c), &base.height(c)}, s.position);
    fslot[f] = static_cast<std::int32_t>(items.size());
    items.push_back({{2, f}, blw.face_rank[f], {s.position.x, s.position.y, s.height}, h});
  }

  if (!budget.is_infinite())
    for (const Item& it : items)
      if (abs(it.point.height - it.base_height) > budget.epsilon())
        infeasible("realized vertex is farther than epsilon from the base");

  std::vector<std::int32_t> by_rank(items.size());
  std::iota(by_rank.begin(), by_rank.end(), 0);
  std::sort(by_rank.begin(), by_rank.end(), [&](std::int32_t a, std::int32_t b) { return items[a].rank < items[b].rank; });
  std::vector<VertexId> id_of(items.size());
  std::vector<TerrainPoint> points;
  points.reserve(items.size());
  for (std::size_t i = 0; i < by_rank.size(); ++i) {
    id_of[by_rank[i]] = static_cast<VertexId>(i);
    points.push_back(items[by_rank[i]].point);
  }
  if (origin) {
    origin->resize(items.size());
    for (std::size_t i = 0; i < by_rank.size(); ++i) (*origin)[i] = items[by_rank[i]].cell;
  }

  std::vector<Triangle> tris;
  std::vector<VertexId> cycle;
  for (FaceId f : base.face_ids()) {
    const HalfedgeId h = base.face_halfedge(f);
    if (fslot[f] == kNone) {
      tris.push_back({id_of[vslot[base.origin(h)]], id_of[vslot[base.origin(base.next(h))]],
                      id_of[vslot[base.origin(base.prev(h))]]});
      continue;
    }
    cycle.clear();
    for (HalfedgeId k : {h, base.next(h), base.prev(h)}) {
      cycle.push_back(id_of[vslot[base.origin(k)]]);
      const EdgeId e = Terrain::edge_of(k);
      if (eslot[e] != kNone) cycle.push_back(id_of[eslot[e]]);
    }
    const VertexId centre = id_of[fslot[f]];
    for (std::size_t i = 0; i < cycle.size(); ++i) tris.push_back({centre, cycle[i], cycle[(i + 1) % cycle.size()]});
  }
  return Terrain::build(points, tris);
}

}  // namespace

Terrain realize(const Terrain& base, const BlwResult& blw, const SubdivisionPlan& plan, const AwarenessBudget& budget) {
  return realize_with_origin(base, blw, plan, budget, nullptr);
}

}  // namespace tsimp
