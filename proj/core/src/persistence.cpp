#include "tsimp/persistence.hpp"

#include <algorithm>
#include <ostream>

#include "tsimp/error.hpp"

namespace tsimp {

SimplexwiseFunction canonical_filtration(const Terrain& t) {
  SimplexwiseFunction f;
  f.vertex.resize(t.vertex_capacity());
  f.edge.resize(t.edge_capacity());
  f.face.resize(t.face_capacity());
  for (VertexId v : t.vertex_ids()) f.vertex[v] = t.height(v);
  for (EdgeId e : t.edge_ids()) {
    const auto [a, b] = t.edge_vertices(e);
    f.edge[e] = std::max(t.height(a), t.height(b));
  }
  for (FaceId g : t.face_ids()) {
    const auto [a, b, c] = t.face_vertices(g);
    f.face[g] = std::max({t.height(a), t.height(b), t.height(c)});
  }
  return f;
}

std::vector<CellRef> filtration_order(const Terrain& t, const SimplexwiseFunction& f) {
  auto non_monotone = [] { return Error(ErrorCode::NonMonotoneFunction, "a cell is valued below one of its faces"); };
  std::vector<CellRef> order;
  order.reserve(t.num_vertices() + t.num_edges() + t.num_faces());
  for (VertexId v : t.vertex_ids()) order.push_back({0, v});
  for (EdgeId e : t.edge_ids()) {
    const auto [a, b] = t.edge_vertices(e);
    if (f.edge[e] < f.vertex[a] || f.edge[e] < f.vertex[b]) throw non_monotone();
    order.push_back({1, e});
  }
  for (FaceId g : t.face_ids()) {
    const HalfedgeId h = t.face_halfedge(g);
    for (HalfedgeId k : {h, t.next(h), t.prev(h)})
      if (f.face[g] < f.edge[Terrain::edge_of(k)]) throw non_monotone();
    order.push_back({2, g});
  }
  std::sort(order.begin(), order.end(), [&](const CellRef& a, const CellRef& b) {
    const int c = cmp(f.value(a.dim, a.id), f.value(b.dim, b.id));
    if (c != 0) return c < 0;
    if (a.dim != b.dim) return a.dim < b.dim;
    return a.id < b.id;
  });
  return order;
}

namespace {

using Column = std::vector<std::size_t>;  // sorted ascending, low = back()

void add_into(Column& target, const Column& source, Column& scratch) {
  scratch.clear();
  std::set_symmetric_difference(target.begin(), target.end(), source.begin(), source.end(),
                                std::back_inserter(scratch));
  target.swap(scratch);
}

}  // namespace

CellPairing reduce(const Terrain& t, std::span<const CellRef> order) {
  const std::size_t n = order.size();
  std::vector<std::size_t> vpos(t.vertex_capacity()), epos(t.edge_capacity());
  for (std::size_t i = 0; i < n; ++i) {
    if (order[i].dim == 0) vpos[order[i].id] = i;
    if (order[i].dim == 1) epos[order[i].id] = i;
  }

  constexpr std::size_t kFree = static_cast<std::size_t>(-1);
  std::vector<std::size_t> owner(n, kFree);  // position of the column whose low is this row
  std::vector<Column> reduced(n);
  std::vector<char> cleared(n, 0);
  Column scratch;

  auto run = [&](int dim) {
    for (std::size_t j = 0; j < n; ++j) {
      if (order[j].dim != dim || cleared[j]) continue;
      Column col;
      if (dim == 1) {
        const auto [a, b] = t.edge_vertices(order[j].id);
        col = {vpos[a], vpos[b]};
      } else {
        const HalfedgeId h = t.face_halfedge(order[j].id);
        col = {epos[Terrain::edge_of(h)], epos[Terrain::edge_of(t.next(h))], epos[Terrain::edge_of(t.prev(h))]};
      }
      std::sort(col.begin(), col.end());
      if (col.back() >= j) throw Error(ErrorCode::NonMonotoneFunction, "cell order puts a face after its coface");
      while (!col.empty() && owner[col.back()] != kFree) add_into(col, reduced[owner[col.back()]], scratch);
      if (!col.empty()) {
        owner[col.back()] = j;
        cleared[col.back()] = 1;
        reduced[j] = std::move(col);
      }
    }
  };
  run(2);
  run(1);

  CellPairing out;
  for (std::size_t i = 0; i < n; ++i) {
    if (owner[i] != kFree) {
      out.pairs.emplace_back(i, owner[i]);
    } else if (reduced[i].empty()) {
      out.essential.push_back(i);
    }
  }
  std::sort(out.pairs.begin(), out.pairs.end());
  return out;
}

PersistenceDiagram persistence(const Terrain& t, const SimplexwiseFunction& f) {
  const std::vector<CellRef> order = filtration_order(t, f);
  const CellPairing pairing = reduce(t, order);
  PersistenceDiagram d;
  for (const auto& [b, k] : pairing.pairs) {
    const CellRef& cb = order[b];
    d.pairs[cb.dim].push_back({f.value(cb.dim, cb.id), f.value(order[k].dim, order[k].id)});
  }
  for (std::size_t i : pairing.essential) {
    const CellRef& c = order[i];
    if (c.dim > 1) throw Error(ErrorCode::InternalInvariant, "terrain has a 2-cycle");
    d.essential[c.dim].push_back(f.value(c.dim, c.id));
  }
  return d;
}

PersistenceDiagram persistence(const Terrain& t) { return persistence(t, canonical_filtration(t)); }

namespace {

std::vector<PersistencePair> visible(const std::vector<PersistencePair>& pairs) {
  std::vector<PersistencePair> out;
  for (const auto& p : pairs)
    if (p.birth != p.death) out.push_back(p);
  std::sort(out.begin(), out.end(), [](const PersistencePair& a, const PersistencePair& b) {
    const int c = cmp(a.birth, b.birth);
    return c != 0 ? c < 0 : a.death < b.death;
  });
  return out;
}

std::vector<Rational> sorted(std::vector<Rational> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

bool diagrams_equal(const PersistenceDiagram& a, const PersistenceDiagram& b) {
  for (int dim = 0; dim < 2; ++dim) {
    if (visible(a.pairs[dim]) != visible(b.pairs[dim])) return false;
    if (sorted(a.essential[dim]) != sorted(b.essential[dim])) return false;
  }
  return true;
}

std::size_t min_critical_count(const PersistenceDiagram& d, const Rational& epsilon) {
  const Rational gap = 2 * epsilon;
  std::size_t count = d.num_essential();
  for (const auto& dim_pairs : d.pairs)
    for (const auto& p : dim_pairs)
      if (p.death - p.birth > gap) count += 2;
  return count;
}

void write_diagram_csv(std::ostream& out, const PersistenceDiagram& d) {
  out << "dim,birth,death\n";
  for (int dim = 0; dim < 2; ++dim) {
    for (const auto& p : visible(d.pairs[dim])) out << dim << ',' << to_string(p.birth) << ',' << to_string(p.death) << '\n';
    for (const auto& b : sorted(d.essential[dim])) out << dim << ',' << to_string(b) << ",inf\n";
  }
}

}  // namespace tsimp
