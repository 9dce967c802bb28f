#include "doctest.h"

#include "support.hpp"
#include "tsimp/error.hpp"
#include "tsimp/local_ops.hpp"
#include "tsimp/persistence.hpp"

using namespace tsimp;

namespace {

Terrain quad(int a, int b, int c, int d) {
  // Diagonal ab, c to the left of a->b, d to the right.
  std::vector<TerrainPoint> pts = {{0, 0, a}, {2, 2, b}, {0, 2, c}, {2, 0, d}};
  std::vector<Triangle> tris = {{0, 1, 2}, {0, 3, 1}};
  return Terrain::build(pts, tris);
}

EdgeId diagonal(const Terrain& t) {
  for (EdgeId e : t.edge_ids())
    if (!t.is_boundary_edge(e)) return e;
  return kNone;
}

}  // namespace

TEST_CASE("topological flippability compares height intervals") {
  auto topo = [](int a, int b, int c, int d) {
    const Terrain t = quad(a, b, c, d);
    return topologically_flippable(t, diagonal(t));
  };
  auto ordered = [](int a, int b, int c, int d) {
    const Terrain t = quad(a, b, c, d);
    return order_flippable(t, diagonal(t));
  };
  CHECK_FALSE(topo(1, 2, 3, 4));
  CHECK(topo(1, 3, 2, 4));
  CHECK(topo(1, 4, 2, 3));
  CHECK(ordered(1, 3, 2, 4));
  CHECK_FALSE(ordered(1, 2, 3, 4));
  // a shared endpoint height touches as closed intervals but not in vertex order (b has id 1, c id 2)
  CHECK(topo(4, 9, 9, 12));
  CHECK_FALSE(ordered(4, 9, 9, 12));
  CHECK(ordered(4, 9, 4, 12));
}

TEST_CASE("flippable flips preserve the diagram") {
  testing::Rng rng(21);
  int tried = 0;
  for (int run = 0; run < 20; ++run) {
    Terrain t = testing::random_terrain(rng, {.vertices = 20, .height_range = 10, .distinct_heights = false});
    for (EdgeId e : t.edge_ids()) {
      if (t.is_boundary_edge(e) || !geometrically_flippable(t, e) || !topologically_flippable(t, e)) continue;
      const auto before_counts = count_critical(t);
      const bool keeps_types = order_flippable(t, e);
      const PersistenceDiagram before = persistence(t);
      flip_edge(t, e);
      CHECK(diagrams_equal(before, persistence(t)));
      if (keeps_types) CHECK(count_critical(t).interior_total() == before_counts.interior_total());
      ++tried;
    }
  }
  CHECK(tried > 50);
}

TEST_CASE("flip errors") {
  const Terrain t = quad(0, 1, 2, 3);
  for (EdgeId e : t.edge_ids()) {
    if (!t.is_boundary_edge(e)) continue;
    CHECK_THROWS_AS(topologically_flippable(t, e), Error);
  }
  // reflex quad
  std::vector<TerrainPoint> pts = {{0, 0, 0}, {4, 0, 0}, {1, 1, 0}, {0, 4, 0}};
  std::vector<Triangle> tris = {{0, 1, 2}, {0, 2, 3}};
  Terrain r = Terrain::build(pts, tris);
  const EdgeId e = diagonal(r);
  CHECK_FALSE(geometrically_flippable(r, e));
  try {
    flip_edge(r, e);
    FAIL("expected NotConvex");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::NotConvex);
  }
}

TEST_CASE("degree-3 removal keeps the diagram for regular vertices") {
  std::vector<TerrainPoint> pts = {{0, 0, 0}, {6, 0, 4}, {0, 6, 8}, {1, 1, 2}};
  std::vector<Triangle> tris = {{0, 1, 3}, {1, 2, 3}, {2, 0, 3}};
  Terrain t = Terrain::build(pts, tris);
  const PersistenceDiagram before = persistence(t);
  remove_degree3(t, 3);
  CHECK(t.num_vertices() == 3);
  CHECK(t.num_faces() == 1);
  CHECK(diagrams_equal(before, persistence(t)));

  Terrain m = Terrain::build(std::vector<TerrainPoint>{{0, 0, 5}, {6, 0, 4}, {0, 6, 8}, {1, 1, 0}}, tris);
  CHECK_THROWS_AS(remove_degree3(m, 3), Error);
}

TEST_CASE("link search finds a persistence-aware triangulation") {
  testing::Rng rng(23);
  int removed = 0;
  for (int run = 0; run < 30; ++run) {
    Terrain t = testing::random_terrain(rng, {.vertices = 25});
    const Terrain base = t;
    const BaseIndex index(base);
    for (VertexId v : t.vertex_ids()) {
      if (t.is_boundary_vertex(v) || classify(t, v).kind != Criticality::Kind::Regular) continue;
      for (LinkMode mode : {LinkMode::FirstValid, LinkMode::BestLinf}) {
        const auto found = find_link_triangulation(t, index, v, AwarenessBudget::infinite(), mode);
        if (!found) continue;
        for (const auto& [a, b] : found->diagonals) CHECK(persistence_aware(t, v, a, b));
        Terrain copy = t;
        remove_vertex(copy, v, found->diagonals);
        CHECK_NOTHROW(copy.validate_structure());
        CHECK(diagrams_equal(persistence(t), persistence(copy)));
        ++removed;
      }
    }
  }
  CHECK(removed > 100);
}

TEST_CASE("remove_vertex validates the diagonal set") {
  testing::Rng rng(24);
  Terrain t = testing::random_terrain(rng, {.vertices = 25});
  VertexId v = kNone;
  for (VertexId u : t.vertex_ids())
    if (!t.is_boundary_vertex(u) && t.degree(u) >= 5) v = u;
  REQUIRE(v != kNone);
  const LinkPolygon link = t.link(v);
  try {
    remove_vertex(t, v, {{link.ring[0], link.ring[2]}});
    FAIL("expected InvalidDiagonalSet");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidDiagonalSet);
  }
}
