#include "doctest.h"

#include <sstream>

#include "support.hpp"
#include "tsimp/error.hpp"
#include "tsimp/persistence.hpp"

using namespace tsimp;

TEST_CASE("diagram matches a plain reduction on random terrains") {
  testing::Rng rng(11);
  for (int run = 0; run < 40; ++run) {
    const bool distinct = run % 2 == 0;
    const Terrain t = testing::random_terrain(rng, {.vertices = 15 + static_cast<std::size_t>(run),
                                                    .height_range = distinct ? 1000 : 6,
                                                    .distinct_heights = distinct});
    const PersistenceDiagram d = persistence(t);
    CHECK(testing::same(testing::normalise(d), testing::naive_diagram(t)));
    CHECK(d.essential[0].size() == 1);
    CHECK(d.essential[1].empty());
  }
}

TEST_CASE("0-dimensional pairs follow the elder rule") {
  testing::Rng rng(12);
  for (int run = 0; run < 20; ++run) {
    const Terrain t = testing::random_terrain(rng, {.vertices = 30});
    CHECK(testing::normalise(persistence(t)).pairs[0] == testing::union_find_pairs(t));
  }
}

TEST_CASE("two pits joined by a ridge") {
  // 3x5 grid, two low cells separated by a ridge of height 5.
  std::vector<Rational> h = {9, 9, 9, 9, 9,
                             9, 1, 5, 2, 9,
                             9, 9, 9, 9, 9};
  const Terrain pits = testing::grid_terrain(3, 5, h);
  const PersistenceDiagram d = persistence(pits);
  const auto n = testing::normalise(d);
  REQUIRE(n.pairs[0].size() == 1);
  CHECK(n.pairs[0][0] == std::pair<Rational, Rational>(2, 5));
  CHECK(n.essential[0] == std::vector<Rational>{1});
  CHECK(min_critical_count(d, Rational(1)) == 3);
  CHECK(min_critical_count(d, Rational(3, 2)) == 1);

  std::ostringstream csv;
  write_diagram_csv(csv, d);
  CHECK(csv.str() == "dim,birth,death\n0,2,5\n0,1,inf\n");
}

TEST_CASE("diagrams_equal ignores zero-persistence pairs") {
  PersistenceDiagram a, b;
  a.pairs[0] = {{1, 3}, {2, 2}};
  b.pairs[0] = {{1, 3}};
  a.essential[0] = b.essential[0] = {Rational(0)};
  CHECK(diagrams_equal(a, b));
  b.pairs[0] = {{1, 4}};
  CHECK_FALSE(diagrams_equal(a, b));
}

TEST_CASE("non-monotone functions are rejected") {
  const Terrain t = testing::grid_terrain(2, 2, {0, 1, 2, 3});
  SimplexwiseFunction f = canonical_filtration(t);
  f.edge[t.edge_ids().front()] = -1;
  try {
    (void)persistence(t, f);
    FAIL("expected NonMonotoneFunction");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonMonotoneFunction);
  }
}
