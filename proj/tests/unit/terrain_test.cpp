#include "doctest.h"

#include "support.hpp"
#include "tsimp/error.hpp"
#include "tsimp/terrain.hpp"

using namespace tsimp;

namespace {

// Square with a centre vertex, heights given for the corners (ccw from SW) and centre.
Terrain star(std::array<int, 4> corners, int centre) {
  std::vector<TerrainPoint> pts = {{0, 0, corners[0]}, {2, 0, corners[1]}, {2, 2, corners[2]},
                                   {0, 2, corners[3]}, {1, 1, centre}};
  std::vector<Triangle> tris = {{0, 1, 4}, {1, 2, 4}, {2, 3, 4}, {3, 0, 4}};
  return Terrain::build(pts, tris);
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::InternalInvariant;
}

}  // namespace

TEST_CASE("parse_rational is exact") {
  CHECK(parse_rational("0.25") == Rational(1, 4));
  CHECK(parse_rational("-3.125") == Rational(-25, 8));
  CHECK(parse_rational("1.5e-3") == Rational(3, 2000));
  CHECK(parse_rational("7/4") == Rational(7, 4));
  CHECK(parse_rational("010") == Rational(10));
  CHECK(to_string(Rational(6, 4)) == "3/2");
  CHECK(to_string(Rational(-5)) == "-5");
  CHECK(code_of([] { parse_rational("abc"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { parse_rational("1/0"); }) == ErrorCode::ParseError);
}

TEST_CASE("orientation and incircle") {
  const Point2 a(0, 0), b(4, 0), c(0, 4);
  CHECK(orientation(a, b, c) == 1);
  CHECK(orientation(a, c, b) == -1);
  CHECK(orientation(a, b, Point2(8, 0)) == 0);
  CHECK(incircle(a, b, c, Point2(1, 1)) == 1);
  CHECK(incircle(a, b, c, Point2(4, 4)) == 0);
  CHECK(incircle(a, b, c, Point2(9, 9)) == -1);
  CHECK(segments_cross_properly(a, Point2(4, 4), b, c));
  CHECK_FALSE(segments_cross_properly(a, b, b, c));
  CHECK(segments_intersect(a, b, b, c));
}

TEST_CASE("build counts and validation") {
  const Terrain t = star({0, 1, 2, 3}, 5);
  CHECK(t.num_vertices() == 5);
  CHECK(t.num_edges() == 8);
  CHECK(t.num_faces() == 4);
  CHECK_FALSE(t.is_boundary_vertex(4));
  CHECK(t.is_boundary_vertex(0));
  CHECK(t.degree(4) == 4);
  CHECK(t.link(4).size() == 4);
  CHECK_NOTHROW(t.validate_structure());
  CHECK(code_of([&] { (void)t.link(0); }) == ErrorCode::BoundaryVertex);
}

TEST_CASE("build rejects broken input") {
  std::vector<TerrainPoint> pts = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}};
  SUBCASE("index out of range") {
    std::vector<Triangle> tris = {{0, 1, 7}};
    CHECK(code_of([&] { Terrain::build(pts, tris); }) == ErrorCode::InvalidIndex);
  }
  SUBCASE("duplicate point") {
    pts[3] = pts[0];
    std::vector<Triangle> tris = {{0, 1, 2}};
    CHECK(code_of([&] { Terrain::build(pts, tris); }) == ErrorCode::DuplicatePoint);
  }
  SUBCASE("degenerate triangle") {
    pts[2] = {2, 0, 0};
    std::vector<Triangle> tris = {{0, 1, 2}, {0, 1, 3}};
    CHECK(code_of([&] { Terrain::build(pts, tris); }) == ErrorCode::DegenerateTriangle);
  }
  SUBCASE("unused vertex") {
    std::vector<Triangle> tris = {{0, 1, 2}};
    CHECK(code_of([&] { Terrain::build(pts, tris); }) == ErrorCode::UnusedVertex);
  }
  SUBCASE("overlapping triangles") {
    std::vector<Triangle> tris = {{0, 1, 3}, {0, 1, 2}, {0, 3, 2}};
    CHECK_THROWS_AS(Terrain::build(pts, tris), Error);
  }
}

TEST_CASE("classify matches the lower and upper link") {
  CHECK(classify(star({1, 2, 3, 4}, 0), 4).kind == Criticality::Kind::Minimum);
  CHECK(classify(star({1, 2, 3, 4}, 9), 4).kind == Criticality::Kind::Maximum);
  CHECK(classify(star({1, 2, 3, 4}, 0), 0).kind == Criticality::Kind::Boundary);
  CHECK(classify(star({1, 2, 7, 8}, 5), 4).kind == Criticality::Kind::Regular);
  const Criticality saddle = classify(star({1, 7, 2, 8}, 5), 4);
  CHECK(saddle.kind == Criticality::Kind::Saddle);
  CHECK(saddle.components == 2);
  CHECK(saddle.weight() == 1);
  const LinkPart low = lower_link(star({1, 7, 2, 8}, 5), 4);
  CHECK(low.vertices.size() == 2);
  CHECK(low.edges.empty());
}

TEST_CASE("equal heights resolve by id") {
  const Terrain t = star({5, 5, 5, 5}, 5);
  CHECK(t.vertex_less(0, 4));
  CHECK(classify(t, 4).kind == Criticality::Kind::Maximum);
}

TEST_CASE("flip and compaction keep the structure valid") {
  testing::Rng rng(3);
  Terrain t = testing::random_terrain(rng, {.vertices = 30});
  int flips = 0;
  for (EdgeId e : t.edge_ids()) {
    if (t.is_boundary_edge(e)) continue;
    const HalfedgeId h = Terrain::halfedge_of(e);
    const Point2& a = t.position(t.origin(h));
    const Point2& b = t.position(t.target(h));
    const Point2& c = t.position(t.origin(t.prev(h)));
    const Point2& d = t.position(t.origin(t.prev(Terrain::twin(h))));
    if (orientation(d, b, c) > 0 && orientation(c, a, d) > 0) {
      t.flip(e);
      ++flips;
    }
  }
  CHECK(flips > 0);
  CHECK_NOTHROW(t.validate_structure());
  const Terrain c = t.compacted();
  CHECK(c.num_faces() == t.num_faces());
  CHECK(c.triangles().size() == c.num_faces());
}

TEST_CASE("height_at interpolates and rejects outside points") {
  testing::Rng rng(5);
  const Terrain t = testing::random_terrain(rng, {.vertices = 25});
  for (int i = 0; i < 50; ++i) {
    const Point2 p(testing::random_rational(rng, 0, 60, 3), testing::random_rational(rng, 0, 60, 3));
    bool inside = true;
    Rational want;
    try {
      want = testing::scan_height(t, p);
    } catch (const std::exception&) {
      inside = false;
    }
    if (inside) {
      CHECK(height_at(t, p) == want);
    } else {
      CHECK(code_of([&] { (void)height_at(t, p); }) == ErrorCode::OutsideDomain);
    }
  }
}

TEST_CASE("linf_distance of a terrain to itself and a shifted copy") {
  testing::Rng rng(8);
  const Terrain t = testing::random_terrain(rng, {.vertices = 20});
  CHECK(linf_distance(t, t) == 0);
  Terrain u = t;
  u.set_height(u.vertex_ids().front(), u.height(u.vertex_ids().front()) + Rational(3, 2));
  CHECK(linf_distance(t, u) == Rational(3, 2));
}
