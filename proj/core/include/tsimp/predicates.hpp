#pragma once

#include "tsimp/rational.hpp"

namespace tsimp {

/// Exact planar point. The double shadow feeds the floating-point filter in
/// the predicates below and is never used to decide an outcome on its own.
struct Point2 {
  Rational x;
  Rational y;
  double fx = 0.0;
  double fy = 0.0;

  Point2() = default;
  Point2(Rational px, Rational py) : x(std::move(px)), y(std::move(py)), fx(x.get_d()), fy(y.get_d()) {}

  friend bool operator==(const Point2& a, const Point2& b) { return a.x == b.x && a.y == b.y; }
  friend bool operator<(const Point2& a, const Point2& b) { return a.x < b.x || (a.x == b.x && a.y < b.y); }
};

/// +1 if a, b, c turn counterclockwise, -1 if clockwise, 0 if collinear.
int orientation(const Point2& a, const Point2& b, const Point2& c);

/// The exact determinant behind orientation(): twice the signed area of abc.
Rational signed_area2(const Point2& a, const Point2& b, const Point2& c);

/// +1 if d lies strictly inside the circumcircle of the counterclockwise triangle abc.
int incircle(const Point2& a, const Point2& b, const Point2& c, const Point2& d);

/// p lies on the closed segment ab (ab may be degenerate).
bool on_segment(const Point2& p, const Point2& a, const Point2& b);

/// Closed segments ab and cd share at least one point.
bool segments_intersect(const Point2& a, const Point2& b, const Point2& c, const Point2& d);

/// Segments cross at a single point interior to both.
bool segments_cross_properly(const Point2& a, const Point2& b, const Point2& c, const Point2& d);

/// p lies in the closed triangle abc (either orientation; abc non-degenerate).
bool in_closed_triangle(const Point2& p, const Point2& a, const Point2& b, const Point2& c);

/// a + t (b - a)
Point2 lerp(const Point2& a, const Point2& b, const Rational& t);

/// Parameter t with p = a + t (b - a), for p known to be on the line through a != b.
Rational param_on_segment(const Point2& p, const Point2& a, const Point2& b);

}  // namespace tsimp
