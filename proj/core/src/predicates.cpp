#include "tsimp/predicates.hpp"

#include <cmath>

namespace tsimp {

Rational signed_area2(const Point2& a, const Point2& b, const Point2& c) {
  return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

int orientation(const Point2& a, const Point2& b, const Point2& c) {
  const double t1 = (b.fx - a.fx) * (c.fy - a.fy);
  const double t2 = (b.fy - a.fy) * (c.fx - a.fx);
  const double det = t1 - t2;
  // Shadows carry one rounding each; the bound dominates all propagated error.
  const double scale = (std::fabs(a.fx) + std::fabs(b.fx)) * (std::fabs(a.fy) + std::fabs(c.fy)) +
                       (std::fabs(a.fy) + std::fabs(b.fy)) * (std::fabs(a.fx) + std::fabs(c.fx));
  const double bound = 1e-13 * scale;
  if (det > bound) return 1;
  if (det < -bound) return -1;
  return sgn(signed_area2(a, b, c));
}

int incircle(const Point2& a, const Point2& b, const Point2& c, const Point2& d) {
  const Rational adx = a.x - d.x, ady = a.y - d.y;
  const Rational bdx = b.x - d.x, bdy = b.y - d.y;
  const Rational cdx = c.x - d.x, cdy = c.y - d.y;
  const Rational alift = adx * adx + ady * ady;
  const Rational blift = bdx * bdx + bdy * bdy;
  const Rational clift = cdx * cdx + cdy * cdy;
  const Rational det = alift * (bdx * cdy - bdy * cdx) - blift * (adx * cdy - ady * cdx) +
                       clift * (adx * bdy - ady * bdx);
  return sgn(det);
}

bool on_segment(const Point2& p, const Point2& a, const Point2& b) {
  if (orientation(a, b, p) != 0) return false;
  const bool in_x = (a.x <= p.x && p.x <= b.x) || (b.x <= p.x && p.x <= a.x);
  const bool in_y = (a.y <= p.y && p.y <= b.y) || (b.y <= p.y && p.y <= a.y);
  return in_x && in_y;
}

bool segments_cross_properly(const Point2& a, const Point2& b, const Point2& c, const Point2& d) {
  const int o1 = orientation(a, b, c);
  const int o2 = orientation(a, b, d);
  const int o3 = orientation(c, d, a);
  const int o4 = orientation(c, d, b);
  return o1 * o2 < 0 && o3 * o4 < 0;
}

bool segments_intersect(const Point2& a, const Point2& b, const Point2& c, const Point2& d) {
  if (segments_cross_properly(a, b, c, d)) return true;
  return on_segment(c, a, b) || on_segment(d, a, b) || on_segment(a, c, d) || on_segment(b, c, d);
}

bool in_closed_triangle(const Point2& p, const Point2& a, const Point2& b, const Point2& c) {
  const int o = orientation(a, b, c);
  const int o1 = orientation(a, b, p) * o;
  const int o2 = orientation(b, c, p) * o;
  const int o3 = orientation(c, a, p) * o;
  return o1 >= 0 && o2 >= 0 && o3 >= 0;
}

Point2 lerp(const Point2& a, const Point2& b, const Rational& t) {
  return Point2(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y));
}

Rational param_on_segment(const Point2& p, const Point2& a, const Point2& b) {
  const Rational dx = b.x - a.x;
  const Rational dy = b.y - a.y;
  if (abs(dx) >= abs(dy)) return (p.x - a.x) / dx;
  return (p.y - a.y) / dy;
}

}  // namespace tsimp
