#include "tsimp/delaunay.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "tsimp/error.hpp"

namespace tsimp {

namespace {

class Builder {
 public:
  explicit Builder(std::span<const Point2> pts) : pts_(pts) {}

  void add(std::int32_t a, std::int32_t b, std::int32_t c) {
    tris_.push_back({a, b, c});
    index(static_cast<std::int32_t>(tris_.size() - 1));
  }

  // Lawson flips until every edge on the stack is locally Delaunay.
  void legalize() {
    while (!stack_.empty()) {
      const auto [a, b] = stack_.back();
      stack_.pop_back();
      const auto i = find(a, b), j = find(b, a);
      if (i < 0 || j < 0) continue;
      const std::int32_t c = third(i, a, b), d = third(j, b, a);
      if (incircle(pts_[a], pts_[b], pts_[c], pts_[d]) <= 0) continue;
      unindex(i);
      unindex(j);
      tris_[i] = {a, d, c};
      tris_[j] = {d, b, c};
      index(i);
      index(j);
      stack_.insert(stack_.end(), {{a, d}, {d, b}, {b, c}, {c, a}});
    }
  }

  void check(std::int32_t a, std::int32_t b) { stack_.emplace_back(a, b); }

  std::vector<Triangle> take() { return std::move(tris_); }

 private:
  static std::uint64_t key(std::int32_t a, std::int32_t b) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) | static_cast<std::uint32_t>(b);
  }
  std::int32_t find(std::int32_t a, std::int32_t b) const {
    const auto it = edges_.find(key(a, b));
    return it == edges_.end() ? -1 : it->second;
  }
  std::int32_t third(std::int32_t t, std::int32_t a, std::int32_t b) const {
    for (std::int32_t v : tris_[t])
      if (v != a && v != b) return v;
    return -1;
  }
  void index(std::int32_t t) {
    const Triangle& x = tris_[t];
    for (int k = 0; k < 3; ++k) edges_[key(x[k], x[(k + 1) % 3])] = t;
  }
  void unindex(std::int32_t t) {
    const Triangle& x = tris_[t];
    for (int k = 0; k < 3; ++k) edges_.erase(key(x[k], x[(k + 1) % 3]));
  }

  std::span<const Point2> pts_;
  std::vector<Triangle> tris_;
  std::unordered_map<std::uint64_t, std::int32_t> edges_;
  std::vector<std::pair<std::int32_t, std::int32_t>> stack_;
};

}  // namespace

std::vector<Triangle> delaunay_triangulation(std::span<const Point2> points) {
  const std::size_t n = points.size();
  std::vector<std::int32_t> s(n);
  std::iota(s.begin(), s.end(), 0);
  std::sort(s.begin(), s.end(), [&](std::int32_t a, std::int32_t b) { return points[a] < points[b]; });
  for (std::size_t i = 1; i < n; ++i)
    if (points[s[i]] == points[s[i - 1]]) throw Error(ErrorCode::DuplicatePoint, "repeated point in triangulation input");

  std::size_t k = 2;
  while (k < n && orientation(points[s[0]], points[s[1]], points[s[k]]) == 0) ++k;
  if (k >= n) throw Error(ErrorCode::DegenerateTriangle, "all points are collinear");

  Builder b(points);
  const bool left = orientation(points[s[0]], points[s[1]], points[s[k]]) > 0;
  std::vector<std::int32_t> hull;  // counterclockwise
  for (std::size_t i = 0; i + 1 < k; ++i) {
    if (left) {
      b.add(s[i], s[i + 1], s[k]);
    } else {
      b.add(s[i + 1], s[i], s[k]);
    }
    b.check(s[i + 1], s[k]);
  }
  b.legalize();
  if (left) {
    hull.assign(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(k + 1));
  } else {
    hull.push_back(s[0]);
    for (std::size_t i = k + 1; i-- > 1;) hull.push_back(s[i]);
  }

  for (std::size_t i = k + 1; i < n; ++i) {
    const std::int32_t p = s[i];
    const std::size_t h = hull.size();
    auto visible = [&](std::size_t j) { return orientation(points[hull[j]], points[hull[(j + 1) % h]], points[p]) < 0; };
    std::size_t j0 = 0;
    while (j0 < h && !visible(j0)) ++j0;
    if (j0 == h) throw Error(ErrorCode::InternalInvariant, "sweep point sees no hull edge");
    while (visible((j0 + h - 1) % h)) j0 = (j0 + h - 1) % h;
    std::size_t count = 0;
    while (count < h && visible((j0 + count) % h)) {
      const std::int32_t a = hull[(j0 + count) % h], c = hull[(j0 + count + 1) % h];
      b.add(c, a, p);
      b.check(a, c);
      ++count;
    }
    std::vector<std::int32_t> next;
    next.reserve(h + 1);
    for (std::size_t t = 0; t < h - count + 1; ++t) next.push_back(hull[(j0 + count + t) % h]);
    next.push_back(p);
    hull.swap(next);
    b.legalize();
  }
  return b.take();
}

}  // namespace tsimp
