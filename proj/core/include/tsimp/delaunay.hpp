#pragma once

#include <span>
#include <vector>

#include "tsimp/predicates.hpp"
#include "tsimp/terrain.hpp"

namespace tsimp {

/// Delaunay triangulation of distinct points, counterclockwise triangles over
/// input indices. Cocircular ties are broken arbitrarily but deterministically.
/// Throws DegenerateTriangle if all points are collinear, DuplicatePoint on repeats.
std::vector<Triangle> delaunay_triangulation(std::span<const Point2> points);

}  // namespace tsimp
