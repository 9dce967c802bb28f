#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

#include "tsimp/terrain.hpp"

namespace tsimp {

enum class FileFormat { Grid, Mesh };

struct Subsample {
  std::size_t count = 0;
  std::uint64_t seed = 1;
};

struct PointCloud {
  std::vector<TerrainPoint> points;
  std::vector<Triangle> triangles;
};

/// ESRI ASCII grid. Each cell is split along its SW-NE diagonal. Cells holding
/// the nodata value are rejected. Throws ParseError with a line number.
PointCloud read_grid(std::istream& in);

/// "OFF" (optional), then "V F [E]", V lines "x y height", F lines "3 i j k".
/// Throws ParseError with a line number.
PointCloud read_mesh(std::istream& in);

/// Keeps the convex-hull corners plus uniformly chosen points, `count` in total
/// when possible, and triangulates them with Delaunay.
PointCloud subsample(const PointCloud& cloud, const Subsample& how);

Terrain load(std::istream& in, FileFormat format, const std::optional<Subsample>& how = std::nullopt);
/// Throws IoError if the file cannot be opened.
Terrain load(const std::filesystem::path& path, FileFormat format, const std::optional<Subsample>& how = std::nullopt);

/// Writes live vertices and faces with exact rationals.
void save_mesh(std::ostream& out, const Terrain& t);
/// Throws IoError.
void save(const Terrain& t, const std::filesystem::path& path);

}  // namespace tsimp
