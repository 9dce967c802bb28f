#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "tsimp/blw.hpp"
#include "tsimp/geometry_queries.hpp"
#include "tsimp/terrain.hpp"

namespace tsimp {

enum class Strategy { FirstValid, BestLocalTriangulation, GlobalBestVertex };

std::string to_string(Strategy s);
/// Accepts "first-valid", "best-local" and "global-best". Throws ParseError.
Strategy parse_strategy(const std::string& name);

struct PipelineConfig {
  AwarenessBudget budget;  ///< infinite by default
  std::uint64_t seed = 1;
  Strategy strategy = Strategy::FirstValid;
  bool run_improvement = true;
  bool validate = false;  ///< recompute the diagram after every edit
  SubdivisionMode subdivision = SubdivisionMode::Sparse;
};

/// Vertex ids with constant-time insert, erase and uniform pick.
class CandidateSet {
 public:
  explicit CandidateSet(std::size_t capacity = 0) : slot_(capacity, kAbsent) {}

  bool contains(VertexId v) const { return static_cast<std::size_t>(v) < slot_.size() && slot_[v] != kAbsent; }
  bool insert(VertexId v);
  bool erase(VertexId v);
  VertexId pick(std::mt19937_64& rng) const;
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  const std::vector<VertexId>& items() const { return items_; }

 private:
  static constexpr std::size_t kAbsent = static_cast<std::size_t>(-1);
  std::vector<VertexId> items_;
  std::vector<std::size_t> slot_;
};

struct Attempt {
  std::uint64_t microseconds = 0;
  bool success = false;
};

struct RunReport {
  std::size_t input_size = 0;     ///< I
  std::size_t blw_size = 0;       ///< S
  std::size_t critical = 0;       ///< C
  std::size_t output_size = 0;    ///< O
  double seconds = 0;             ///< T
  double blw_seconds = 0;
  double realize_seconds = 0;
  double reduce_seconds = 0;
  double improve_seconds = 0;
  std::size_t subdivision_edges = 0;
  std::size_t subdivision_faces = 0;
  std::vector<Attempt> attempts;
  std::size_t flips = 0;
  std::uint64_t seed = 0;
  std::string epsilon;  ///< "inf" for an unbounded budget
  Strategy strategy = Strategy::FirstValid;
};

/// Greedy vertex removal on work. Appends one entry per removability test to attempts if given.
Terrain reduce(const Terrain& base, Terrain work, const PipelineConfig& cfg, std::vector<Attempt>* attempts = nullptr);

/// Greedy min-angle edge flips that keep the diagram and the epsilon bound.
Terrain improve_mesh(const Terrain& base, Terrain work, const PipelineConfig& cfg, std::size_t* flips = nullptr);

std::pair<Terrain, RunReport> run_pipeline(const Terrain& base, const PipelineConfig& cfg);

void write_report_header(std::ostream& out);
void write_report_row(std::ostream& out, const RunReport& r);
void write_timing_csv(std::ostream& out, const RunReport& r);

}  // namespace tsimp
