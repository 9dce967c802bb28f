#include "tsimp/pipeline.hpp"

#include <cmath>
#include <deque>
#include <optional>
#include <ostream>
#include <queue>
#include <tuple>

#include "tsimp/error.hpp"
#include "tsimp/local_ops.hpp"
#include "tsimp/persistence.hpp"

namespace tsimp {

std::string to_string(Strategy s) {
  switch (s) {
    case Strategy::FirstValid: return "first-valid";
    case Strategy::BestLocalTriangulation: return "best-local";
    case Strategy::GlobalBestVertex: return "global-best";
  }
  return "?";
}

Strategy parse_strategy(const std::string& name) {
  for (Strategy s : {Strategy::FirstValid, Strategy::BestLocalTriangulation, Strategy::GlobalBestVertex})
    if (to_string(s) == name) return s;
  throw Error(ErrorCode::ParseError, "unknown strategy '" + name + "'");
}

bool CandidateSet::insert(VertexId v) {
  if (static_cast<std::size_t>(v) >= slot_.size()) slot_.resize(static_cast<std::size_t>(v) + 1, kAbsent);
  if (slot_[v] != kAbsent) return false;
  slot_[v] = items_.size();
  items_.push_back(v);
  return true;
}

bool CandidateSet::erase(VertexId v) {
  if (!contains(v)) return false;
  const std::size_t i = slot_[v];
  items_[i] = items_.back();
  slot_[items_[i]] = i;
  items_.pop_back();
  slot_[v] = kAbsent;
  return true;
}

VertexId CandidateSet::pick(std::mt19937_64& rng) const {
  std::uniform_int_distribution<std::size_t> d(0, items_.size() - 1);
  return items_[d(rng)];
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

bool removable_kind(const Terrain& t, VertexId v) {
  return t.vertex_alive(v) && !t.is_boundary_vertex(v) && classify(t, v).kind == Criticality::Kind::Regular;
}

class Validator {
 public:
  Validator(const Terrain& t, bool on) : on_(on) {
    if (on_) target_ = persistence(t);
  }
  void check(const Terrain& t, const char* step) const {
    if (on_ && !diagrams_equal(target_, persistence(t)))
      throw Error(ErrorCode::InternalInvariant, std::string("diagram changed after ") + step);
  }

 private:
  bool on_;
  PersistenceDiagram target_;
};

}  // namespace

Terrain reduce(const Terrain& base, Terrain work, const PipelineConfig& cfg, std::vector<Attempt>* attempts) {
  const BaseIndex index(base, cfg.seed);
  DeviationCache cache;
  const Validator validator(work, cfg.validate);
  const LinkMode mode = cfg.strategy == Strategy::FirstValid ? LinkMode::FirstValid : LinkMode::BestLinf;

  auto test = [&](VertexId v) -> std::optional<LinkTriangulation> {
    const auto start = Clock::now();
    std::optional<LinkTriangulation> lt;
    if (removable_kind(work, v)) lt = find_link_triangulation(work, index, v, cfg.budget, mode, &cache);
    if (attempts) {
      const auto us = std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - start).count();
      attempts->push_back({static_cast<std::uint64_t>(us), lt.has_value()});
    }
    return lt;
  };

  if (cfg.strategy != Strategy::GlobalBestVertex) {
    std::mt19937_64 rng(cfg.seed);
    CandidateSet candidates(work.vertex_capacity());
    for (VertexId v : work.vertex_ids())
      if (!work.is_boundary_vertex(v)) candidates.insert(v);
    while (!candidates.empty()) {
      const VertexId v = candidates.pick(rng);
      candidates.erase(v);
      const auto lt = test(v);
      if (!lt) continue;
      const std::vector<VertexId> ring = work.neighbors(v);
      remove_vertex(work, v, lt->diagonals);
      validator.check(work, "a vertex removal");
      for (VertexId u : ring)
        if (!work.is_boundary_vertex(u)) candidates.insert(u);
    }
    return work;
  }

  // Global best: always remove the candidate whose best link triangulation deviates least.
  using Entry = std::tuple<Rational, VertexId, std::uint32_t>;
  auto later = [](const Entry& a, const Entry& b) {
    const int c = cmp(std::get<0>(a), std::get<0>(b));
    return c != 0 ? c > 0 : std::get<1>(a) > std::get<1>(b);
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(later)> heap(later);
  std::vector<std::uint32_t> version(work.vertex_capacity(), 0);
  std::vector<std::optional<LinkTriangulation>> best(work.vertex_capacity());
  auto evaluate = [&](VertexId v) {
    ++version[v];
    best[v] = test(v);
    if (best[v]) heap.emplace(best[v]->deviation, v, version[v]);
  };
  for (VertexId v : work.vertex_ids())
    if (!work.is_boundary_vertex(v)) evaluate(v);
  while (!heap.empty()) {
    const auto [dev, v, ver] = heap.top();
    heap.pop();
    if (ver != version[v] || !best[v] || !work.vertex_alive(v)) continue;
    const std::vector<VertexId> ring = work.neighbors(v);
    remove_vertex(work, v, best[v]->diagonals);
    best[v].reset();
    ++version[v];
    validator.check(work, "a vertex removal");
    for (VertexId u : ring)
      if (!work.is_boundary_vertex(u)) evaluate(u);
  }
  return work;
}

namespace {

double angle_at(const Point2& p, const Point2& q, const Point2& r) {
  const double ux = q.fx - p.fx, uy = q.fy - p.fy, vx = r.fx - p.fx, vy = r.fy - p.fy;
  return std::atan2(std::abs(ux * vy - uy * vx), ux * vx + uy * vy);
}

double min_angle(const Point2& a, const Point2& b, const Point2& c) {
  return std::min({angle_at(a, b, c), angle_at(b, c, a), angle_at(c, a, b)});
}

}  // namespace

Terrain improve_mesh(const Terrain& base, Terrain work, const PipelineConfig& cfg, std::size_t* flips) {
  const BaseIndex index(base, cfg.seed);
  const Validator validator(work, cfg.validate);
  std::deque<EdgeId> queue;
  std::vector<char> queued(work.edge_capacity(), 0);
  auto push = [&](EdgeId e) {
    if (!queued[e] && !work.is_boundary_edge(e)) {
      queued[e] = 1;
      queue.push_back(e);
    }
  };
  for (EdgeId e : work.edge_ids()) push(e);
  std::size_t done = 0;
  while (!queue.empty()) {
    const EdgeId e = queue.front();
    queue.pop_front();
    queued[e] = 0;
    if (!order_flippable(work, e) || !geometrically_flippable(work, e)) continue;
    const HalfedgeId h = Terrain::halfedge_of(e);
    const VertexId a = work.origin(h), b = work.target(h);
    const VertexId c = work.origin(work.prev(h)), d = work.origin(work.prev(Terrain::twin(h)));
    const Point2 &pa = work.position(a), &pb = work.position(b), &pc = work.position(c), &pd = work.position(d);
    const double before = std::min(min_angle(pa, pb, pc), min_angle(pb, pa, pd));
    const double after = std::min(min_angle(pa, pd, pc), min_angle(pd, pb, pc));
    if (!(after > before + 1e-12)) continue;
    const LiftedPoint la{&pa, &work.height(a)}, lb{&pb, &work.height(b)}, lc{&pc, &work.height(c)},
        ld{&pd, &work.height(d)};
    if (!segment_linf_aware(index, lc, ld, cfg.budget)) continue;
    if (!triangle_linf_aware(index, la, ld, lc, cfg.budget) || !triangle_linf_aware(index, ld, lb, lc, cfg.budget))
      continue;
    const EdgeId quad[4] = {work.edge_of(work.next(h)), work.edge_of(work.prev(h)),
                            work.edge_of(work.next(Terrain::twin(h))), work.edge_of(work.prev(Terrain::twin(h)))};
    flip_edge(work, e);
    ++done;
    validator.check(work, "an edge flip");
    for (EdgeId q : quad) push(q);
  }
  if (flips) *flips = done;
  return work;
}

std::pair<Terrain, RunReport> run_pipeline(const Terrain& base, const PipelineConfig& cfg) {
  RunReport r;
  r.seed = cfg.seed;
  r.strategy = cfg.strategy;
  r.epsilon = cfg.budget.is_infinite() ? "inf" : to_string(cfg.budget.epsilon());
  r.input_size = base.num_vertices();
  const auto start = Clock::now();

  auto t0 = Clock::now();
  const BlwResult blw = blw_simplify(base, cfg.budget);
  r.blw_seconds = seconds_since(t0);

  t0 = Clock::now();
  const SubdivisionPlan plan = plan_subdivision(base, blw, cfg.budget, cfg.subdivision);
  Terrain work = realize(base, blw, plan, cfg.budget);
  r.realize_seconds = seconds_since(t0);
  r.subdivision_edges = plan.edges_split;
  r.subdivision_faces = plan.faces_split;
  r.blw_size = work.num_vertices();

  t0 = Clock::now();
  work = reduce(base, std::move(work), cfg, &r.attempts);
  r.reduce_seconds = seconds_since(t0);

  if (cfg.run_improvement) {
    t0 = Clock::now();
    work = improve_mesh(base, std::move(work), cfg, &r.flips);
    r.improve_seconds = seconds_since(t0);
  }
  work = work.compacted();
  r.output_size = work.num_vertices();
  const PersistenceDiagram d = persistence(base);
  r.critical = cfg.budget.is_infinite() ? d.num_essential() : min_critical_count(d, cfg.budget.epsilon());
  r.seconds = seconds_since(start);
  return {std::move(work), std::move(r)};
}

void write_report_header(std::ostream& out) { out << "I,S,C,O,T,flips,seed,epsilon,strategy\n"; }

void write_report_row(std::ostream& out, const RunReport& r) {
  out << r.input_size << ',' << r.blw_size << ',' << r.critical << ',' << r.output_size << ',' << r.seconds << ','
      << r.flips << ',' << r.seed << ',' << r.epsilon << ',' << to_string(r.strategy) << '\n';
}

void write_timing_csv(std::ostream& out, const RunReport& r) {
  out << "attempt,microseconds,success\n";
  for (std::size_t i = 0; i < r.attempts.size(); ++i)
    out << i << ',' << r.attempts[i].microseconds << ',' << (r.attempts[i].success ? 1 : 0) << '\n';
}

}  // namespace tsimp
