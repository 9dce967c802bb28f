#include "doctest.h"

#include <set>
#include <sstream>

#include "support.hpp"
#include "tsimp/error.hpp"
#include "tsimp/pipeline.hpp"

using namespace tsimp;

TEST_CASE("candidate set insert, erase and pick") {
  CandidateSet s(10);
  CHECK(s.insert(3));
  CHECK(s.insert(7));
  CHECK_FALSE(s.insert(3));
  CHECK(s.insert(5));
  CHECK(s.erase(3));
  CHECK_FALSE(s.erase(3));
  CHECK(s.size() == 2);
  CHECK(s.contains(5));
  CHECK_FALSE(s.contains(3));
  std::mt19937_64 rng(1);
  std::set<VertexId> seen;
  for (int i = 0; i < 100; ++i) seen.insert(s.pick(rng));
  CHECK(seen == std::set<VertexId>{5, 7});
}

TEST_CASE("strategy names round trip") {
  for (Strategy s : {Strategy::FirstValid, Strategy::BestLocalTriangulation, Strategy::GlobalBestVertex})
    CHECK(parse_strategy(to_string(s)) == s);
  CHECK_THROWS_AS(parse_strategy("fastest"), Error);
}

TEST_CASE("pipeline output keeps the bound and the wide pairs") {
  testing::Rng rng(51);
  for (int run = 0; run < 12; ++run) {
    const Terrain t = testing::random_terrain(rng, {.vertices = 60, .rim_high = true});
    Rational eps(40 + 3 * run, 1);
    while (true) {
      try {
        check_generic_epsilon(t, eps);
        break;
      } catch (const Error&) {
        eps += Rational(1, 1000);
      }
    }
    PipelineConfig cfg;
    cfg.budget = AwarenessBudget(eps);
    cfg.seed = static_cast<std::uint64_t>(run);
    cfg.strategy = static_cast<Strategy>(run % 3);
    const auto [out, report] = run_pipeline(t, cfg);
    CHECK_NOTHROW(out.validate_structure());
    CHECK(report.input_size == t.num_vertices());
    CHECK(report.output_size == out.num_vertices());
    CHECK(report.output_size <= report.blw_size);
    CHECK(linf_distance(t, out) <= eps);
    const std::size_t want = min_critical_count(persistence(t), eps);
    CHECK(report.critical == want);
    CHECK(static_cast<std::size_t>(count_critical(out).interior_total()) == want);
  }
}

TEST_CASE("validate mode agrees with the default run") {
  testing::Rng rng(52);
  const Terrain t = testing::random_terrain(rng, {.vertices = 30});
  PipelineConfig cfg;
  cfg.budget = AwarenessBudget::infinite();
  const auto [a, ra] = run_pipeline(t, cfg);
  cfg.validate = true;
  const auto [b, rb] = run_pipeline(t, cfg);
  CHECK(a.points().size() == b.points().size());
  CHECK(a.triangles() == b.triangles());
}

TEST_CASE("report CSV layout") {
  RunReport r;
  r.input_size = 10;
  r.blw_size = 12;
  r.critical = 3;
  r.output_size = 5;
  r.flips = 2;
  r.seed = 9;
  r.epsilon = "5/2";
  r.strategy = Strategy::BestLocalTriangulation;
  r.attempts = {{15, true}, {4, false}};
  std::ostringstream head, row, timing;
  write_report_header(head);
  CHECK(head.str() == "I,S,C,O,T,flips,seed,epsilon,strategy\n");
  write_report_row(row, r);
  CHECK(row.str().rfind("10,12,3,5,", 0) == 0);
  CHECK(row.str().find(",2,9,5/2,best-local\n") != std::string::npos);
  write_timing_csv(timing, r);
  CHECK(timing.str() == "attempt,microseconds,success\n0,15,1\n1,4,0\n");
}
