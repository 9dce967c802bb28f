#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>

#include "tsimp/error.hpp"
#include "tsimp/io.hpp"
#include "tsimp/persistence.hpp"
#include "tsimp/pipeline.hpp"

namespace tsimp {

namespace {

struct InputOptions {
  std::string path;
  std::string format;
  std::size_t subsample = 0;
  std::uint64_t subsample_seed = 1;

  void attach(CLI::App& cmd) {
    cmd.add_option("--input,-i", path, "Terrain file")->required();
    cmd.add_option("--format", format, "grid or mesh (default: .asc means grid)")
        ->check(CLI::IsMember({"grid", "mesh"}));
    cmd.add_option("--subsample", subsample, "Keep this many points and re-triangulate");
    cmd.add_option("--subsample-seed", subsample_seed, "Seed for --subsample");
  }

  Terrain load_terrain() const {
    FileFormat f = FileFormat::Mesh;
    if (format == "grid" || (format.empty() && path.size() >= 4 && path.substr(path.size() - 4) == ".asc"))
      f = FileFormat::Grid;
    std::optional<Subsample> how;
    if (subsample > 0) how = Subsample{subsample, subsample_seed};
    return load(std::filesystem::path(path), f, how);
  }
};

AwarenessBudget budget_from(const std::string& text) {
  if (text.empty() || text == "inf") return AwarenessBudget::infinite();
  return AwarenessBudget(parse_rational(text));
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path);
  return out;
}

int exit_code(ErrorCode c) {
  switch (c) {
    case ErrorCode::NonGenericEpsilon: return 3;
    case ErrorCode::InvalidEpsilon: return 1;
    default: return 2;
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Persistence-aware terrain simplification", "terrain-simplify"};
  app.require_subcommand(1);

  InputOptions input;
  std::string epsilon = "inf", strategy = "first-valid", output, report, timing;
  std::uint64_t seed = 1;
  bool no_improve = false, validate = false;

  auto* simplify = app.add_subcommand("simplify", "Simplify a terrain within an epsilon budget");
  input.attach(*simplify);
  simplify->add_option("--epsilon,-e", epsilon, "Height budget (rational or inf)");
  simplify->add_option("--seed", seed, "Random seed");
  simplify->add_option("--strategy", strategy, "Removal strategy")
      ->check(CLI::IsMember({"first-valid", "best-local", "global-best"}));
  simplify->add_flag("--no-improve", no_improve, "Skip the edge-flip improvement");
  simplify->add_flag("--validate", validate, "Recompute the diagram after every edit");
  simplify->add_option("--output,-o", output, "Output mesh file");
  simplify->add_option("--report", report, "Report CSV");
  simplify->add_option("--timing-series", timing, "Per-attempt timing CSV");

  auto* pers = app.add_subcommand("persistence", "Write the persistence diagram as CSV");
  input.attach(*pers);
  pers->add_option("--output,-o", output, "CSV file (default: standard output)");

  auto* stats = app.add_subcommand("stats", "Print sizes and critical vertex counts");
  input.attach(*stats);

  std::vector<std::string> epsilons;
  std::vector<std::uint64_t> seeds{1};
  auto* sweep = app.add_subcommand("sweep", "Simplify over a list of epsilon values");
  input.attach(*sweep);
  sweep->add_option("--epsilons", epsilons, "Epsilon values")->required();
  sweep->add_option("--seeds", seeds, "Seeds per epsilon");
  sweep->add_option("--strategy", strategy, "Removal strategy")
      ->check(CLI::IsMember({"first-valid", "best-local", "global-best"}));
  sweep->add_flag("--no-improve", no_improve, "Skip the edge-flip improvement");
  sweep->add_option("--output,-o", output, "CSV file (default: standard output)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }

  try {
    if (simplify->parsed()) {
      PipelineConfig cfg;
      cfg.budget = budget_from(epsilon);
      cfg.seed = seed;
      cfg.strategy = parse_strategy(strategy);
      cfg.run_improvement = !no_improve;
      cfg.validate = validate;
      const Terrain base = input.load_terrain();
      const auto [result, rep] = run_pipeline(base, cfg);
      if (!output.empty()) save(result, output);
      if (!report.empty()) {
        auto f = open_out(report);
        write_report_header(f);
        write_report_row(f, rep);
      } else {
        write_report_header(out);
        write_report_row(out, rep);
      }
      if (!timing.empty()) {
        auto f = open_out(timing);
        write_timing_csv(f, rep);
      }
    } else if (pers->parsed()) {
      const PersistenceDiagram d = persistence(input.load_terrain());
      if (output.empty()) {
        write_diagram_csv(out, d);
      } else {
        auto f = open_out(output);
        write_diagram_csv(f, d);
      }
    } else if (stats->parsed()) {
      const Terrain t = input.load_terrain();
      const CriticalCounts c = count_critical(t);
      out << "vertices,edges,faces,minima,maxima,saddles,saddle_weight,boundary\n"
          << t.num_vertices() << ',' << t.num_edges() << ',' << t.num_faces() << ',' << c.minima << ','
          << c.maxima << ',' << c.saddles << ',' << c.saddle_weight << ',' << c.boundary << '\n';
    } else if (sweep->parsed()) {
      const Terrain base = input.load_terrain();
      std::ofstream file;
      if (!output.empty()) file = open_out(output);
      std::ostream& csv = output.empty() ? out : file;
      csv << "epsilon,seed,I,S,C,O\n";
      for (const std::string& eps : epsilons) {
        for (std::uint64_t s : seeds) {
          PipelineConfig cfg;
          cfg.budget = budget_from(eps);
          cfg.seed = s;
          cfg.strategy = parse_strategy(strategy);
          cfg.run_improvement = !no_improve;
          const RunReport rep = run_pipeline(base, cfg).second;
          csv << rep.epsilon << ',' << s << ',' << rep.input_size << ',' << rep.blw_size << ',' << rep.critical << ','
              << rep.output_size << '\n';
        }
      }
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code(e.code());
  }
  return 0;
}

}  // namespace tsimp
