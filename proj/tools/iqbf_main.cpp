// iqbf: one-shot solving, incremental scripts and the slicing benchmark.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "iqbf/bench.hpp"
#include "iqbf/qdimacs.hpp"
#include "iqbf/script.hpp"
#include "iqbf/solver.hpp"

namespace fs = std::filesystem;
using namespace iqbf;

namespace {

constexpr int kExitSat = 10;
constexpr int kExitUnsat = 20;
constexpr int kExitError = 1;

int run_solve(const std::string& path, const EngineOptions& options, double timeout_s) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "iqbf: cannot open " << path << '\n';
    return kExitError;
  }
  const QdimacsDocument doc = parse_qdimacs_document(in);
  for (const std::string& w : doc.warnings) std::cerr << "iqbf: warning: " << w << '\n';
  Solver solver(doc.formula, options);
  const Verdict v = solver.solve(timeout_s);
  const SolveStats& s = solver.stats();
  std::cout << "c assignments " << s.assignments << " backtracks " << s.backtracks << " decisions " << s.decisions
            << " time " << s.wall_time_s << "s\n";
  std::cout << "s cnf " << verdict_name(v) << '\n';
  if (v == Verdict::Sat) return kExitSat;
  if (v == Verdict::Unsat) return kExitUnsat;
  return 0;
}

int run_script_file(const std::string& path, const EngineOptions& options) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "iqbf: cannot open " << path << '\n';
    return kExitError;
  }
  const ScriptResult r = run_script(in, std::cout, options);
  std::cout << "c " << r.verdicts.size() << " solve calls\n";
  return 0;
}

std::vector<NamedFormula> load_instances(const std::vector<std::string>& paths) {
  std::vector<std::string> files;
  for (const std::string& p : paths) {
    if (fs::is_directory(p)) {
      for (const auto& e : fs::directory_iterator(p))
        if (e.is_regular_file() && (e.path().extension() == ".qdimacs" || e.path().extension() == ".cnf"))
          files.push_back(e.path().string());
    } else {
      files.push_back(p);
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<NamedFormula> out;
  for (const std::string& f : files) out.push_back({fs::path(f).filename().string(), read_qdimacs_file(f)});
  return out;
}

nlohmann::json report_json(const BenchReport& r) {
  nlohmann::json j;
  j["slices"] = r.slices;
  j["instances"] = r.instances.size();
  j["verdict_mismatches"] = r.verdict_mismatches;
  j["unknown_steps"] = r.unknown_steps;
  for (const DirectionSummary& d : r.directions) {
    const std::string dir = direction_name(d.direction);
    auto put = [&](const std::string& mode, const ModeSummary& m) {
      const std::string p = dir + "_" + mode + "_";
      j[p + "mean_assignments"] = m.mean_assignments;
      j[p + "median_assignments"] = m.median_assignments;
      j[p + "mean_backtracks"] = m.mean_backtracks;
      j[p + "median_backtracks"] = m.median_backtracks;
      j[p + "mean_time_s"] = m.mean_time_s;
      j[p + "median_time_s"] = m.median_time_s;
      j[p + "total_assignments"] = m.total_assignments;
      j[p + "total_backtracks"] = m.total_backtracks;
      j[p + "total_time_s"] = m.total_time_s;
    };
    if (r.keep) put("keep", d.keep);
    if (r.discard) put("discard", d.discard);
    if (r.keep && r.discard) {
      const std::string p = dir + "_diff_pct_";
      j[p + "mean_assignments"] = percent_difference(d.keep.mean_assignments, d.discard.mean_assignments);
      j[p + "median_assignments"] = percent_difference(d.keep.median_assignments, d.discard.median_assignments);
      j[p + "mean_backtracks"] = percent_difference(d.keep.mean_backtracks, d.discard.mean_backtracks);
      j[p + "median_backtracks"] = percent_difference(d.keep.median_backtracks, d.discard.median_backtracks);
      j[p + "mean_time_s"] = percent_difference(d.keep.mean_time_s, d.discard.mean_time_s);
      j[p + "median_time_s"] = percent_difference(d.keep.median_time_s, d.discard.median_time_s);
    }
  }
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"iqbf - incremental QCDCL solver for QBF in prenex CNF"};
  app.require_subcommand(1);

  std::uint64_t seed = 0;
  double timeout_s = 0;

  std::string solve_path;
  auto* solve = app.add_subcommand("solve", "Solve a QDIMACS file (exit 10 = SAT, 20 = UNSAT)");
  solve->add_option("--seed", seed, "Seed for initial variable activities (0 = fixed order)");
  solve->add_option("file", solve_path, "QDIMACS input")->required();
  solve->add_option("--timeout-s", timeout_s, "Time limit in seconds (0 = none)");

  std::string script_path;
  bool script_discard = false;
  auto* script = app.add_subcommand("script", "Run an incremental push/pop script");
  script->add_option("--seed", seed, "Seed for initial variable activities (0 = fixed order)");
  script->add_option("file", script_path, "Script file")->required();
  script->add_flag("--discard", script_discard, "Wipe learned constraints before every solve call");

  std::vector<std::string> bench_paths;
  std::size_t slices = 10;
  std::string mode = "both", direction = "both", json_path;
  auto* bench = app.add_subcommand("bench", "Slicing benchmark comparing kept and discarded learned constraints");
  bench->add_option("--seed", seed, "Seed for initial variable activities (0 = fixed order)");
  bench->add_option("files", bench_paths, "QDIMACS files or directories")->required();
  bench->add_option("--slices", slices, "Number of clause slices")->check(CLI::PositiveNumber);
  bench->add_option("--mode", mode, "keep, discard or both")->check(CLI::IsMember({"keep", "discard", "both"}));
  bench->add_option("--direction", direction, "forward, reverse or both")
      ->check(CLI::IsMember({"forward", "reverse", "both"}));
  bench->add_option("--timeout-s", timeout_s, "Time limit per solve call in seconds (0 = none)");
  bench->add_option("--stats-json", json_path, "Write the aggregate report as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  EngineOptions options;
  options.seed = seed;
  try {
    if (*solve) return run_solve(solve_path, options, timeout_s);
    if (*script) {
      options.keep_learned = !script_discard;
      return run_script_file(script_path, options);
    }
    BenchOptions bo;
    bo.slices = slices;
    bo.keep = mode != "discard";
    bo.discard = mode != "keep";
    bo.forward = direction != "reverse";
    bo.reverse = direction != "forward";
    bo.engine = options;
    bo.timeout_s = timeout_s;
    const BenchReport report = run_bench(load_instances(bench_paths), bo);
    print_bench_table(std::cout, report);
    if (!json_path.empty()) {
      std::ofstream out(json_path);
      if (!out) throw std::runtime_error("cannot write " + json_path);
      out << report_json(report).dump(2) << '\n';
    }
    return report.verdict_mismatches == 0 ? 0 : kExitError;
  } catch (const std::exception& e) {
    std::cerr << "iqbf: " << e.what() << '\n';
    return kExitError;
  }
}
