#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "iqbf/engine.hpp"
#include "iqbf/formula.hpp"

namespace iqbf {

enum class BenchDirection { Forward, Reverse };

inline const char* direction_name(BenchDirection d) { return d == BenchDirection::Forward ? "forward" : "reverse"; }

struct BenchOptions {
  std::size_t slices = 10;
  bool keep = true;     // run with learned constraints retained
  bool discard = true;  // run with learned constraints wiped before each solve
  bool forward = true;
  bool reverse = true;
  EngineOptions engine;
  double timeout_s = 0.0;  // per solve call, 0 = none
};

struct StepResult {
  Verdict verdict = Verdict::Unknown;
  std::uint64_t assignments = 0;
  std::uint64_t backtracks = 0;
  double time_s = 0.0;
};

/// Solving one instance as a sequence: the forward steps add one slice of
/// clauses per frame, the reverse steps then pop the frames again.
struct SequenceRun {
  std::vector<StepResult> forward;
  std::vector<StepResult> reverse;
};

/// Clause slices in input order; the last slice absorbs the remainder.
std::vector<std::vector<Clause>> slice_clauses(const std::vector<Clause>& clauses, std::size_t slices);

SequenceRun run_sequence(const Pcnf& f, std::size_t slices, bool keep_learned, const EngineOptions& options,
                         double timeout_s = 0.0);

struct Totals {
  std::uint64_t assignments = 0;
  std::uint64_t backtracks = 0;
  double time_s = 0.0;
};

Totals totals(const std::vector<StepResult>& steps);

struct InstanceResult {
  std::string name;
  SequenceRun keep;
  SequenceRun discard;
};

struct ModeSummary {
  double mean_assignments = 0, median_assignments = 0;
  double mean_backtracks = 0, median_backtracks = 0;
  double mean_time_s = 0, median_time_s = 0;
  std::uint64_t total_assignments = 0, total_backtracks = 0;
  double total_time_s = 0;
};

struct DirectionSummary {
  BenchDirection direction = BenchDirection::Forward;
  ModeSummary keep;
  ModeSummary discard;
};

struct BenchReport {
  std::size_t slices = 0;
  bool keep = false, discard = false;
  std::vector<InstanceResult> instances;
  std::vector<DirectionSummary> directions;
  std::size_t verdict_mismatches = 0;  // steps where keep and discard disagree
  std::size_t unknown_steps = 0;       // timeouts
};

struct NamedFormula {
  std::string name;
  Pcnf formula;
};

BenchReport run_bench(const std::vector<NamedFormula>& instances, const BenchOptions& options);

/// (keep - discard) / discard * 100, or 0 when both are 0.
double percent_difference(double keep, double discard);

/// Mean/median assignments, backtracks and time per mode with the
/// relative difference column.
void print_bench_table(std::ostream& out, const BenchReport& report);

}  // namespace iqbf
