#include "iqbf/bench.hpp"

#include <algorithm>
#include <iomanip>
#include <limits>
#include <ostream>

#include "iqbf/solver.hpp"

namespace iqbf {
namespace {

StepResult run_step(Solver& s, double timeout_s) {
  StepResult r;
  r.verdict = s.solve(timeout_s);
  r.assignments = s.stats().assignments;
  r.backtracks = s.stats().backtracks;
  r.time_s = s.stats().wall_time_s;
  return r;
}

double mean(std::vector<double> v) {
  if (v.empty()) return 0;
  double sum = 0;
  for (double x : v) sum += x;
  return sum / static_cast<double>(v.size());
}

double median(std::vector<double> v) {
  if (v.empty()) return 0;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2;
}

ModeSummary summarize(const std::vector<Totals>& per_instance) {
  ModeSummary m;
  std::vector<double> a, b, t;
  for (const Totals& x : per_instance) {
    a.push_back(static_cast<double>(x.assignments));
    b.push_back(static_cast<double>(x.backtracks));
    t.push_back(x.time_s);
    m.total_assignments += x.assignments;
    m.total_backtracks += x.backtracks;
    m.total_time_s += x.time_s;
  }
  m.mean_assignments = mean(a);
  m.median_assignments = median(a);
  m.mean_backtracks = mean(b);
  m.median_backtracks = median(b);
  m.mean_time_s = mean(t);
  m.median_time_s = median(t);
  return m;
}

}  // namespace

std::vector<std::vector<Clause>> slice_clauses(const std::vector<Clause>& clauses, std::size_t slices) {
  if (slices < 1) throw UsageError("number of slices must be at least 1");
  std::vector<std::vector<Clause>> out(slices);
  const std::size_t per = clauses.size() / slices;
  for (std::size_t i = 0; i < slices; ++i) {
    const auto first = clauses.begin() + static_cast<std::ptrdiff_t>(i * per);
    const auto last = i + 1 == slices ? clauses.end() : first + static_cast<std::ptrdiff_t>(per);
    out[i].assign(first, last);
  }
  return out;
}

SequenceRun run_sequence(const Pcnf& f, std::size_t slices, bool keep_learned, const EngineOptions& options,
                         double timeout_s) {
  const auto parts = slice_clauses(f.clauses, slices);
  EngineOptions opts = options;
  opts.keep_learned = keep_learned;
  Solver s(opts);
  s.add_prefix(f.prefix);
  SequenceRun run;
  for (const auto& part : parts) {
    s.push();
    for (const Clause& c : part) s.add_clause(c);
    run.forward.push_back(run_step(s, timeout_s));
  }
  for (std::size_t i = 1; i < parts.size(); ++i) {
    s.pop();
    run.reverse.push_back(run_step(s, timeout_s));
  }
  return run;
}

Totals totals(const std::vector<StepResult>& steps) {
  Totals t;
  for (const StepResult& s : steps) {
    t.assignments += s.assignments;
    t.backtracks += s.backtracks;
    t.time_s += s.time_s;
  }
  return t;
}

double percent_difference(double keep, double discard) {
  if (discard == 0) return keep == 0 ? 0.0 : std::numeric_limits<double>::infinity();
  return (keep - discard) / discard * 100.0;
}

BenchReport run_bench(const std::vector<NamedFormula>& instances, const BenchOptions& options) {
  if (options.slices < 1) throw UsageError("number of slices must be at least 1");
  BenchReport report;
  report.slices = options.slices;
  report.keep = options.keep;
  report.discard = options.discard;
  for (const NamedFormula& nf : instances) {
    InstanceResult r;
    r.name = nf.name;
    if (options.keep) r.keep = run_sequence(nf.formula, options.slices, true, options.engine, options.timeout_s);
    if (options.discard)
      r.discard = run_sequence(nf.formula, options.slices, false, options.engine, options.timeout_s);
    for (const SequenceRun* run : {&r.keep, &r.discard})
      for (const auto* steps : {&run->forward, &run->reverse})
        for (const StepResult& st : *steps)
          if (st.verdict == Verdict::Unknown) ++report.unknown_steps;
    if (options.keep && options.discard) {
      auto compare = [&](const std::vector<StepResult>& a, const std::vector<StepResult>& b) {
        for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i)
          if (a[i].verdict != Verdict::Unknown && b[i].verdict != Verdict::Unknown && a[i].verdict != b[i].verdict)
            ++report.verdict_mismatches;
      };
      compare(r.keep.forward, r.discard.forward);
      compare(r.keep.reverse, r.discard.reverse);
    }
    report.instances.push_back(std::move(r));
  }
  for (BenchDirection d : {BenchDirection::Forward, BenchDirection::Reverse}) {
    if ((d == BenchDirection::Forward && !options.forward) || (d == BenchDirection::Reverse && !options.reverse))
      continue;
    std::vector<Totals> keep, discard;
    for (const InstanceResult& r : report.instances) {
      keep.push_back(totals(d == BenchDirection::Forward ? r.keep.forward : r.keep.reverse));
      discard.push_back(totals(d == BenchDirection::Forward ? r.discard.forward : r.discard.reverse));
    }
    report.directions.push_back(DirectionSummary{d, summarize(keep), summarize(discard)});
  }
  return report;
}

void print_bench_table(std::ostream& out, const BenchReport& report) {
  const auto flags = out.flags();
  out << "instances: " << report.instances.size() << ", slices: " << report.slices << '\n';
  for (const DirectionSummary& d : report.directions) {
    out << '\n' << direction_name(d.direction) << '\n';
    out << std::left << std::setw(8) << "" << std::right << std::setw(14) << "keep-LC" << std::setw(14) << "discard-LC"
        << std::setw(12) << "diff %" << '\n';
    auto row = [&](const char* name, double k, double dc, int precision) {
      out << std::left << std::setw(8) << name << std::right << std::fixed << std::setprecision(precision)
          << std::setw(14) << k << std::setw(14) << dc;
      if (report.keep && report.discard)
        out << std::setw(12) << std::setprecision(2) << percent_difference(k, dc);
      out << '\n';
    };
    row("a mean", d.keep.mean_assignments, d.discard.mean_assignments, 1);
    row("a med", d.keep.median_assignments, d.discard.median_assignments, 1);
    row("b mean", d.keep.mean_backtracks, d.discard.mean_backtracks, 1);
    row("b med", d.keep.median_backtracks, d.discard.median_backtracks, 1);
    row("t mean", d.keep.mean_time_s, d.discard.mean_time_s, 4);
    row("t med", d.keep.median_time_s, d.discard.median_time_s, 4);
    row("b total", static_cast<double>(d.keep.total_backtracks), static_cast<double>(d.discard.total_backtracks), 0);
  }
  if (report.keep && report.discard) out << "\nverdict mismatches: " << report.verdict_mismatches << '\n';
  if (report.unknown_steps > 0) out << "timed out steps: " << report.unknown_steps << '\n';
  out.flags(flags);
}

}  // namespace iqbf
