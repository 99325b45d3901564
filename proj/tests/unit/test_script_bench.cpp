#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "iqbf/bench.hpp"
#include "iqbf/oracle.hpp"
#include "iqbf/qdimacs.hpp"
#include "iqbf/script.hpp"
#include "support.hpp"

using namespace iqbf;
using namespace iqbf::testing;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t script_error_line(const std::string& text) {
  std::istringstream in(text);
  std::ostringstream log;
  try {
    run_script(in, log);
  } catch (const ScriptError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST(Script, ExampleSequencePasses) {
  std::istringstream in(read_file(IQBF_TEST_DATA "/example_sequence.script"));
  std::ostringstream log;
  const ScriptResult r = run_script(in, log);
  EXPECT_EQ(r.verdicts,
            (std::vector<Verdict>{Verdict::Sat, Verdict::Unsat, Verdict::Sat, Verdict::Sat}));
  EXPECT_NE(log.str().find("assignments="), std::string::npos);
}

TEST(Script, ErrorsHaveLineNumbers) {
  EXPECT_EQ(script_error_line("e 1 0\nadd 1 0\nsolve\npop\n"), 4u);
  EXPECT_EQ(script_error_line("add 1 0\nadd -1 0\nsolve\nexpect sat\n"), 4u);
  EXPECT_EQ(script_error_line("frobnicate\n"), 1u);
  EXPECT_EQ(script_error_line("add 1 2\n"), 1u);
  EXPECT_EQ(script_error_line("e 1 0\na 2 0\nadd 1 2 0\nassume 2\n"), 4u);
  EXPECT_EQ(script_error_line("expect sat\n"), 1u);
  EXPECT_EQ(script_error_line("c comment\n\nexpect maybe\n"), 3u);
  EXPECT_EQ(script_error_line("e 1 0\ne 1 0\n"), 2u);
}

TEST(Script, RandomScriptsAgainstOracle) {
  Rng rng(89);
  for (int it = 0; it < 200; ++it) {
    const std::size_t vars = 2 + rng() % 6;
    const Prefix p = random_prefix(rng, vars, 1 + rng() % 3);
    std::ostringstream script;
    for (const Block& b : p.blocks()) {
      script << quantifier_char(b.quantifier);
      for (Var v : b.vars) script << ' ' << v;
      script << " 0\n";
    }
    ShadowStack shadow(p);
    std::vector<Verdict> expected;
    for (int k = 0; k < 20; ++k) {
      const unsigned r = rng() % 8;
      if (r == 0) {
        script << "push\n";
        shadow.push();
      } else if (r == 1 && shadow.depth() > 0) {
        script << "pop\n";
        shadow.pop();
      } else if (r < 6) {
        const Clause c = random_clause(rng, vars, 3);
        script << "add";
        for (Literal l : c) script << ' ' << l;
        script << " 0\n";
        shadow.add(c);
      } else {
        script << "solve\n";
        expected.push_back(oracle_eval(shadow.formula()));
      }
    }
    std::istringstream in(script.str());
    std::ostringstream log;
    EXPECT_EQ(run_script(in, log).verdicts, expected) << script.str();
  }
}

TEST(Bench, SlicesPreserveOrderAndAbsorbRemainder) {
  const auto c = clause_list({{1}, {2}, {3}, {4}, {5}, {6}, {7}});
  const auto s = slice_clauses(c, 3);
  ASSERT_EQ(s.size(), 3u);
  EXPECT_EQ(s[0], clause_list({{1}, {2}}));
  EXPECT_EQ(s[1], clause_list({{3}, {4}}));
  EXPECT_EQ(s[2], clause_list({{5}, {6}, {7}}));
  EXPECT_THROW(slice_clauses(c, 0), UsageError);
  const auto few = slice_clauses(clause_list({{1}}), 4);
  EXPECT_EQ(few.back(), clause_list({{1}}));
}

TEST(Bench, SingleSliceModesAgree) {
  const SequenceRun keep = run_sequence(example1(), 1, true, {});
  const SequenceRun discard = run_sequence(example1(), 1, false, {});
  ASSERT_EQ(keep.forward.size(), 1u);
  EXPECT_TRUE(keep.reverse.empty());
  EXPECT_EQ(keep.forward[0].verdict, Verdict::Sat);
  EXPECT_EQ(keep.forward[0].assignments, discard.forward[0].assignments);
  EXPECT_EQ(keep.forward[0].backtracks, discard.forward[0].backtracks);
}

TEST(Bench, SequenceVerdictsMatchOracle) {
  Rng rng(97);
  for (int it = 0; it < 60; ++it) {
    const Pcnf f = random_pcnf(rng, {10, 4, 30, 3});
    const std::size_t slices = 1 + rng() % 5;
    const auto parts = slice_clauses(f.clauses, slices);
    for (bool keep : {true, false}) {
      const SequenceRun run = run_sequence(f, slices, keep, {});
      Pcnf g;
      g.prefix = f.prefix;
      std::vector<Verdict> forward;
      for (const auto& p : parts) {
        g.clauses.insert(g.clauses.end(), p.begin(), p.end());
        forward.push_back(oracle_eval(compact(g).formula));
      }
      ASSERT_EQ(run.forward.size(), slices);
      ASSERT_EQ(run.reverse.size(), slices - 1);
      for (std::size_t i = 0; i < slices; ++i) EXPECT_EQ(run.forward[i].verdict, forward[i]);
      for (std::size_t i = 0; i + 1 < slices; ++i) EXPECT_EQ(run.reverse[i].verdict, forward[slices - 2 - i]);
    }
  }
}

TEST(Bench, ReportAggregates) {
  std::vector<NamedFormula> inst{{"a", example1()}, {"b", example1()}};
  inst[1].formula.clauses.push_back(example_clause(0));
  BenchOptions o;
  o.slices = 3;
  const BenchReport r = run_bench(inst, o);
  ASSERT_EQ(r.directions.size(), 2u);
  EXPECT_EQ(r.verdict_mismatches, 0u);
  const auto& fwd = r.directions[0].keep;
  const Totals a = totals(r.instances[0].keep.forward), b = totals(r.instances[1].keep.forward);
  EXPECT_DOUBLE_EQ(fwd.mean_assignments, (static_cast<double>(a.assignments) + static_cast<double>(b.assignments)) / 2);
  EXPECT_DOUBLE_EQ(fwd.median_assignments, fwd.mean_assignments);
  EXPECT_EQ(fwd.total_backtracks, a.backtracks + b.backtracks);
  std::ostringstream table;
  print_bench_table(table, r);
  EXPECT_NE(table.str().find("diff %"), std::string::npos);
  EXPECT_NE(table.str().find("reverse"), std::string::npos);
}

TEST(Bench, PercentDifference) {
  EXPECT_DOUBLE_EQ(percent_difference(50, 100), -50.0);
  EXPECT_DOUBLE_EQ(percent_difference(0, 0), 0.0);
  EXPECT_DOUBLE_EQ(percent_difference(150, 100), 50.0);
}
