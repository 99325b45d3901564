#include <gtest/gtest.h>

#include "iqbf/oracle.hpp"
#include "iqbf/solver.hpp"
#include "support.hpp"

using namespace iqbf;
using namespace iqbf::testing;

TEST(Assume, OutermostBlock) {
  Solver s(example1());
  s.assume(-1);
  EXPECT_EQ(s.solve(), Verdict::Sat);
  EXPECT_EQ(oracle_under(example1(), {Literal::from_dimacs(-1)}), Verdict::Sat);
}

TEST(Assume, RecursiveBlocks) {
  Solver s(example1());
  s.assume(1);
  EXPECT_NO_THROW(s.assume(8));
  EXPECT_EQ(s.solve(), oracle_under(example1(), lits({1, 8})));
}

TEST(Assume, InnerBlockRejected) {
  Solver s(example1());
  EXPECT_THROW(s.assume(8), UsageError);
  EXPECT_THROW(s.assume(4), UsageError);
  EXPECT_THROW(s.assume(99), UsageError);
  s.assume(1);
  EXPECT_THROW(s.assume(-1), UsageError);
}

TEST(Assume, SingleShot) {
  Solver s(example1());
  s.add_clause({-1, -8});
  s.assume(1);
  EXPECT_EQ(s.solve(), Verdict::Unsat);
  EXPECT_TRUE(s.pending_assumptions().empty());
  EXPECT_EQ(s.solve(), Verdict::Sat);
}

TEST(Assume, RandomAgainstOracle) {
  Rng rng(73);
  for (int i = 0; i < 400; ++i) {
    const Pcnf f = random_pcnf(rng);
    const auto a = random_assumptions(rng, f);
    Solver s(f);
    for (Literal l : a) s.assume(l);
    ASSERT_EQ(s.solve(), oracle_under(f, a)) << "instance " << i;
  }
}

TEST(RelevantAssumptions, UnusedAssumptionLeftOut) {
  Solver s;
  const std::size_t b1 = s.append_block(Quantifier::Exists);
  s.add_variable(b1, 1);
  s.add_variable(b1, 2);
  s.add_variable(s.append_block(Quantifier::Forall), 3);
  s.add_variable(s.append_block(Quantifier::Exists), 4);
  s.add_clause({-1, 4});
  s.add_clause({-4, 3});
  s.add_clause({2, 4});  // keeps x2 in the formula
  s.assume(1);
  s.assume(2);
  ASSERT_EQ(s.solve(), Verdict::Unsat);
  const auto rel = s.relevant_assumptions();
  EXPECT_TRUE(std::all_of(rel.begin(), rel.end(), [](Literal l) { return l == Literal::from_dimacs(1); }));
  EXPECT_EQ(oracle_under(s.enabled_formula(), lits({1})), Verdict::Unsat);
}

TEST(RelevantAssumptions, EmptyWithoutAssumptions) {
  Pcnf f = example1();
  f.clauses.push_back(example_clause(0));
  Solver s(f);
  ASSERT_EQ(s.solve(), Verdict::Unsat);
  EXPECT_TRUE(s.relevant_assumptions().empty());
}

TEST(RelevantAssumptions, WrongVerdictForQuantifier) {
  Solver s(example1());
  ASSERT_EQ(s.solve(), Verdict::Sat);
  EXPECT_THROW(s.relevant_assumptions(), UsageError);
  Solver fresh;
  EXPECT_THROW(fresh.relevant_assumptions(), UsageError);
}

TEST(RelevantAssumptions, ReSolveReproducesVerdict) {
  Rng rng(79);
  int checked = 0;
  for (int i = 0; i < 600; ++i) {
    const Pcnf f = random_pcnf(rng);
    const auto a = random_assumptions(rng, f);
    Solver s(f);
    for (Literal l : a) s.assume(l);
    const Verdict v = s.solve();
    const auto q = s.engine().outermost_quantifier();
    if (!q || (v == Verdict::Unsat) != (*q == Quantifier::Exists)) continue;
    const auto rel = s.relevant_assumptions();
    for (Literal l : rel) EXPECT_NE(std::find(a.begin(), a.end(), l), a.end());
    EXPECT_EQ(oracle_under(f, rel), v) << "instance " << i;
    ++checked;
  }
  EXPECT_GT(checked, 100);
}

TEST(ManualSelectors, EnableAndDisableByAssumption) {
  // s = 9 guards (not x1) on top of the example: assume -9 enables it.
  Solver s;
  const std::size_t b0 = s.append_block(Quantifier::Exists);
  s.add_variable(b0, 9);
  s.add_prefix(example1().prefix);
  s.declare_selector(9);
  for (int i = 1; i <= 6; ++i) s.add_clause(example_clause(i));
  s.add_clause({-2, -4, 9});
  s.assume(-9);
  EXPECT_EQ(s.solve(), Verdict::Unsat);
  s.assume(9);
  EXPECT_EQ(s.solve(), Verdict::Sat);
  EXPECT_THROW(s.push(), UsageError);
}

TEST(ManualSelectors, DeclareAfterPushRejected) {
  Solver s;
  s.add_variable(s.append_block(Quantifier::Exists), 1);
  s.push();
  EXPECT_THROW(s.declare_selector(1), UsageError);
}

TEST(ManualSelectors, MustBeOutermostExistential) {
  Solver s(example1());
  EXPECT_THROW(s.declare_selector(4), UsageError);
}

TEST(ManualSelectors, EquivalentToPushPop) {
  Rng rng(83);
  for (int it = 0; it < 200; ++it) {
    const std::size_t vars = 2 + rng() % 7;
    const Prefix p = random_prefix(rng, vars, 1 + rng() % 3);
    const auto base_n = rng() % 8, frame_n = 1 + rng() % 6;
    std::vector<Clause> base, frame;
    for (std::size_t i = 0; i < base_n; ++i) base.push_back(random_clause(rng, vars, 3));
    for (std::size_t i = 0; i < frame_n; ++i) frame.push_back(random_clause(rng, vars, 3));

    Solver a;
    a.add_prefix(p);
    for (const Clause& c : base) a.add_clause(c);
    a.push();
    for (const Clause& c : frame) a.add_clause(c);

    Solver m;
    const Var sel = static_cast<Var>(vars + 1);
    m.add_variable(m.append_block(Quantifier::Exists), sel);
    m.add_prefix(p);
    m.declare_selector(sel);
    for (const Clause& c : base) m.add_clause(c);
    for (Clause c : frame) {
      c.push_back(Literal(sel, false));
      m.add_clause(c);
    }
    m.assume(Literal(sel, true));
    ASSERT_EQ(a.solve(), m.solve());
    a.pop();
    m.assume(Literal(sel, false));
    ASSERT_EQ(a.solve(), m.solve());
  }
}
