#include <gtest/gtest.h>

#include "iqbf/oracle.hpp"
#include "support.hpp"

using namespace iqbf;
using namespace iqbf::testing;

TEST(Oracle, Example) {
  Pcnf f = example1();
  EXPECT_EQ(oracle_eval(f), Verdict::Sat);
  f.clauses.push_back(example_clause(0));
  EXPECT_EQ(oracle_eval(f), Verdict::Unsat);
}

TEST(Oracle, TrivialFormulas) {
  Pcnf empty;
  EXPECT_EQ(oracle_eval(empty), Verdict::Sat);
  Pcnf f;
  f.prefix = Prefix{{Quantifier::Forall, {1}}};
  f.clauses = clause_list({{1}});
  EXPECT_EQ(oracle_eval(f), Verdict::Unsat);
  f.clauses = {Clause{}};
  EXPECT_EQ(oracle_eval(f), Verdict::Unsat);
}

TEST(Oracle, QuantifierOrderMatters) {
  // forall y exists x (x = y) is true, exists x forall y is false.
  Pcnf f;
  f.prefix = Prefix{{Quantifier::Forall, {1}}, {Quantifier::Exists, {2}}};
  f.clauses = clause_list({{1, -2}, {-1, 2}});
  EXPECT_EQ(oracle_eval(f), Verdict::Sat);
  f.prefix = Prefix{{Quantifier::Exists, {2}}, {Quantifier::Forall, {1}}};
  EXPECT_EQ(oracle_eval(f), Verdict::Unsat);
}

TEST(Oracle, AgreesWithSkolemSearch) {
  Rng rng(3);
  int n = 0;
  for (int it = 0; it < 600; ++it) {
    const Pcnf f = random_pcnf(rng, {6, 4, 14, 3});
    std::size_t universals = 0;
    for (const Block& b : f.prefix.blocks())
      if (b.quantifier == Quantifier::Forall) universals += b.vars.size();
    if (universals > 2 || f.prefix.variable_count() > 6) continue;
    EXPECT_EQ(oracle_eval(f), skolem_eval(f));
    ++n;
  }
  EXPECT_GT(n, 100);
}

TEST(Oracle, BoundIsEnforced) {
  Pcnf f;
  const std::size_t b = f.prefix.append_block(Quantifier::Exists);
  Clause c;
  for (Var v = 1; v <= 30; ++v) {
    f.prefix.add_variable(b, v);
    c.push_back(Literal(v, false));
  }
  f.clauses.push_back(c);
  EXPECT_THROW(oracle_eval(f, 20), OracleBoundError);
}

TEST(Oracle, AcnfWithCube) {
  // A cube that holds under every universal choice makes the ACNF true.
  Pcnf f;
  f.prefix = Prefix{{Quantifier::Exists, {1}}, {Quantifier::Forall, {2}}};
  f.clauses = clause_list({{2}});
  EXPECT_EQ(oracle_eval(f), Verdict::Unsat);
  const std::vector<Clause> cubes{lits({1})};
  EXPECT_EQ(oracle_eval_acnf(f, cubes), Verdict::Sat);
}

TEST(Oracle, CheckRedundant) {
  const Pcnf f = example1();
  EXPECT_TRUE(check_redundant(f, make_clause(f.prefix, {-1})));
  EXPECT_TRUE(check_redundant(f, make_cube(f.prefix, {-8})));
  EXPECT_FALSE(check_redundant(f, make_clause(f.prefix, {1})));
}

TEST(Oracle, IsModel) {
  const Pcnf f = example1();
  EXPECT_TRUE(is_model(f, Assignment{8, -4, -1, 5, 6, 2}));
  EXPECT_FALSE(is_model(f, Assignment{8, 4, -1, 5, 6, 2}));
}
