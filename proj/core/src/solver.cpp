#include "iqbf/solver.hpp"

#include <algorithm>

namespace iqbf {

Solver::Solver(EngineOptions options) : engine_(options) {}

Solver::Solver(const Pcnf& f, EngineOptions options) : engine_(options) {
  add_prefix(f.prefix);
  for (const Clause& c : f.clauses) add_clause(c);
}

void Solver::add_prefix(const Prefix& p) {
  for (const Block& b : p.blocks()) {
    const std::size_t idx = append_block(b.quantifier);
    for (Var v : b.vars) add_variable(idx, v);
  }
}

void Solver::declare_free(Var v) {
  if (engine_.declared(v)) return;
  std::size_t target = 0;
  for (std::size_t i = 1; i <= block_count() && target == 0; ++i)
    if (engine_.block_quantifier(i) == Quantifier::Exists) target = i;
  if (target == 0) target = engine_.add_block(1, Quantifier::Exists);
  engine_.add_variable(target, v);
}

void Solver::add_clause(std::span<const Literal> lits) {
  auto c = normalize_clause(lits);
  for (Literal l : lits) declare_free(l.var());
  if (c) engine_.add_clause(*c);
}

void Solver::add_clause(std::initializer_list<int> dimacs) {
  add_clause(std::span<const int>(dimacs.begin(), dimacs.size()));
}

void Solver::add_clause(std::span<const int> dimacs) {
  Clause c;
  c.reserve(dimacs.size());
  for (int d : dimacs) c.push_back(Literal::from_dimacs(d));
  add_clause(std::span<const Literal>(c));
}

void Solver::assume(Literal l) {
  if (!engine_.declared(l.var())) throw UsageError("assumption on undeclared variable " + std::to_string(l.var()));
  if (std::find(assumptions_.begin(), assumptions_.end(), l) != assumptions_.end()) return;
  engine_.check_assumption(l, assumptions_);
  assumptions_.push_back(l);
}

Verdict Solver::solve(double time_limit_s) {
  std::vector<Literal> a;
  a.swap(assumptions_);
  const Verdict v = engine_.solve(a, time_limit_s);
  last_ = v;
  return v;
}

std::vector<Literal> Solver::relevant_assumptions() const {
  if (!last_ || *last_ == Verdict::Unknown) throw UsageError("relevant assumptions need a decided solve call");
  const auto q = engine_.outermost_quantifier();
  if (q) {
    const bool ok = (*last_ == Verdict::Unsat && *q == Quantifier::Exists) ||
                    (*last_ == Verdict::Sat && *q == Quantifier::Forall);
    if (!ok) throw UsageError("relevant assumptions are undefined for this verdict and outermost quantifier");
  }
  return engine_.relevant_assumptions();
}

}  // namespace iqbf
