#include "iqbf/oracle.hpp"

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace iqbf {
namespace {

struct Mask {
  std::uint32_t pos = 0;
  std::uint32_t neg = 0;
};

class Evaluator {
 public:
  Evaluator(const Pcnf& f, std::span<const Clause> cubes, std::size_t bound) {
    Pcnf g = f;
    adopt_free_variables(g);
    for (const Block& b : g.prefix.blocks())
      for (Var v : b.vars) {
        index_.emplace(v, static_cast<std::uint32_t>(order_.size()));
        order_.push_back(v);
        universal_.push_back(b.quantifier == Quantifier::Forall);
      }
    if (order_.size() > bound || order_.size() > 31)
      throw OracleBoundError("oracle: " + std::to_string(order_.size()) + " variables exceed bound " +
                             std::to_string(bound));
    for (const Clause& c : g.clauses) clauses_.push_back(to_mask(c));
    for (const Clause& c : cubes) cubes_.push_back(to_mask(c));
  }

  bool run() { return eval(0, 0, 0); }

 private:
  Mask to_mask(const Clause& c) const {
    Mask m;
    for (Literal l : c) {
      const auto it = index_.find(l.var());
      if (it == index_.end()) throw UsageError("oracle: variable " + std::to_string(l.var()) + " is not declared");
      (l.negated() ? m.neg : m.pos) |= 1U << it->second;
    }
    return m;
  }

  // assigned: bitmask of decided variables, value: their truth values.
  bool eval(std::size_t depth, std::uint32_t assigned, std::uint32_t value) const {
    bool all_clauses_sat = true;
    bool some_clause_false = false;
    for (const Mask& c : clauses_) {
      if ((c.pos & assigned & value) || (c.neg & assigned & ~value)) continue;
      all_clauses_sat = false;
      if (((c.pos | c.neg) & ~assigned) == 0) {
        some_clause_false = true;
        break;
      }
    }
    if (all_clauses_sat) return true;
    bool all_cubes_false = true;
    for (const Mask& q : cubes_) {
      const bool falsified = (q.pos & assigned & ~value) || (q.neg & assigned & value);
      if (falsified) continue;
      all_cubes_false = false;
      if (((q.pos | q.neg) & ~assigned) == 0) return true;
    }
    if (some_clause_false && all_cubes_false) return false;
    if (depth == order_.size()) return false;  // unreachable for well-formed input

    const std::uint32_t bit = 1U << depth;
    const bool lo = eval(depth + 1, assigned | bit, value);
    if (universal_[depth]) {
      if (!lo) return false;
    } else if (lo) {
      return true;
    }
    return eval(depth + 1, assigned | bit, value | bit);
  }

  std::vector<Var> order_;
  std::vector<bool> universal_;
  std::unordered_map<Var, std::uint32_t> index_;
  std::vector<Mask> clauses_;
  std::vector<Mask> cubes_;
};

}  // namespace

Verdict oracle_eval(const Pcnf& f, std::size_t bound) { return oracle_eval_acnf(f, {}, bound); }

Verdict oracle_eval_acnf(const Pcnf& f, std::span<const Clause> cubes, std::size_t bound) {
  return Evaluator(f, cubes, bound).run() ? Verdict::Sat : Verdict::Unsat;
}

bool is_model(const Pcnf& f, const Assignment& a) {
  for (const Clause& c : f.clauses) {
    bool sat = false;
    for (Literal l : c)
      if (a.contains(l)) {
        sat = true;
        break;
      }
    if (!sat) return false;
  }
  return true;
}

bool check_redundant(const Pcnf& f, const Constraint& c, std::size_t bound) {
  const Verdict base = oracle_eval(f, bound);
  if (c.kind == ConstraintKind::Clause) {
    Pcnf g = f;
    g.clauses.push_back(c.literals);
    return oracle_eval(g, bound) == base;
  }
  const Clause cube = c.literals;
  return oracle_eval_acnf(f, std::span<const Clause>(&cube, 1), bound) == base;
}

}  // namespace iqbf
