#pragma once

#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

#include "iqbf/engine.hpp"
#include "iqbf/formula.hpp"

namespace iqbf {

/// Incremental QBF solver. Clauses are added to the frame on top of the
/// clause stack (or permanently when the stack is empty) and disappear when
/// that frame is popped. Assumptions apply to the next solve call only.
class Solver {
 public:
  explicit Solver(EngineOptions options = {});
  explicit Solver(const Pcnf& f, EngineOptions options = {});

  // Prefix.
  std::size_t block_count() const { return engine_.block_count(); }
  std::size_t add_block(std::size_t position, Quantifier q) { return engine_.add_block(position, q); }
  std::size_t append_block(Quantifier q) { return add_block(block_count() + 1, q); }
  void add_variable(std::size_t block, Var v) { engine_.add_variable(block, v); }
  void add_prefix(const Prefix& p);
  bool declared(Var v) const { return engine_.declared(v); }
  Prefix prefix() const { return engine_.user_prefix(); }

  // Clause stack.
  std::size_t push() { return engine_.push(); }
  std::size_t pop() { return engine_.pop(); }
  std::size_t frame_depth() const { return engine_.frame_depth(); }

  /// Undeclared variables go to the leftmost existential block. Duplicate
  /// literals are merged; tautologies are dropped.
  void add_clause(std::span<const Literal> lits);
  void add_clause(std::initializer_list<int> dimacs);
  void add_clause(std::span<const int> dimacs);

  void declare_selector(Var v) { engine_.declare_selector(v); }

  // Assumptions and solving.
  void assume(Literal l);
  void assume(int dimacs) { assume(Literal::from_dimacs(dimacs)); }
  const std::vector<Literal>& pending_assumptions() const { return assumptions_; }
  Verdict solve(double time_limit_s = 0.0);
  std::optional<Verdict> last_result() const { return last_; }

  /// Subset of the last solve's assumptions that suffices for its verdict.
  /// Only defined for Unsat with an existential outermost block or Sat with
  /// a universal one.
  std::vector<Literal> relevant_assumptions() const;

  void set_keep_learned(bool keep) { engine_.set_keep_learned(keep); }
  const SolveStats& stats() const { return engine_.stats(); }
  Pcnf enabled_formula() const { return engine_.enabled_formula(); }

  Engine& engine() { return engine_; }
  const Engine& engine() const { return engine_; }

 private:
  void declare_free(Var v);

  Engine engine_;
  std::vector<Literal> assumptions_;
  std::optional<Verdict> last_;
};

}  // namespace iqbf
