#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string>
#include <vector>

#include "iqbf/engine.hpp"
#include "iqbf/formula.hpp"
#include "iqbf/solver.hpp"

namespace iqbf::testing {

using Rng = std::mt19937_64;

Clause lits(std::initializer_list<int> dimacs);
std::vector<Clause> clause_list(std::initializer_list<std::initializer_list<int>> clauses);
std::string to_string(const Clause& c);

/// Canonical form for comparing literal sets.
Clause sorted(Clause c);

/// The running example: e x1  a y8  e x5 x2 x6 x4 with clauses C1..C6.
Pcnf example1();
Clause example_clause(int i);  // C0 (of the addition example) and C1..C6

struct RandomPcnfSpec {
  std::size_t max_vars = 12;
  std::size_t max_blocks = 4;
  std::size_t max_clauses = 30;
  std::size_t max_clause_len = 4;
};

/// Closed, compacted PCNF; may have no clauses.
Pcnf random_pcnf(Rng& rng, const RandomPcnfSpec& spec = {});

/// Prefix alone, variables 1..n spread over alternating blocks.
Prefix random_prefix(Rng& rng, std::size_t vars, std::size_t blocks);
Clause random_clause(Rng& rng, std::size_t vars, std::size_t max_len);

/// Independent semantics check: searches for Skolem functions of the
/// existentials over the universals to their left. Tiny formulas only.
Verdict skolem_eval(const Pcnf& f);

/// Shadow of a push/pop clause stack for cross-checking incremental solving.
class ShadowStack {
 public:
  explicit ShadowStack(Prefix prefix) : prefix_(std::move(prefix)) {}
  void push() { frames_.emplace_back(); }
  void pop() { frames_.pop_back(); }
  void add(const Clause& c);
  std::size_t depth() const { return frames_.size(); }
  /// The enabled formula, compacted.
  Pcnf formula() const;

 private:
  Prefix prefix_;
  std::vector<Clause> base_;
  std::vector<std::vector<Clause>> frames_;
};

/// A random legal assumption set for `f`: a random subset of its first
/// block, possibly followed by a subset of the second when the first is
/// fully assumed.
std::vector<Literal> random_assumptions(Rng& rng, const Pcnf& f);

/// Oracle verdict of f under the assumptions.
Verdict oracle_under(const Pcnf& f, const std::vector<Literal>& assumptions);

struct ScriptCheck {
  std::size_t solves = 0;
  std::size_t mismatches = 0;
  std::size_t framed_learned = 0;        // learned clauses with a framed antecedent
  std::size_t framed_one_selector = 0;   // ... carrying exactly one selector
  std::size_t audit_failures = 0;
  std::string first_failure;
  std::string transcript;  // script text up to the first failure
};

/// Runs a random push/add/pop/assume/solve script of at most `commands`
/// commands on a solver and compares every verdict with the oracle.
ScriptCheck random_script_check(Rng& rng, bool keep_learned, std::size_t commands = 40,
                                const EngineOptions& base = {});

}  // namespace iqbf::testing
