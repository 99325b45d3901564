#pragma once

#include <cstddef>
#include <initializer_list>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <unordered_map>
#include <vector>

#include "iqbf/literal.hpp"

namespace iqbf {

using Clause = std::vector<Literal>;

enum class Verdict { Sat, Unsat, Unknown };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Sat: return "SAT";
    case Verdict::Unsat: return "UNSAT";
    default: return "UNKNOWN";
  }
}

struct Block {
  Quantifier quantifier = Quantifier::Exists;
  std::vector<Var> vars;

  friend bool operator==(const Block&, const Block&) = default;
};

enum class Ordering { Less, EqualBlock, Greater };

/// Linearly ordered quantifier blocks. User blocks are addressed 1..size();
/// index 0 belongs to the solver's hidden selector block and never appears
/// in a Prefix value.
class Prefix {
 public:
  Prefix() = default;
  Prefix(std::initializer_list<Block> blocks);

  std::size_t size() const { return blocks_.size(); }
  bool empty() const { return blocks_.empty(); }
  const std::vector<Block>& blocks() const { return blocks_; }
  const Block& block(std::size_t index) const;

  /// Inserts an empty block so that it gets index `position` (1-based);
  /// later blocks shift by one. position == size()+1 appends.
  std::size_t add_block(std::size_t position, Quantifier q);
  std::size_t append_block(Quantifier q) { return add_block(size() + 1, q); }
  void add_variable(std::size_t block_index, Var v);

  bool declared(Var v) const { return index_.contains(v); }
  std::size_t block_of(Var v) const;
  Quantifier quantifier(Var v) const { return block(block_of(v)).quantifier; }
  std::size_t variable_count() const { return index_.size(); }
  Var max_var() const;

  /// Ordering rank used by the reduction rules; equal ranks mean equal blocks.
  std::uint32_t rank(Var v) const { return static_cast<std::uint32_t>(block_of(v)); }

  friend bool operator==(const Prefix& a, const Prefix& b) { return a.blocks_ == b.blocks_; }

 private:
  void reindex();

  std::vector<Block> blocks_;
  std::unordered_map<Var, std::size_t> index_;  // var -> 1-based block index
};

Ordering compare_literals(const Prefix& p, Literal a, Literal b);

struct Pcnf {
  Prefix prefix;
  std::vector<Clause> clauses;

  friend bool operator==(const Pcnf&, const Pcnf&) = default;
};

/// Removes duplicate literals; returns nullopt for tautologies.
std::optional<Clause> normalize_clause(std::span<const Literal> lits);

/// Every clause variable is declared and every declared variable occurs.
bool is_closed(const Pcnf& f);

/// Declares variables that occur in clauses but not in the prefix in the
/// leftmost existential block, creating that block if B1 is universal.
void adopt_free_variables(Pcnf& f);

/// A partial truth assignment, at most one literal per variable.
class Assignment {
 public:
  Assignment() = default;
  Assignment(std::initializer_list<int> dimacs);
  explicit Assignment(std::span<const Literal> lits);

  void assign(Literal l);
  std::optional<bool> value(Var v) const;
  bool contains(Literal l) const;
  bool empty() const { return values_.empty(); }
  std::size_t size() const { return values_.size(); }
  std::vector<Literal> literals() const;

  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  std::map<Var, bool> values_;
};

enum class Outcome { True, False, Residual };

struct Reduct {
  Outcome outcome = Outcome::Residual;
  Pcnf residual;  // only meaningful for Outcome::Residual
};

/// psi[A]: substitutes A, removes satisfied clauses and falsified literals,
/// and drops superfluous variables and blocks. No propagation is done.
Reduct apply_assignment(const Pcnf& f, const Assignment& a);

struct Compacted {
  Pcnf formula;
  std::set<Var> removed;
};

/// Drops variables without occurrences, then empty blocks, then merges
/// adjacent blocks of equal quantifier.
Compacted compact(const Pcnf& f);

}  // namespace iqbf
