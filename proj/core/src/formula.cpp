#include "iqbf/formula.hpp"

#include <algorithm>
#include <string>

namespace iqbf {

Prefix::Prefix(std::initializer_list<Block> blocks) {
  for (const Block& b : blocks) {
    const std::size_t idx = append_block(b.quantifier);
    for (Var v : b.vars) add_variable(idx, v);
  }
}

const Block& Prefix::block(std::size_t index) const {
  if (index == 0 || index > blocks_.size())
    throw UsageError("block index " + std::to_string(index) + " out of range");
  return blocks_[index - 1];
}

std::size_t Prefix::add_block(std::size_t position, Quantifier q) {
  if (position == 0 || position > blocks_.size() + 1)
    throw UsageError("invalid block position " + std::to_string(position));
  blocks_.insert(blocks_.begin() + static_cast<std::ptrdiff_t>(position - 1), Block{q, {}});
  if (position <= blocks_.size() - 1) reindex();
  return position;
}

void Prefix::add_variable(std::size_t block_index, Var v) {
  if (v == 0) throw UsageError("variable id 0 is reserved");
  if (block_index == 0 || block_index > blocks_.size())
    throw UsageError("block index " + std::to_string(block_index) + " out of range");
  if (declared(v)) throw UsageError("variable " + std::to_string(v) + " declared twice");
  blocks_[block_index - 1].vars.push_back(v);
  index_.emplace(v, block_index);
}

std::size_t Prefix::block_of(Var v) const {
  const auto it = index_.find(v);
  if (it == index_.end()) throw UsageError("variable " + std::to_string(v) + " is not declared");
  return it->second;
}

Var Prefix::max_var() const {
  Var m = 0;
  for (const auto& [v, _] : index_) m = std::max(m, v);
  return m;
}

void Prefix::reindex() {
  index_.clear();
  for (std::size_t i = 0; i < blocks_.size(); ++i)
    for (Var v : blocks_[i].vars) index_.emplace(v, i + 1);
}

Ordering compare_literals(const Prefix& p, Literal a, Literal b) {
  const auto ra = p.rank(a.var());
  const auto rb = p.rank(b.var());
  if (ra < rb) return Ordering::Less;
  if (ra > rb) return Ordering::Greater;
  return Ordering::EqualBlock;
}

std::optional<Clause> normalize_clause(std::span<const Literal> lits) {
  Clause out;
  out.reserve(lits.size());
  for (Literal l : lits) {
    if (std::find(out.begin(), out.end(), ~l) != out.end()) return std::nullopt;
    if (std::find(out.begin(), out.end(), l) == out.end()) out.push_back(l);
  }
  return out;
}

bool is_closed(const Pcnf& f) {
  std::set<Var> occurring;
  for (const Clause& c : f.clauses)
    for (Literal l : c) {
      if (!f.prefix.declared(l.var())) return false;
      occurring.insert(l.var());
    }
  return occurring.size() == f.prefix.variable_count();
}

void adopt_free_variables(Pcnf& f) {
  std::vector<Var> free;
  std::set<Var> seen;
  for (const Clause& c : f.clauses)
    for (Literal l : c)
      if (!f.prefix.declared(l.var()) && seen.insert(l.var()).second) free.push_back(l.var());
  if (free.empty()) return;
  std::size_t target = 1;
  if (f.prefix.empty() || f.prefix.block(1).quantifier != Quantifier::Exists)
    target = f.prefix.add_block(1, Quantifier::Exists);
  for (Var v : free) f.prefix.add_variable(target, v);
}

Assignment::Assignment(std::initializer_list<int> dimacs) {
  for (int lit : dimacs) assign(Literal::from_dimacs(lit));
}

Assignment::Assignment(std::span<const Literal> lits) {
  for (Literal l : lits) assign(l);
}

void Assignment::assign(Literal l) {
  const auto [it, inserted] = values_.emplace(l.var(), !l.negated());
  if (!inserted && it->second == l.negated())
    throw UsageError("variable " + std::to_string(l.var()) + " assigned with both signs");
}

std::optional<bool> Assignment::value(Var v) const {
  const auto it = values_.find(v);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

bool Assignment::contains(Literal l) const {
  const auto val = value(l.var());
  return val && *val == !l.negated();
}

std::vector<Literal> Assignment::literals() const {
  std::vector<Literal> out;
  out.reserve(values_.size());
  for (const auto& [v, val] : values_) out.emplace_back(v, !val);
  return out;
}

Reduct apply_assignment(const Pcnf& f, const Assignment& a) {
  for (Literal l : a.literals())
    if (!f.prefix.declared(l.var()))
      throw UsageError("assignment mentions undeclared variable " + std::to_string(l.var()));

  Pcnf rest;
  rest.prefix = f.prefix;
  for (const Clause& c : f.clauses) {
    Clause reduced;
    bool satisfied = false;
    for (Literal l : c) {
      const auto val = a.value(l.var());
      if (!val) {
        reduced.push_back(l);
      } else if (*val != l.negated()) {
        satisfied = true;
        break;
      }
    }
    if (satisfied) continue;
    if (reduced.empty()) return Reduct{Outcome::False, {}};
    rest.clauses.push_back(std::move(reduced));
  }
  if (rest.clauses.empty()) return Reduct{Outcome::True, {}};
  return Reduct{Outcome::Residual, compact(rest).formula};
}

Compacted compact(const Pcnf& f) {
  std::set<Var> occurring;
  for (const Clause& c : f.clauses)
    for (Literal l : c) occurring.insert(l.var());

  Compacted out;
  out.formula.clauses = f.clauses;
  Prefix& p = out.formula.prefix;
  for (const Block& b : f.prefix.blocks()) {
    std::vector<Var> kept;
    for (Var v : b.vars) {
      if (occurring.contains(v))
        kept.push_back(v);
      else
        out.removed.insert(v);
    }
    if (kept.empty()) continue;
    std::size_t idx = p.size();
    if (p.empty() || p.block(idx).quantifier != b.quantifier) idx = p.append_block(b.quantifier);
    for (Var v : kept) p.add_variable(idx, v);
  }
  return out;
}

}  // namespace iqbf
