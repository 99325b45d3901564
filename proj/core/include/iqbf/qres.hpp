#pragma once

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "iqbf/formula.hpp"

namespace iqbf {

enum class ConstraintKind : std::uint8_t { Clause, Cube };

struct Constraint {
  ConstraintKind kind = ConstraintKind::Clause;
  std::vector<Literal> literals;
  std::uint64_t id = 0;
  bool learned = false;
  double activity = 0.0;

  bool empty() const { return literals.empty(); }
  bool contains(Literal l) const { return std::find(literals.begin(), literals.end(), l) != literals.end(); }
};

/// Anything that can place a variable in the prefix order. Both Prefix and
/// the engine's internal variable table satisfy this.
template <class O>
concept VariableOrder = requires(const O& o, Var v) {
  { o.rank(v) } -> std::convertible_to<std::uint32_t>;
  { o.quantifier(v) } -> std::convertible_to<Quantifier>;
};

template <VariableOrder O>
void sort_by_order(const O& order, std::vector<Literal>& lits) {
  std::sort(lits.begin(), lits.end(), [&](Literal a, Literal b) {
    const auto ra = order.rank(a.var());
    const auto rb = order.rank(b.var());
    if (ra != rb) return ra < rb;
    return a < b;
  });
}

namespace detail {

// Drops literals of quantifier `reducible` that are greater than every
// literal of the opposite quantifier. Covers UR (clauses) and ER (cubes).
template <VariableOrder O>
std::vector<Literal> reduce(const O& order, const std::vector<Literal>& lits, Quantifier reducible) {
  std::int64_t max_blocking = -1;
  for (Literal l : lits)
    if (order.quantifier(l.var()) != reducible)
      max_blocking = std::max<std::int64_t>(max_blocking, order.rank(l.var()));
  std::vector<Literal> out;
  out.reserve(lits.size());
  for (Literal l : lits)
    if (order.quantifier(l.var()) != reducible || static_cast<std::int64_t>(order.rank(l.var())) < max_blocking)
      out.push_back(l);
  return out;
}

inline void require_kind(const Constraint& c, ConstraintKind k, const char* op) {
  if (c.kind != k) throw UsageError(std::string(op) + ": constraint kind mismatch");
}

}  // namespace detail

template <VariableOrder O>
Constraint universal_reduce(const O& order, const Constraint& c) {
  detail::require_kind(c, ConstraintKind::Clause, "universal_reduce");
  Constraint out = c;
  out.literals = detail::reduce(order, c.literals, Quantifier::Forall);
  return out;
}

template <VariableOrder O>
Constraint existential_reduce(const O& order, const Constraint& c) {
  detail::require_kind(c, ConstraintKind::Cube, "existential_reduce");
  Constraint out = c;
  out.literals = detail::reduce(order, c.literals, Quantifier::Exists);
  return out;
}

template <VariableOrder O>
Constraint reduce(const O& order, const Constraint& c) {
  return c.kind == ConstraintKind::Clause ? universal_reduce(order, c) : existential_reduce(order, c);
}

/// Q-resolution (clauses, existential pivot) or cube resolution (cubes,
/// universal pivot) of the reduced operands. The pivot may occur in either
/// polarity in c1 as long as c2 holds the opposite one. Returns nullopt when
/// the tentative resolvent is tautological (contradictory for cubes). The
/// resolvent itself is not reduced again.
template <VariableOrder O>
std::optional<Constraint> resolve(const O& order, const Constraint& c1, const Constraint& c2, Var pivot) {
  if (c1.kind != c2.kind) throw UsageError("resolve: operands of different kind");
  const bool clauses = c1.kind == ConstraintKind::Clause;
  const Quantifier wanted = clauses ? Quantifier::Exists : Quantifier::Forall;
  if (order.quantifier(pivot) != wanted)
    throw UsageError(std::string("resolve: pivot must be ") + (clauses ? "existential" : "universal"));

  const Constraint r1 = reduce(order, c1);
  const Constraint r2 = reduce(order, c2);
  const Literal pos(pivot, false);
  const Literal neg(pivot, true);
  Literal in1;
  if (r1.contains(pos) && r2.contains(neg))
    in1 = pos;
  else if (r1.contains(neg) && r2.contains(pos))
    in1 = neg;
  else
    throw UsageError("resolve: pivot does not occur with opposite signs in the operands");

  Constraint out;
  out.kind = c1.kind;
  for (Literal l : r1.literals)
    if (l != in1) out.literals.push_back(l);
  for (Literal l : r2.literals) {
    if (l == ~in1) continue;
    if (std::find(out.literals.begin(), out.literals.end(), ~l) != out.literals.end()) return std::nullopt;
    if (std::find(out.literals.begin(), out.literals.end(), l) == out.literals.end()) out.literals.push_back(l);
  }
  sort_by_order(order, out.literals);
  return out;
}

/// Cube over the literals of a model of f.
Constraint initial_cube(const Pcnf& f, const Assignment& model);

inline Constraint make_clause(const Prefix& p, std::initializer_list<int> lits) {
  Constraint c;
  for (int l : lits) c.literals.push_back(Literal::from_dimacs(l));
  sort_by_order(p, c.literals);
  return c;
}

inline Constraint make_cube(const Prefix& p, std::initializer_list<int> lits) {
  Constraint c = make_clause(p, lits);
  c.kind = ConstraintKind::Cube;
  return c;
}

}  // namespace iqbf
