#include "iqbf/engine.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <stdexcept>

namespace iqbf {
namespace {

constexpr std::uint32_t kNever = std::numeric_limits<std::uint32_t>::max();

std::size_t kind_index(ConstraintKind k) { return k == ConstraintKind::Clause ? 0 : 1; }

// The quantifier resolved on by each kind; the other one is reduced away.
Quantifier pivot_quantifier(ConstraintKind k) {
  return k == ConstraintKind::Clause ? Quantifier::Exists : Quantifier::Forall;
}
Quantifier reducible_quantifier(ConstraintKind k) {
  return k == ConstraintKind::Clause ? Quantifier::Forall : Quantifier::Exists;
}

}  // namespace

Engine::Engine(EngineOptions options)
    : options_(options), model_capacity_(options.model_list_capacity), rng_(options.seed) {
  vars_.emplace_back();
  user_to_internal_.push_back(0);
  clause_watch_.resize(2);
  cube_watch_.resize(2);
  occurs_.resize(2);
  memo_stamp_.push_back(0);
  memo_.emplace_back();
  memo_prov_.emplace_back();
}

Var Engine::new_var(Quantifier q, Var user) {
  const Var v = static_cast<Var>(vars_.size());
  VarInfo info;
  info.quantifier = q;
  info.user = user;
  info.phase = options_.default_phase;
  if (options_.seed != 0) info.activity = std::uniform_real_distribution<double>(0.0, 1e-3)(rng_);
  vars_.push_back(info);
  clause_watch_.resize(2 * vars_.size());
  cube_watch_.resize(2 * vars_.size());
  occurs_.resize(2 * vars_.size());
  memo_stamp_.push_back(0);
  memo_.emplace_back();
  memo_prov_.emplace_back();
  return v;
}

Var Engine::internal(Var user) const {
  if (!declared(user)) throw UsageError("variable " + std::to_string(user) + " is not declared");
  return user_to_internal_[user];
}

Literal Engine::to_internal(Literal user) const { return Literal(internal(user.var()), user.negated()); }

void Engine::sort_lits(std::vector<Literal>& lits) const { sort_by_order(order(), lits); }

bool Engine::has_selector(const std::vector<Literal>& lits) const {
  return std::any_of(lits.begin(), lits.end(), [&](Literal l) { return is_selector(l.var()); });
}

// ---------------------------------------------------------------------------
// Trail

void Engine::assign(Literal l, ReasonKind kind, std::uint32_t index) {
  VarInfo& x = vars_[l.var()];
  assert(x.value == Val::Undef);
  x.value = l.negated() ? Val::False : Val::True;
  x.level = level();
  x.trail_pos = static_cast<std::uint32_t>(trail_.size());
  x.reason = kind;
  x.reason_index = index;
  x.phase = !l.negated();
  trail_.push_back(l);
  ++stats_.assignments;
  for (std::uint32_t ci : occurs_[l.code()])
    if (true_count_[ci]++ == 0) --unsatisfied_;
  if (x.user != 0 && x.active) --group_free_[x.rank];
}

void Engine::unassign(Var v) {
  VarInfo& x = vars_[v];
  const Literal l(v, x.value == Val::False);
  for (std::uint32_t ci : occurs_[l.code()])
    if (--true_count_[ci] == 0) ++unsatisfied_;
  if (x.user != 0 && x.active) ++group_free_[x.rank];
  x.value = Val::Undef;
  x.reason = ReasonKind::None;
}

void Engine::reset_trail() {
  for (Literal l : trail_) {
    vars_[l.var()].value = Val::Undef;
    vars_[l.var()].reason = ReasonKind::None;
  }
  trail_.clear();
  trail_lim_.clear();
  qhead_ = 0;
  touched_.clear();
  pending_conflict_.reset();
  pending_solution_.reset();
}

void Engine::touch(ConstraintKind k, std::uint32_t index, std::uint32_t lvl) {
  if (lvl == 0) return;
  if (touched_.size() <= lvl) touched_.resize(lvl + 1);
  touched_[lvl].push_back(index << 1 | static_cast<std::uint32_t>(kind_index(k)));
}

void Engine::backjump(std::uint32_t target) {
  if (level() <= target) return;
  ++stats_.backtracks;
  const std::uint32_t start = trail_lim_[target];
  for (std::size_t i = trail_.size(); i-- > start;) unassign(trail_[i].var());
  trail_.resize(start);
  trail_lim_.resize(target);
  qhead_ = start;
  pending_conflict_.reset();
  pending_solution_.reset();

  // Watches chosen above the target level may rely on assignments that are
  // gone now; pick them again.
  std::vector<std::uint32_t> refs;
  ++stamp_;
  for (std::size_t lvl = target + 1; lvl < touched_.size(); ++lvl)
    for (std::uint32_t ref : touched_[lvl]) {
      auto& stamps = visit_stamp_[ref & 1];
      if (stamps[ref >> 1] == stamp_) continue;
      stamps[ref >> 1] = stamp_;
      refs.push_back(ref);
    }
  if (touched_.size() > target + 1) touched_.resize(target + 1);
  for (std::uint32_t ref : refs) {
    const ConstraintKind k = (ref & 1) ? ConstraintKind::Cube : ConstraintKind::Clause;
    const std::uint32_t idx = ref >> 1;
    if (store(k)[idx].deleted) continue;
    if (scan(k, idx) == Status::Final) {
      if (k == ConstraintKind::Clause) {
        if (!pending_conflict_) pending_conflict_ = idx;
      } else if (!pending_solution_) {
        pending_solution_ = idx;
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Watches and propagation

void Engine::set_watches(ConstraintKind k, std::uint32_t index, Literal a, Literal b) {
  Stored& c = store(k)[index];
  auto& lists = watch_lists(k);
  const Literal o0 = c.watch[0];
  const Literal o1 = c.watch[1];
  if (a != o0 && a != o1) lists[a.code()].push_back(index);
  if (b != a && b != o0 && b != o1) lists[b.code()].push_back(index);
  c.watch[0] = a;
  c.watch[1] = b;
}

// Classifies a constraint under the current assignment, re-chooses its
// watches and performs the implication if it is unit.
//
// Clauses: Inert = satisfied, Final = conflicting. A clause is unit if one
// existential literal e is unassigned and every unassigned universal is
// greater than e. Cubes are dual: Inert = falsified, Final = satisfied
// modulo existential reduction, unit on a single unassigned universal.
Engine::Status Engine::scan(ConstraintKind k, std::uint32_t index) {
  Stored& c = store(k)[index];
  if (c.lits.empty()) return Status::Final;
  const bool clause = k == ConstraintKind::Clause;
  const Val done = clause ? Val::True : Val::False;  // literal value that makes c inert
  const Quantifier pq = pivot_quantifier(k);

  Literal inert;
  std::uint32_t inert_level = kNever;
  Literal p1, p2, red;  // unassigned pivot-quantifier literals, min-rank other unassigned
  std::size_t npivot = 0;
  Literal late1, late2;  // most recently assigned literals that do not make c inert
  std::uint32_t pos1 = 0, pos2 = 0;
  bool have1 = false, have2 = false;

  for (Literal l : c.lits) {
    const Val v = value(l);
    const VarInfo& x = vars_[l.var()];
    if (v == done) {
      if (x.level < inert_level) {
        inert = l;
        inert_level = x.level;
      }
      continue;
    }
    if (v == Val::Undef) {
      if (x.quantifier == pq) {
        if (npivot == 0)
          p1 = l;
        else if (npivot == 1)
          p2 = l;
        ++npivot;
      } else if (!red.valid() || x.rank < vars_[red.var()].rank) {
        red = l;
      }
      continue;
    }
    if (!have1 || x.trail_pos > pos1) {
      late2 = late1;
      pos2 = pos1;
      have2 = have1;
      late1 = l;
      pos1 = x.trail_pos;
      have1 = true;
    } else if (!have2 || x.trail_pos > pos2) {
      late2 = l;
      pos2 = x.trail_pos;
      have2 = true;
    }
  }

  if (inert.valid()) {
    Literal other = c.watch[0] == inert ? c.watch[1] : c.watch[0];
    if (!other.valid()) other = inert;
    set_watches(k, index, inert, other);
    touch(k, index, inert_level);
    return Status::Inert;
  }
  if (npivot >= 2) {
    set_watches(k, index, p1, p2);
    return Status::Open;
  }
  if (npivot == 1) {
    if (red.valid() && vars_[red.var()].rank < vars_[p1.var()].rank) {
      set_watches(k, index, p1, red);
      return Status::Open;
    }
    set_watches(k, index, p1, have1 ? late1 : (red.valid() ? red : p1));
    touch(k, index, level());
    assign(clause ? p1 : ~p1, clause ? ReasonKind::Clause : ReasonKind::Cube, index);
    ++stats_.propagations;
    return Status::Unit;
  }
  const Literal a = red.valid() ? red : (have1 ? late1 : c.lits[0]);
  const Literal b = have1 && late1 != a ? late1 : (have2 ? late2 : a);
  set_watches(k, index, a, b);
  touch(k, index, level());
  return Status::Final;
}

Engine::Outcome Engine::visit(ConstraintKind k, Literal lit) {
  auto& list = watch_lists(k)[lit.code()];
  auto& stamps = visit_stamp_[kind_index(k)];
  ++stamp_;
  std::size_t i = 0, j = 0;
  Outcome out;
  while (i < list.size()) {
    const std::uint32_t idx = list[i++];
    Stored& c = store(k)[idx];
    if (c.deleted || (c.watch[0] != lit && c.watch[1] != lit) || stamps[idx] == stamp_) continue;
    stamps[idx] = stamp_;
    const Status s = scan(k, idx);
    if (c.watch[0] == lit || c.watch[1] == lit) list[j++] = idx;
    if (s == Status::Final) {
      out.kind = k == ConstraintKind::Clause ? Outcome::Conflict : Outcome::Solution;
      out.index = idx;
      while (i < list.size()) list[j++] = list[i++];
      break;
    }
  }
  list.resize(j);
  return out;
}

Engine::Outcome Engine::propagate() {
  if (pending_conflict_) return Outcome{Outcome::Conflict, *pending_conflict_};
  if (pending_solution_) return Outcome{Outcome::Solution, *pending_solution_};
  while (qhead_ < trail_.size()) {
    const Literal p = trail_[qhead_++];
    // Clauses watching the literal that just became false, cubes watching
    // the one that became true.
    if (Outcome o = visit(ConstraintKind::Clause, ~p); o.kind != Outcome::None) return o;
    if (Outcome o = visit(ConstraintKind::Cube, p); o.kind != Outcome::None) return o;
  }
  if (unsatisfied_ == 0) return Outcome{Outcome::Model, 0};
  return Outcome{};
}

void Engine::attach_all(const std::vector<Literal>& assumptions) {
  for (auto& l : clause_watch_) l.clear();
  for (auto& l : cube_watch_) l.clear();
  for (auto& l : occurs_) l.clear();
  visit_stamp_[0].assign(clauses_.size(), 0);
  visit_stamp_[1].assign(cubes_.size(), 0);
  stamp_ = 0;
  true_count_.assign(clauses_.size(), 0);
  unsatisfied_ = 0;
  for (std::uint32_t ci = 0; ci < clauses_.size(); ++ci) {
    const Stored& c = clauses_[ci];
    if (c.deleted || c.learned) continue;
    ++unsatisfied_;
    for (Literal l : c.lits) occurs_[l.code()].push_back(ci);
  }

  group_vars_.clear();
  group_free_.clear();
  for (Var v = 1; v < vars_.size(); ++v) {
    const VarInfo& x = vars_[v];
    if (x.user == 0 || !x.active) continue;
    if (group_vars_.size() <= x.rank) {
      group_vars_.resize(x.rank + 1);
      group_free_.resize(x.rank + 1, 0);
    }
    group_vars_[x.rank].push_back(v);
    ++group_free_[x.rank];
  }

  for (const Frame& f : frames_)
    if (!vars_[f.selector].retired) assign(Literal(f.selector, !f.popped), ReasonKind::Fixed, 0);
  for (Literal a : assumptions)
    if (value(a) == Val::Undef) assign(a, ReasonKind::Assumption, 0);
  qhead_ = 0;

  // A learned constraint whose derivation reduced an assumed variable need
  // not hold under the assumptions. The outermost reduced variable bounds
  // every reduced one, so compare it against the innermost assumption.
  std::int64_t assumed_rank[2] = {-1, -1};
  for (Literal a : assumptions) {
    const VarInfo& x = vars_[a.var()];
    const int side = x.quantifier == Quantifier::Forall ? 0 : 1;
    assumed_rank[side] = std::max<std::int64_t>(assumed_rank[side], x.rank);
  }
  for (ConstraintKind k : {ConstraintKind::Clause, ConstraintKind::Cube}) {
    auto& st = store(k);
    const std::int64_t bound = assumed_rank[kind_index(k)];
    for (std::uint32_t i = 0; i < st.size(); ++i) {
      if (st[i].deleted) continue;
      st[i].watch[0] = st[i].watch[1] = Literal();
      st[i].dormant = st[i].learned && st[i].reduced != 0 &&
                      static_cast<std::int64_t>(vars_[st[i].reduced].rank) <= bound;
      if (st[i].dormant) continue;
      if (scan(k, i) != Status::Final) continue;
      if (k == ConstraintKind::Clause && !pending_conflict_) pending_conflict_ = i;
      if (k == ConstraintKind::Cube && !pending_solution_) pending_solution_ = i;
    }
  }
}

// ---------------------------------------------------------------------------
// Learning

bool Engine::holds_before(ConstraintKind k, Literal l, std::uint32_t time) const {
  const Val want = k == ConstraintKind::Clause ? Val::False : Val::True;
  return value(l) == want && vars_[l.var()].trail_pos < time;
}

void Engine::note_reduced(Provenance& prov, Var v) const {
  if (v != 0 && (prov.reduced == 0 || vars_[v].rank < vars_[prov.reduced].rank)) prov.reduced = v;
}

void Engine::reduce_in_place(ConstraintKind k, std::vector<Literal>& lits, Provenance& prov) const {
  std::vector<Literal> out = detail::reduce(order(), lits, reducible_quantifier(k));
  if (out.size() != lits.size())
    for (Literal l : lits)
      if (std::find(out.begin(), out.end(), l) == out.end()) note_reduced(prov, l.var());
  lits = std::move(out);
}

void Engine::merge_selectors(std::vector<Literal>& lits) const {
  if (!options_.merge_selectors) return;
  Literal keep;
  std::int64_t best = -1;
  std::size_t count = 0;
  for (Literal l : lits)
    if (is_selector(l.var())) {
      ++count;
      if (vars_[l.var()].frame > best) {
        best = vars_[l.var()].frame;
        keep = l;
      }
    }
  if (count <= 1) return;
  std::erase_if(lits, [&](Literal l) { return is_selector(l.var()) && l != keep; });
}

std::vector<Literal> Engine::resolve_on(ConstraintKind k, const std::vector<Literal>& a,
                                        const std::vector<Literal>& b, Var pivot) const {
  std::vector<Literal> out;
  out.reserve(a.size() + b.size());
  for (Literal l : a)
    if (l.var() != pivot) out.push_back(l);
  for (Literal l : b) {
    if (l.var() == pivot) continue;
    if (std::find(out.begin(), out.end(), ~l) != out.end())
      throw std::logic_error(k == ConstraintKind::Clause ? "tautological resolvent in conflict analysis"
                                                         : "contradictory resolvent in solution analysis");
    if (std::find(out.begin(), out.end(), l) == out.end()) out.push_back(l);
  }
  merge_selectors(out);
  return out;
}

// Turns `lits` (a clause falsified, or a cube satisfied, by the assignment
// before trail position `time`, apart from `implied`) into a derived
// constraint whose reduction keeps only such literals. Literals of the
// reduced quantifier that do not hold early enough are removed by
// resolving away every pivot-quantifier literal ranked above them.
std::vector<Literal> Engine::clean(ConstraintKind k, std::vector<Literal> lits, std::uint32_t time, Var implied,
                                   Provenance& prov) {
  const Quantifier rq = reducible_quantifier(k);
  const Quantifier pq = pivot_quantifier(k);
  for (;;) {
    std::uint32_t min_rank = kNever;
    for (Literal l : lits)
      if (vars_[l.var()].quantifier == rq && !holds_before(k, l, time))
        min_rank = std::min(min_rank, vars_[l.var()].rank);
    if (min_rank == kNever) return lits;
    Literal y;
    for (Literal l : lits) {
      const VarInfo& x = vars_[l.var()];
      if (x.quantifier != pq || l.var() == implied || x.rank <= min_rank) continue;
      if (!y.valid() || x.trail_pos > vars_[y.var()].trail_pos) y = l;
    }
    if (!y.valid()) return lits;
    const std::vector<Literal> reason = clean_reason(k, y.var(), prov);
    lits = resolve_on(k, lits, reason, y.var());
  }
}

const std::vector<Literal>& Engine::clean_reason(ConstraintKind k, Var v, Provenance& prov) {
  auto merge = [&](const Provenance& p) {
    prov.framed = prov.framed || p.framed;
    note_reduced(prov, p.reduced);
  };
  if (memo_stamp_[v] == memo_epoch_) {
    merge(memo_prov_[v]);
    return memo_[v];
  }
  const VarInfo& x = vars_[v];
  const ReasonKind want = k == ConstraintKind::Clause ? ReasonKind::Clause : ReasonKind::Cube;
  if (x.reason != want) throw std::logic_error("resolution pivot without antecedent");
  Stored& r = store(k)[x.reason_index];
  if (r.learned) r.activity += constraint_inc_;
  Provenance f{has_selector(r.lits), r.reduced};
  std::vector<Literal> lits = clean(k, r.lits, x.trail_pos, v, f);
  reduce_in_place(k, lits, f);
  memo_[v] = std::move(lits);
  memo_prov_[v] = f;
  memo_stamp_[v] = memo_epoch_;
  merge(f);
  return memo_[v];
}

Engine::Analysis Engine::analyze(ConstraintKind k, std::vector<Literal> start, Provenance prov) {
  if (++memo_epoch_ == 0) {
    std::fill(memo_stamp_.begin(), memo_stamp_.end(), 0);
    memo_epoch_ = 1;
  }
  const Quantifier pq = pivot_quantifier(k);
  Analysis a;
  a.prov = prov;
  std::vector<Literal> w = clean(k, std::move(start), kNever, 0, a.prov);
  reduce_in_place(k, w, a.prov);

  auto latest_pivot = [&](const std::vector<Literal>& lits) {
    Literal p;
    for (Literal l : lits) {
      const VarInfo& x = vars_[l.var()];
      if (x.quantifier != pq || x.reason == ReasonKind::Assumption || x.reason == ReasonKind::Fixed) continue;
      if (!p.valid() || x.trail_pos > vars_[p.var()].trail_pos) p = l;
    }
    return p;
  };

  for (;;) {
    const Literal p = latest_pivot(w);
    if (!p.valid() || vars_[p.var()].level == 0) break;
    const VarInfo& xp = vars_[p.var()];
    const std::uint32_t d = xp.level;
    bool asserting = true;
    std::uint32_t back = 0;
    for (Literal l : w) {
      if (l == p) continue;
      const VarInfo& x = vars_[l.var()];
      if (x.quantifier != pq && x.rank > xp.rank) continue;
      if (x.level >= d) asserting = false;
      back = std::max(back, x.level);
    }
    if (asserting) {
      a.lits = std::move(w);
      a.asserting = p;
      a.backjump = back;
      return a;
    }
    if (xp.reason == ReasonKind::Decision) throw std::logic_error("decision literal is not asserting");
    const std::vector<Literal> reason = clean_reason(k, p.var(), a.prov);
    w = resolve_on(k, w, reason, p.var());
    reduce_in_place(k, w, a.prov);
    bump_var(p.var());
  }
  // Only level-0 implications, assumptions and selectors remain.
  for (Literal p = latest_pivot(w); p.valid(); p = latest_pivot(w)) {
    const std::vector<Literal> reason = clean_reason(k, p.var(), a.prov);
    w = resolve_on(k, w, reason, p.var());
    reduce_in_place(k, w, a.prov);
  }
  a.lits = std::move(w);
  a.final = true;
  return a;
}

std::uint32_t Engine::add_learned(ConstraintKind k, std::vector<Literal> lits, Var reduced) {
  sort_lits(lits);
  Stored s;
  s.lits = std::move(lits);
  s.reduced = reduced;
  s.learned = true;
  s.activity = constraint_inc_;
  auto& st = store(k);
  st.push_back(std::move(s));
  visit_stamp_[kind_index(k)].push_back(0);
  ++learned_live_[kind_index(k)];
  if (k == ConstraintKind::Clause)
    ++stats_.learned_clauses;
  else
    ++stats_.learned_cubes;
  return static_cast<std::uint32_t>(st.size() - 1);
}

void Engine::report_learned(ConstraintKind k, const std::vector<Literal>& lits, bool framed, bool final) {
  if (!on_learned_) return;
  LearnedEvent e;
  e.kind = k;
  e.framed = framed;
  e.final = final;
  for (Literal l : lits) {
    if (is_selector(l.var()))
      ++e.selector_count;
    else
      e.literals.push_back(to_user(l));
  }
  on_learned_(e);
}

void Engine::bump_var(Var v) {
  VarInfo& x = vars_[v];
  if ((x.activity += var_inc_) > 1e100) {
    for (VarInfo& y : vars_) y.activity *= 1e-100;
    var_inc_ *= 1e-100;
  }
}

void Engine::decay_activities() {
  var_inc_ /= options_.var_decay;
  constraint_inc_ /= options_.constraint_decay;
  if (constraint_inc_ > 1e100) {
    for (auto* st : {&clauses_, &cubes_})
      for (Stored& s : *st) s.activity *= 1e-100;
    constraint_inc_ *= 1e-100;
  }
}

bool Engine::locked(ConstraintKind k, std::uint32_t index) const {
  const ReasonKind want = k == ConstraintKind::Clause ? ReasonKind::Clause : ReasonKind::Cube;
  for (Literal l : store(k)[index].lits) {
    const VarInfo& x = vars_[l.var()];
    if (x.value != Val::Undef && x.reason == want && x.reason_index == index) return true;
  }
  return false;
}

void Engine::reduce_learned(ConstraintKind k) {
  const std::size_t ki = kind_index(k);
  const std::size_t limit = options_.learned_limit + options_.learned_limit_step * deletion_rounds_[ki];
  if (learned_live_[ki] <= limit) return;
  ++deletion_rounds_[ki];
  auto& st = store(k);
  std::vector<std::uint32_t> candidates;
  for (std::uint32_t i = 0; i < st.size(); ++i)
    if (st[i].learned && !st[i].deleted && !locked(k, i)) candidates.push_back(i);
  std::sort(candidates.begin(), candidates.end(), [&](std::uint32_t a, std::uint32_t b) {
    if (st[a].activity != st[b].activity) return st[a].activity < st[b].activity;
    return a < b;
  });
  const std::size_t n = learned_live_[ki] / 2;
  for (std::size_t i = 0; i < candidates.size() && i < n; ++i) {
    Stored& s = st[candidates[i]];
    s.deleted = true;
    s.lits.clear();
    s.lits.shrink_to_fit();
    --learned_live_[ki];
  }
}

std::vector<Literal> Engine::current_model() const {
  std::vector<Literal> model;
  for (Literal l : trail_)
    if (vars_[l.var()].user != 0) model.push_back(l);
  sort_lits(model);
  return model;
}

void Engine::store_model(std::vector<Literal> model) {
  models_.push_back(std::move(model));
  if (models_.size() <= model_capacity_) return;
  if (model_capacity_ < options_.model_list_max_capacity)
    model_capacity_ = std::min(model_capacity_ * 2, options_.model_list_max_capacity);
  while (models_.size() > model_capacity_) models_.pop_front();
}

void Engine::learn(ConstraintKind k, Analysis& a) {
  for (Literal l : a.lits) bump_var(l.var());
  decay_activities();
  backjump(a.backjump);
  report_learned(k, a.lits, a.prov.framed, false);
  const std::uint32_t idx = add_learned(k, std::move(a.lits), a.prov.reduced);
  if (scan(k, idx) == Status::Final) {
    // Cannot happen for an asserting constraint; keep the search sound anyway.
    if (k == ConstraintKind::Clause)
      pending_conflict_ = idx;
    else
      pending_solution_ = idx;
  }
}

Verdict Engine::finish(ConstraintKind k, Analysis& a) {
  final_assumptions_.clear();
  for (Literal l : a.lits)
    if (vars_[l.var()].reason == ReasonKind::Assumption)
      final_assumptions_.push_back(k == ConstraintKind::Clause ? ~l : l);
  report_learned(k, a.lits, a.prov.framed, true);
  add_learned(k, std::move(a.lits), a.prov.reduced);
  return k == ConstraintKind::Clause ? Verdict::Unsat : Verdict::Sat;
}

// ---------------------------------------------------------------------------
// Search

std::optional<Literal> Engine::pick_branch() {
  for (std::size_t r = 0; r < group_free_.size(); ++r) {
    if (group_free_[r] == 0) continue;
    Var best = 0;
    for (Var v : group_vars_[r]) {
      const VarInfo& x = vars_[v];
      if (x.value != Val::Undef) continue;
      if (best == 0 || x.activity > vars_[best].activity ||
          (x.activity == vars_[best].activity && x.user < vars_[best].user))
        best = v;
    }
    if (best != 0) return Literal(best, !vars_[best].phase);
  }
  return std::nullopt;
}

Verdict Engine::search(double time_limit_s) {
  using Clock = std::chrono::steady_clock;
  const auto t0 = Clock::now();
  double restart_limit = static_cast<double>(options_.restart_first);
  std::uint64_t since_restart = 0;
  std::uint64_t steps = 0;

  for (;;) {
    const Outcome o = propagate();
    if (o.kind == Outcome::Conflict) {
      ++stats_.conflicts;
      ++since_restart;
      Stored& c = clauses_[o.index];
      if (c.learned) c.activity += constraint_inc_;
      Analysis a = analyze(ConstraintKind::Clause, c.lits, Provenance{has_selector(c.lits), c.reduced});
      if (a.final) return finish(ConstraintKind::Clause, a);
      learn(ConstraintKind::Clause, a);
      continue;
    }
    if (o.kind == Outcome::Solution || o.kind == Outcome::Model) {
      ++stats_.solutions;
      ++since_restart;
      std::vector<Literal> start;
      Provenance prov;
      if (o.kind == Outcome::Model) {
        start = current_model();
        store_model(start);
      } else {
        cubes_[o.index].activity += constraint_inc_;
        start = cubes_[o.index].lits;
        prov.reduced = cubes_[o.index].reduced;
      }
      Analysis a = analyze(ConstraintKind::Cube, std::move(start), prov);
      if (a.final) return finish(ConstraintKind::Cube, a);
      learn(ConstraintKind::Cube, a);
      continue;
    }

    if (time_limit_s > 0 && (++steps & 63) == 0 &&
        std::chrono::duration<double>(Clock::now() - t0).count() > time_limit_s)
      return Verdict::Unknown;
    if (since_restart >= restart_limit && level() > 0) {
      ++stats_.restarts;
      since_restart = 0;
      restart_limit *= options_.restart_factor;
      backjump(0);
      continue;
    }
    reduce_learned(ConstraintKind::Clause);
    reduce_learned(ConstraintKind::Cube);

    const std::optional<Literal> d = pick_branch();
    if (!d) {
      // Every variable is assigned but some clause is open: it must be
      // falsified. Report it as a conflict.
      for (std::uint32_t i = 0; i < clauses_.size(); ++i) {
        const Stored& c = clauses_[i];
        if (c.deleted || c.dormant) continue;
        if (std::none_of(c.lits.begin(), c.lits.end(), [&](Literal l) { return value(l) != Val::False; })) {
          pending_conflict_ = i;
          break;
        }
      }
      if (!pending_conflict_) throw std::logic_error("search exhausted without a verdict");
      continue;
    }
    trail_lim_.push_back(static_cast<std::uint32_t>(trail_.size()));
    ++stats_.decisions;
    assign(*d, ReasonKind::Decision, 0);
  }
}

Verdict Engine::solve(std::span<const Literal> user_assumptions, double time_limit_s) {
  const auto t0 = std::chrono::steady_clock::now();
  stats_ = SolveStats{};
  final_assumptions_.clear();
  last_assumptions_.clear();

  std::vector<Literal> assumptions;
  for (Literal u : user_assumptions) {
    const Literal l = to_internal(u);
    if (std::find(assumptions.begin(), assumptions.end(), ~l) != assumptions.end())
      throw UsageError("variable " + std::to_string(u.var()) + " assumed with both signs");
    if (std::find(assumptions.begin(), assumptions.end(), l) == assumptions.end()) assumptions.push_back(l);
  }

  prepare_solve();

  std::erase_if(assumptions, [&](Literal l) { return !vars_[l.var()].active; });
  std::uint32_t max_rank = 0;
  for (Literal l : assumptions) max_rank = std::max(max_rank, vars_[l.var()].rank);
  for (Var v = 1; v < vars_.size(); ++v) {
    const VarInfo& x = vars_[v];
    if (x.user == 0 || !x.active || x.rank >= max_rank) continue;
    const bool assumed = std::any_of(assumptions.begin(), assumptions.end(), [&](Literal l) { return l.var() == v; });
    if (!assumed)
      throw UsageError("assumptions skip variable " + std::to_string(x.user) + " of an enclosing block");
  }
  last_assumptions_ = assumptions;

  outermost_.reset();
  std::uint32_t best = kNever;
  for (Var v = 1; v < vars_.size(); ++v) {
    const VarInfo& x = vars_[v];
    if (x.user != 0 && x.active && x.rank < best) {
      best = x.rank;
      outermost_ = x.quantifier;
    }
  }

  attach_all(assumptions);
  const Verdict r = search(time_limit_s);
  stats_.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

std::vector<Literal> Engine::relevant_assumptions() const {
  std::uint32_t max_rank = 0;
  for (Literal l : final_assumptions_) max_rank = std::max(max_rank, vars_[l.var()].rank);
  std::vector<Literal> out;
  for (Literal l : last_assumptions_) {
    const bool used = std::find(final_assumptions_.begin(), final_assumptions_.end(), l) != final_assumptions_.end();
    if (used || vars_[l.var()].rank < max_rank) out.push_back(to_user(l));
  }
  return out;
}

}  // namespace iqbf
