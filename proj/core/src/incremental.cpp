// Prefix editing, the clause stack and the maintenance of learned
// constraints between solver calls.

#include <algorithm>
#include <sstream>

#include "iqbf/engine.hpp"

namespace iqbf {

// ---------------------------------------------------------------------------
// Prefix

std::size_t Engine::add_block(std::size_t position, Quantifier q) {
  if (position == 0 || position > blocks_.size() + 1)
    throw UsageError("invalid block position " + std::to_string(position));
  blocks_.insert(blocks_.begin() + static_cast<std::ptrdiff_t>(position - 1), UserBlock{q, {}});
  for (VarInfo& x : vars_)
    if (x.user != 0 && x.block >= position - 1) ++x.block;
  return position;
}

void Engine::add_variable(std::size_t block, Var user) {
  if (user == 0) throw UsageError("variable id 0 is reserved");
  if (block == 0 || block > blocks_.size()) throw UsageError("block index " + std::to_string(block) + " out of range");
  if (declared(user)) throw UsageError("variable " + std::to_string(user) + " declared twice");
  const Var v = new_var(blocks_[block - 1].quantifier, user);
  vars_[v].block = static_cast<std::uint32_t>(block - 1);
  blocks_[block - 1].vars.push_back(v);
  if (user_to_internal_.size() <= user) user_to_internal_.resize(user + 1, 0);
  user_to_internal_[user] = v;
}

bool Engine::declared(Var user) const { return user < user_to_internal_.size() && user_to_internal_[user] != 0; }

std::size_t Engine::block_of(Var user) const { return vars_[internal(user)].block + 1; }

Quantifier Engine::quantifier_of(Var user) const { return vars_[internal(user)].quantifier; }

Prefix Engine::user_prefix() const {
  Prefix p;
  for (const UserBlock& b : blocks_) {
    const std::size_t idx = p.append_block(b.quantifier);
    for (Var v : b.vars) p.add_variable(idx, vars_[v].user);
  }
  return p;
}

// Blocks without active variables get odd ranks and do not separate their
// neighbours; maximal runs of equally quantified active blocks share one
// even rank. Selectors keep rank 0.
std::vector<std::uint32_t> Engine::effective_ranks() const {
  std::vector<std::uint32_t> rank(vars_.size(), 0);
  std::uint32_t group = 0;
  bool have_last = false;
  Quantifier last = Quantifier::Exists;
  for (const UserBlock& b : blocks_) {
    const bool any = std::any_of(b.vars.begin(), b.vars.end(), [&](Var v) { return vars_[v].occurrences > 0; });
    if (any && (!have_last || last != b.quantifier)) {
      group += 2;
      last = b.quantifier;
      have_last = true;
    }
    for (Var v : b.vars) rank[v] = any ? group : group + 1;
  }
  return rank;
}

void Engine::recompute_ranks() {
  const auto rank = effective_ranks();
  for (Var v = 1; v < vars_.size(); ++v)
    if (vars_[v].user != 0) {
      vars_[v].rank = rank[v];
      vars_[v].active = vars_[v].occurrences > 0;
    }
}

void Engine::check_assumption(Literal user_lit, std::span<const Literal> earlier) const {
  const Var v = internal(user_lit.var());
  for (Literal e : earlier)
    if (e == ~user_lit) throw UsageError("variable " + std::to_string(user_lit.var()) + " assumed with both signs");
  if (vars_[v].occurrences == 0) return;
  const auto rank = effective_ranks();
  for (Var w = 1; w < vars_.size(); ++w) {
    const VarInfo& x = vars_[w];
    if (x.user == 0 || x.occurrences == 0 || rank[w] >= rank[v]) continue;
    const bool covered =
        std::any_of(earlier.begin(), earlier.end(), [&](Literal e) { return e.var() == x.user; });
    if (!covered)
      throw UsageError("cannot assume variable " + std::to_string(user_lit.var()) + ": variable " +
                       std::to_string(x.user) + " of an enclosing block is not assumed");
  }
}

// ---------------------------------------------------------------------------
// Clause stack

void Engine::set_merge_selectors(bool merge) {
  if (used_frames_) throw UsageError("selector merging must be configured before the first push");
  options_.merge_selectors = merge;
}

std::size_t Engine::push() {
  if (manual_mode_) throw UsageError("push is not available with manually declared selectors");
  const Var s = new_var(Quantifier::Exists, 0);
  vars_[s].selector = true;
  vars_[s].frame = static_cast<std::int64_t>(frames_.size());
  frames_.push_back(Frame{s, false});
  stack_.push_back(frames_.size() - 1);
  used_frames_ = true;
  return frames_.size() - 1;
}

std::size_t Engine::pop() {
  if (stack_.empty()) throw UsageError("pop on an empty clause stack");
  const std::size_t f = stack_.back();
  stack_.pop_back();
  frames_[f].popped = true;
  for (const Stored& c : clauses_) {
    if (c.deleted || c.learned || c.frame != static_cast<std::int64_t>(f)) continue;
    for (Literal l : c.lits)
      if (vars_[l.var()].user != 0) --vars_[l.var()].occurrences;
  }
  return f;
}

void Engine::add_clause(std::span<const Literal> user_lits) {
  Stored c;
  c.frame = stack_.empty() ? -1 : static_cast<std::int64_t>(stack_.back());
  c.pending = true;
  for (Literal u : user_lits) c.lits.push_back(to_internal(u));
  for (Literal l : c.lits) ++vars_[l.var()].occurrences;
  if (c.frame >= 0) c.lits.push_back(Literal(frames_[c.frame].selector, false));
  sort_lits(c.lits);
  clauses_.push_back(std::move(c));
}

void Engine::declare_selector(Var user) {
  if (used_frames_) throw UsageError("manual selectors cannot be mixed with push/pop");
  const Var v = internal(user);
  if (vars_[v].block != 0 || vars_[v].quantifier != Quantifier::Exists)
    throw UsageError("selector " + std::to_string(user) + " must belong to an outermost existential block");
  manual_mode_ = true;
  options_.merge_selectors = false;
}

// ---------------------------------------------------------------------------
// Between solver calls

bool Engine::clause_disabled(const Stored& c) const {
  if (!c.learned) return !frame_enabled(c.frame);
  return std::any_of(c.lits.begin(), c.lits.end(), [&](Literal l) {
    const VarInfo& x = vars_[l.var()];
    return x.selector && frames_[x.frame].popped;
  });
}

void Engine::wipe_learned() {
  for (auto* st : {&clauses_, &cubes_})
    for (Stored& s : *st)
      if (s.learned) s.deleted = true;
  models_.clear();
}

void Engine::prepare_solve() {
  reset_trail();
  if (!options_.keep_learned) wipe_learned();

  // Variables that lost (or gained) all their occurrences.
  std::vector<bool> removed(vars_.size(), false);
  bool any_removed = false;
  bool changed = false;
  for (Var v = 1; v < vars_.size(); ++v) {
    const VarInfo& x = vars_[v];
    if (x.user == 0) continue;
    const bool occurs = x.occurrences > 0;
    if (x.active && !occurs) removed[v] = any_removed = true;
    changed = changed || x.active != occurs;
  }
  if (changed) {
    recompute_ranks();
    for (auto* st : {&clauses_, &cubes_})
      for (Stored& s : *st) sort_lits(s.lits);
  }

  if (any_removed) {
    auto strip = [&](std::vector<Literal>& lits) {
      std::erase_if(lits, [&](Literal l) { return removed[l.var()]; });
    };
    for (Stored& q : cubes_) {
      if (q.deleted) continue;
      strip(q.lits);
      Provenance prov{false, q.reduced};
      reduce_in_place(ConstraintKind::Cube, q.lits, prov);
      q.reduced = prov.reduced;
      sort_lits(q.lits);
    }
    for (auto& m : models_) strip(m);
  }

  std::vector<std::uint32_t> added;
  for (std::uint32_t i = 0; i < clauses_.size(); ++i) {
    Stored& c = clauses_[i];
    if (!c.pending) continue;
    c.pending = false;
    if (!c.deleted && frame_enabled(c.frame)) added.push_back(i);
  }
  if (!added.empty()) {
    for (Stored& q : cubes_) q.deleted = true;
    std::deque<std::vector<Literal>> kept;
    std::vector<char> mark(2 * vars_.size() + 2, 0);
    for (auto& m : models_) {
      for (Literal l : m) mark[l.code()] = 1;
      const bool model = std::all_of(added.begin(), added.end(), [&](std::uint32_t ci) {
        const auto& lits = clauses_[ci].lits;
        return std::any_of(lits.begin(), lits.end(), [&](Literal l) { return mark[l.code()] != 0; });
      });
      for (Literal l : m) mark[l.code()] = 0;
      if (model) kept.push_back(std::move(m));
    }
    models_ = std::move(kept);
    for (const auto& m : models_) {
      std::vector<Literal> cube = m;
      Provenance prov;
      reduce_in_place(ConstraintKind::Cube, cube, prov);
      add_learned(ConstraintKind::Cube, std::move(cube), prov.reduced);
    }
  }

  maybe_collect_garbage();
  compact_storage();
}

void Engine::maybe_collect_garbage() {
  std::size_t total = 0;
  std::size_t disabled = 0;
  for (const Stored& c : clauses_) {
    if (c.deleted) continue;
    ++total;
    if (clause_disabled(c)) ++disabled;
  }
  const auto threshold = std::max<double>(static_cast<double>(options_.gc_min_disabled),
                                          options_.gc_fraction * static_cast<double>(total));
  if (disabled == 0 || static_cast<double>(disabled) <= threshold) return;
  for (Stored& c : clauses_)
    if (!c.deleted && clause_disabled(c)) c.deleted = true;
  for (const Frame& f : frames_)
    if (f.popped) vars_[f.selector].retired = true;
  ++gc_runs_;
}

void Engine::compact_storage() {
  for (ConstraintKind k : {ConstraintKind::Clause, ConstraintKind::Cube}) {
    auto& st = store(k);
    std::erase_if(st, [](const Stored& s) { return s.deleted; });
    std::size_t live = 0;
    for (Stored& s : st) {
      s.watch[0] = s.watch[1] = Literal();
      if (s.learned) ++live;
    }
    learned_live_[k == ConstraintKind::Clause ? 0 : 1] = live;
  }
  for (auto& m : models_) sort_lits(m);
}

// ---------------------------------------------------------------------------
// Views

Pcnf Engine::enabled_formula() const {
  Pcnf f;
  f.prefix = user_prefix();
  for (const Stored& c : clauses_) {
    if (c.deleted || c.learned || !frame_enabled(c.frame)) continue;
    Clause out;
    for (Literal l : c.lits)
      if (!is_selector(l.var())) out.push_back(to_user(l));
    f.clauses.push_back(std::move(out));
  }
  return compact(f).formula;
}

std::vector<Clause> Engine::learned_clauses() const {
  std::vector<Clause> out;
  for (const Stored& c : clauses_) {
    if (c.deleted || !c.learned || clause_disabled(c)) continue;
    Clause u;
    for (Literal l : c.lits)
      if (!is_selector(l.var())) u.push_back(to_user(l));
    out.push_back(std::move(u));
  }
  return out;
}

std::vector<Clause> Engine::learned_cubes() const {
  std::vector<Clause> out;
  for (const Stored& q : cubes_) {
    if (q.deleted) continue;
    Clause u;
    for (Literal l : q.lits) u.push_back(to_user(l));
    out.push_back(std::move(u));
  }
  return out;
}

std::vector<Clause> Engine::stored_models() const {
  std::vector<Clause> out;
  for (const auto& m : models_) {
    Clause u;
    for (Literal l : m) u.push_back(to_user(l));
    out.push_back(std::move(u));
  }
  return out;
}

std::size_t Engine::selector_count() const {
  std::size_t n = 0;
  for (const Frame& f : frames_)
    if (!vars_[f.selector].retired) ++n;
  return n;
}

void Engine::seed_model(std::span<const Literal> user_lits) {
  std::vector<Literal> m;
  for (Literal u : user_lits) m.push_back(to_internal(u));
  sort_lits(m);
  store_model(std::move(m));
}

std::string Engine::audit() const {
  std::ostringstream out;
  std::vector<std::uint32_t> occ(vars_.size(), 0);
  for (const Stored& c : clauses_) {
    if (c.deleted || c.learned || !frame_enabled(c.frame)) continue;
    for (Literal l : c.lits)
      if (!is_selector(l.var())) ++occ[l.var()];
  }
  for (Var v = 1; v < vars_.size(); ++v)
    if (!is_selector(v) && occ[v] != vars_[v].occurrences)
      out << "occurrence count of " << vars_[v].user << " is " << vars_[v].occurrences << ", expected " << occ[v]
          << '\n';
  for (ConstraintKind k : {ConstraintKind::Clause, ConstraintKind::Cube})
    for (const Stored& s : store(k)) {
      if (s.deleted) continue;
      for (std::size_t i = 0; i < s.lits.size(); ++i) {
        if (is_selector(s.lits[i].var()) && s.lits[i].negated()) out << "negative selector literal\n";
        for (std::size_t j = i + 1; j < s.lits.size(); ++j)
          if (s.lits[i].var() == s.lits[j].var()) out << "variable repeated in a stored constraint\n";
      }
    }
  for (const Frame& f : frames_)
    if (vars_[f.selector].retired)
      for (const Stored& c : clauses_)
        if (!c.deleted && std::find(c.lits.begin(), c.lits.end(), Literal(f.selector, false)) != c.lits.end())
          out << "retired selector still referenced\n";
  return out.str();
}

}  // namespace iqbf
