#include "support.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "iqbf/oracle.hpp"

namespace iqbf::testing {

Clause lits(std::initializer_list<int> dimacs) {
  Clause c;
  for (int d : dimacs) c.push_back(Literal::from_dimacs(d));
  return c;
}

std::vector<Clause> clause_list(std::initializer_list<std::initializer_list<int>> clauses) {
  std::vector<Clause> out;
  for (auto c : clauses) out.push_back(lits(c));
  return out;
}

std::string to_string(const Clause& c) {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < c.size(); ++i) out << (i ? " " : "") << c[i];
  out << ')';
  return out.str();
}

Clause sorted(Clause c) {
  std::sort(c.begin(), c.end());
  return c;
}

Pcnf example1() {
  Pcnf f;
  f.prefix = Prefix{{Quantifier::Exists, {1}}, {Quantifier::Forall, {8}}, {Quantifier::Exists, {5, 2, 6, 4}}};
  for (int i = 1; i <= 6; ++i) f.clauses.push_back(example_clause(i));
  return f;
}

Clause example_clause(int i) {
  switch (i) {
    case 0: return lits({-2, -4});
    case 1: return lits({8, -5});
    case 2: return lits({2, -6});
    case 3: return lits({-1, 4});
    case 4: return lits({-8, -4});
    case 5: return lits({1, 6});
    case 6: return lits({4, 5});
    default: throw std::out_of_range("no such example clause");
  }
}

Prefix random_prefix(Rng& rng, std::size_t vars, std::size_t blocks) {
  Prefix p;
  Quantifier q = rng() % 2 ? Quantifier::Exists : Quantifier::Forall;
  for (std::size_t b = 0; b < blocks; ++b) {
    p.append_block(q);
    q = q == Quantifier::Exists ? Quantifier::Forall : Quantifier::Exists;
  }
  for (Var v = 1; v <= vars; ++v) p.add_variable(1 + rng() % blocks, v);
  return p;
}

Clause random_clause(Rng& rng, std::size_t vars, std::size_t max_len) {
  for (;;) {
    Clause c;
    const std::size_t len = 1 + rng() % max_len;
    for (std::size_t k = 0; k < len; ++k) c.push_back(Literal(static_cast<Var>(1 + rng() % vars), rng() % 2 == 0));
    if (auto n = normalize_clause(c)) return *n;
  }
}

Pcnf random_pcnf(Rng& rng, const RandomPcnfSpec& spec) {
  const std::size_t vars = 1 + rng() % spec.max_vars;
  const std::size_t blocks = 1 + rng() % spec.max_blocks;
  Pcnf f;
  f.prefix = random_prefix(rng, vars, blocks);
  const std::size_t n = rng() % (spec.max_clauses + 1);
  for (std::size_t i = 0; i < n; ++i) f.clauses.push_back(random_clause(rng, vars, spec.max_clause_len));
  return compact(f).formula;
}

Verdict skolem_eval(const Pcnf& f) {
  // Order the variables by block; for every existential, the universals
  // to its left form its dependency set. Enumerate all function tables.
  std::vector<Var> order;
  std::vector<Quantifier> quant;
  for (const Block& b : f.prefix.blocks())
    for (Var v : b.vars) {
      order.push_back(v);
      quant.push_back(b.quantifier);
    }
  const std::size_t n = order.size();
  std::vector<std::vector<std::size_t>> deps(n);
  std::vector<std::size_t> universals;
  std::size_t table_bits = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (quant[i] == Quantifier::Forall) {
      universals.push_back(i);
    } else {
      deps[i] = universals;
      table_bits += std::size_t{1} << deps[i].size();
    }
  }
  if (table_bits > 20 || universals.size() > 8) throw std::runtime_error("formula too large for skolem_eval");
  auto index_of = [&](Var v) { return static_cast<std::size_t>(std::find(order.begin(), order.end(), v) - order.begin()); };
  for (std::uint64_t tables = 0; tables < (std::uint64_t{1} << table_bits); ++tables) {
    bool all = true;
    for (std::uint64_t u = 0; u < (std::uint64_t{1} << universals.size()) && all; ++u) {
      std::vector<bool> val(n, false);
      for (std::size_t k = 0; k < universals.size(); ++k) val[universals[k]] = ((u >> k) & 1U) != 0;
      std::size_t offset = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (quant[i] == Quantifier::Forall) continue;
        std::size_t row = 0;
        for (std::size_t k = 0; k < deps[i].size(); ++k)
          if (val[deps[i][k]]) row |= std::size_t{1} << k;
        val[i] = ((tables >> (offset + row)) & 1U) != 0;
        offset += std::size_t{1} << deps[i].size();
      }
      for (const Clause& c : f.clauses) {
        const bool sat = std::any_of(c.begin(), c.end(), [&](Literal l) { return val[index_of(l.var())] != l.negated(); });
        if (!sat) {
          all = false;
          break;
        }
      }
    }
    if (all) return Verdict::Sat;
  }
  return Verdict::Unsat;
}

void ShadowStack::add(const Clause& c) {
  if (frames_.empty())
    base_.push_back(c);
  else
    frames_.back().push_back(c);
}

Pcnf ShadowStack::formula() const {
  Pcnf f;
  f.prefix = prefix_;
  f.clauses = base_;
  for (const auto& fr : frames_) f.clauses.insert(f.clauses.end(), fr.begin(), fr.end());
  return compact(f).formula;
}

std::vector<Literal> random_assumptions(Rng& rng, const Pcnf& f) {
  std::vector<Literal> out;
  for (const Block& b : f.prefix.blocks()) {
    bool all = true;
    for (Var v : b.vars) {
      if (rng() % 3 == 0) {
        all = false;
        continue;
      }
      out.push_back(Literal(v, rng() % 2 == 0));
    }
    if (!all || rng() % 2 == 0) break;
  }
  return out;
}

Verdict oracle_under(const Pcnf& f, const std::vector<Literal>& assumptions) {
  const Reduct r = apply_assignment(f, Assignment(assumptions));
  if (r.outcome == Outcome::True) return Verdict::Sat;
  if (r.outcome == Outcome::False) return Verdict::Unsat;
  return oracle_eval(r.residual);
}

ScriptCheck random_script_check(Rng& rng, bool keep_learned, std::size_t commands, const EngineOptions& base) {
  const std::size_t vars = 2 + rng() % 9;
  const Prefix prefix = random_prefix(rng, vars, 1 + rng() % 4);
  EngineOptions opts = base;
  opts.keep_learned = keep_learned;
  Solver solver(opts);
  solver.add_prefix(prefix);
  ShadowStack shadow(prefix);
  ScriptCheck out;
  std::ostringstream log;
  for (const Block& b : prefix.blocks()) {
    log << quantifier_char(b.quantifier);
    for (Var v : b.vars) log << ' ' << v;
    log << " 0\n";
  }
  solver.engine().set_learned_callback([&](const LearnedEvent& e) {
    if (e.kind != ConstraintKind::Clause || !e.framed) return;
    ++out.framed_learned;
    if (e.selector_count == 1) ++out.framed_one_selector;
  });
  const std::size_t n = 1 + rng() % commands;
  for (std::size_t i = 0; i < n; ++i) {
    const unsigned r = rng() % 10;
    if (r < 2) {
      solver.push();
      shadow.push();
      log << "push\n";
    } else if (r < 3 && shadow.depth() > 0) {
      solver.pop();
      shadow.pop();
      log << "pop\n";
    } else if (r < 7) {
      const Clause c = random_clause(rng, vars, 3);
      solver.add_clause(c);
      shadow.add(c);
      log << "add";
      for (Literal l : c) log << ' ' << l;
      log << " 0\n";
    } else {
      const Pcnf f = shadow.formula();
      const auto a = rng() % 2 ? random_assumptions(rng, f) : std::vector<Literal>{};
      for (Literal l : a) {
        solver.assume(l);
        log << "assume " << l << '\n';
      }
      const Verdict got = solver.solve();
      log << "solve\n";
      const Verdict want = oracle_under(f, a);
      ++out.solves;
      if (got != want) {
        ++out.mismatches;
        if (out.first_failure.empty()) {
          out.first_failure = std::string("solver ") + verdict_name(got) + " oracle " + verdict_name(want);
          out.transcript = log.str();
        }
      }
      const std::string audit = solver.engine().audit();
      if (!audit.empty()) {
        ++out.audit_failures;
        if (out.first_failure.empty()) out.first_failure = audit;
      }
    }
  }
  return out;
}

}  // namespace iqbf::testing
