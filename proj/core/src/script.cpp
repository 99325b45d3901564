#include "iqbf/script.hpp"

#include <charconv>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>

#include "iqbf/solver.hpp"

namespace iqbf {
namespace {

int parse_int(const std::string& tok, std::size_t line) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) throw ScriptError(line, "malformed integer '" + tok + "'");
  return v;
}

std::vector<int> zero_terminated(const std::vector<std::string>& toks, std::size_t line) {
  std::vector<int> out;
  for (std::size_t i = 1; i < toks.size(); ++i) {
    const int v = parse_int(toks[i], line);
    if (v == 0) {
      if (i + 1 != toks.size()) throw ScriptError(line, "tokens after terminating 0");
      return out;
    }
    out.push_back(v);
  }
  throw ScriptError(line, "missing terminating 0");
}

void expect_arity(const std::vector<std::string>& toks, std::size_t n, std::size_t line) {
  if (toks.size() != n) throw ScriptError(line, "wrong number of arguments to '" + toks[0] + "'");
}

}  // namespace

ScriptResult run_script(std::istream& in, std::ostream& log, const EngineOptions& options) {
  Solver solver(options);
  ScriptResult result;
  std::optional<Verdict> last;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    std::istringstream ss(text);
    std::vector<std::string> toks;
    for (std::string t; ss >> t;) toks.push_back(t);
    if (toks.empty() || toks[0] == "c" || toks[0][0] == '#') continue;
    const std::string& cmd = toks[0];
    try {
      if (cmd == "push") {
        expect_arity(toks, 1, line);
        solver.push();
      } else if (cmd == "pop") {
        expect_arity(toks, 1, line);
        solver.pop();
      } else if (cmd == "e" || cmd == "a") {
        const auto vars = zero_terminated(toks, line);
        const std::size_t b = solver.append_block(cmd == "e" ? Quantifier::Exists : Quantifier::Forall);
        for (int v : vars) {
          if (v <= 0) throw ScriptError(line, "variables in a block must be positive");
          solver.add_variable(b, static_cast<Var>(v));
        }
      } else if (cmd == "add") {
        const auto lits = zero_terminated(toks, line);
        solver.add_clause(std::span<const int>(lits));
      } else if (cmd == "assume") {
        expect_arity(toks, 2, line);
        const int l = parse_int(toks[1], line);
        if (l == 0) throw ScriptError(line, "cannot assume literal 0");
        solver.assume(l);
      } else if (cmd == "solve") {
        expect_arity(toks, 1, line);
        const Verdict v = solver.solve();
        const SolveStats& s = solver.stats();
        last = v;
        result.verdicts.push_back(v);
        result.stats.push_back(s);
        log << "solve " << result.verdicts.size() << " (line " << line << "): " << verdict_name(v)
            << "  assignments=" << s.assignments << " backtracks=" << s.backtracks << " decisions=" << s.decisions
            << " propagations=" << s.propagations << " time=" << s.wall_time_s << "s\n";
      } else if (cmd == "expect") {
        expect_arity(toks, 2, line);
        Verdict want;
        if (toks[1] == "sat" || toks[1] == "SAT")
          want = Verdict::Sat;
        else if (toks[1] == "unsat" || toks[1] == "UNSAT")
          want = Verdict::Unsat;
        else
          throw ScriptError(line, "expect takes 'sat' or 'unsat'");
        if (!last) throw ScriptError(line, "expect before any solve");
        if (*last != want)
          throw ScriptError(line, std::string("expected ") + verdict_name(want) + ", got " + verdict_name(*last));
      } else {
        throw ScriptError(line, "unknown command '" + cmd + "'");
      }
    } catch (const UsageError& e) {
      throw ScriptError(line, e.what());
    } catch (const std::invalid_argument& e) {
      throw ScriptError(line, e.what());
    }
  }
  return result;
}

}  // namespace iqbf
