#pragma once

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "iqbf/engine.hpp"

namespace iqbf {

/// A grammar, usage or expectation failure in an incremental script.
class ScriptError : public std::runtime_error {
 public:
  ScriptError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct ScriptResult {
  std::vector<Verdict> verdicts;
  std::vector<SolveStats> stats;
};

/// Runs a script of one command per line:
///
///   push | pop | e V.. 0 | a V.. 0 | add L.. 0 | assume L | solve | expect sat|unsat
///
/// Lines starting with 'c' and blank lines are ignored. `e`/`a` append a
/// quantifier block. A summary line per solve goes to `log`.
ScriptResult run_script(std::istream& in, std::ostream& log, const EngineOptions& options = {});

}  // namespace iqbf
