#include "iqbf/qdimacs.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace iqbf {
namespace {

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

long to_int(std::string_view tok, std::size_t line) {
  long value = 0;
  const auto* end = tok.data() + tok.size();
  const auto [ptr, ec] = std::from_chars(tok.data(), end, value);
  if (ec != std::errc{} || ptr != end) throw ParseError(line, "malformed token '" + std::string(tok) + "'");
  if (value > std::numeric_limits<int>::max() || value < -std::numeric_limits<int>::max())
    throw ParseError(line, "literal out of range '" + std::string(tok) + "'");
  return value;
}

// Integers of a 0-terminated line, without the terminator.
std::vector<long> terminated_ints(const std::vector<std::string_view>& toks, std::size_t first, std::size_t line) {
  std::vector<long> vals;
  for (std::size_t i = first; i < toks.size(); ++i) {
    const long v = to_int(toks[i], line);
    if (v == 0) {
      if (i + 1 != toks.size()) throw ParseError(line, "tokens after terminating 0");
      return vals;
    }
    vals.push_back(v);
  }
  throw ParseError(line, "missing terminating 0");
}

}  // namespace

QdimacsDocument parse_qdimacs_document(std::istream& in) {
  QdimacsDocument doc;
  Pcnf& f = doc.formula;
  bool header = false;
  bool seen_clause = false;
  std::size_t raw_clauses = 0;
  std::size_t lineno = 0;
  std::string line;
  while (std::getline(in, line)) {
    ++lineno;
    const auto toks = split(line);
    if (toks.empty()) continue;
    if (toks[0] == "c") continue;
    if (toks[0] == "p") {
      if (header) throw ParseError(lineno, "duplicate header");
      if (toks.size() != 4 || toks[1] != "cnf") throw ParseError(lineno, "expected 'p cnf <vars> <clauses>'");
      doc.declared_var_count = to_int(toks[2], lineno);
      doc.declared_clause_count = to_int(toks[3], lineno);
      if (doc.declared_var_count < 0 || doc.declared_clause_count < 0)
        throw ParseError(lineno, "negative count in header");
      header = true;
      continue;
    }
    if (!header) throw ParseError(lineno, "missing 'p cnf' header");
    if (toks[0] == "e" || toks[0] == "a") {
      if (seen_clause) throw ParseError(lineno, "quantifier line after the first clause");
      const Quantifier q = toks[0] == "e" ? Quantifier::Exists : Quantifier::Forall;
      const auto vars = terminated_ints(toks, 1, lineno);
      if (vars.empty()) continue;
      std::size_t block = f.prefix.size();
      if (f.prefix.empty() || f.prefix.block(block).quantifier != q) block = f.prefix.append_block(q);
      for (long v : vars) {
        if (v < 0) throw ParseError(lineno, "negative variable in quantifier line");
        if (f.prefix.declared(static_cast<Var>(v)))
          throw ParseError(lineno, "variable " + std::to_string(v) + " quantified twice");
        f.prefix.add_variable(block, static_cast<Var>(v));
      }
      continue;
    }
    seen_clause = true;
    ++raw_clauses;
    const auto ints = terminated_ints(toks, 0, lineno);
    Clause c;
    c.reserve(ints.size());
    for (long v : ints) {
      if (doc.declared_var_count > 0 && std::abs(v) > doc.declared_var_count)
        doc.warnings.push_back("line " + std::to_string(lineno) + ": variable " + std::to_string(std::abs(v)) +
                               " exceeds declared count");
      c.push_back(Literal::from_dimacs(static_cast<int>(v)));
    }
    if (auto n = normalize_clause(c)) f.clauses.push_back(std::move(*n));
  }
  if (!header) throw ParseError(lineno == 0 ? 1 : lineno, "missing 'p cnf' header");
  if (raw_clauses != static_cast<std::size_t>(doc.declared_clause_count))
    doc.warnings.push_back("header declares " + std::to_string(doc.declared_clause_count) + " clauses, found " +
                           std::to_string(raw_clauses));
  adopt_free_variables(f);
  f = compact(f).formula;
  return doc;
}

Pcnf parse_qdimacs(std::istream& in) { return parse_qdimacs_document(in).formula; }

Pcnf parse_qdimacs(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_qdimacs(in);
}

Pcnf read_qdimacs_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_qdimacs(in);
}

void write_qdimacs(std::ostream& out, const Pcnf& f) {
  Var max_var = f.prefix.max_var();
  for (const Clause& c : f.clauses)
    for (Literal l : c) max_var = std::max(max_var, l.var());
  out << "p cnf " << max_var << ' ' << f.clauses.size() << '\n';
  for (const Block& b : f.prefix.blocks()) {
    if (b.vars.empty()) continue;
    out << quantifier_char(b.quantifier);
    for (Var v : b.vars) out << ' ' << v;
    out << " 0\n";
  }
  for (const Clause& c : f.clauses) {
    for (Literal l : c) out << l.to_dimacs() << ' ';
    out << "0\n";
  }
}

std::string write_qdimacs(const Pcnf& f) {
  std::ostringstream out;
  write_qdimacs(out, f);
  return out.str();
}

}  // namespace iqbf
