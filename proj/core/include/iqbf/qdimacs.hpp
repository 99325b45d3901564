#pragma once

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "iqbf/formula.hpp"

namespace iqbf {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct QdimacsDocument {
  long declared_var_count = 0;
  long declared_clause_count = 0;
  Pcnf formula;
  std::vector<std::string> warnings;  // header count mismatches and similar
};

QdimacsDocument parse_qdimacs_document(std::istream& in);
Pcnf parse_qdimacs(std::istream& in);
Pcnf parse_qdimacs(std::string_view text);
Pcnf read_qdimacs_file(const std::string& path);

void write_qdimacs(std::ostream& out, const Pcnf& f);
std::string write_qdimacs(const Pcnf& f);

}  // namespace iqbf
