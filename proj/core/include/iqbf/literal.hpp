#pragma once

#include <compare>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>

namespace iqbf {

/// Variable identifier. Id 0 is never a valid variable.
using Var = std::uint32_t;

enum class Quantifier : std::uint8_t { Exists, Forall };

inline char quantifier_char(Quantifier q) { return q == Quantifier::Exists ? 'e' : 'a'; }

/// A possibly negated variable, packed as 2*var + sign so it can index
/// per-literal tables directly.
class Literal {
 public:
  constexpr Literal() = default;
  constexpr Literal(Var v, bool negated) : code_((v << 1) | (negated ? 1U : 0U)) {}

  static Literal from_dimacs(int lit) {
    if (lit == 0) throw std::invalid_argument("literal 0 is not a literal");
    return Literal(static_cast<Var>(std::abs(lit)), lit < 0);
  }
  static constexpr Literal from_code(std::uint32_t code) {
    Literal l;
    l.code_ = code;
    return l;
  }

  constexpr Var var() const { return code_ >> 1; }
  constexpr bool negated() const { return (code_ & 1U) != 0; }
  constexpr std::uint32_t code() const { return code_; }
  constexpr bool valid() const { return var() != 0; }

  int to_dimacs() const {
    const int v = static_cast<int>(var());
    return negated() ? -v : v;
  }

  constexpr Literal operator~() const { return from_code(code_ ^ 1U); }

  friend constexpr bool operator==(Literal a, Literal b) = default;
  friend constexpr auto operator<=>(Literal a, Literal b) = default;

 private:
  std::uint32_t code_ = 0;
};

inline std::ostream& operator<<(std::ostream& os, Literal l) { return os << l.to_dimacs(); }

/// Thrown when an API precondition is violated by the caller.
class UsageError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace iqbf

template <>
struct std::hash<iqbf::Literal> {
  std::size_t operator()(iqbf::Literal l) const noexcept { return std::hash<std::uint32_t>{}(l.code()); }
};
