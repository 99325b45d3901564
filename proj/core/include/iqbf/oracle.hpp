#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>

#include "iqbf/formula.hpp"
#include "iqbf/qres.hpp"

namespace iqbf {

inline constexpr std::size_t kOracleDefaultBound = 24;

/// Raised when a formula has more variables than the oracle accepts.
class OracleBoundError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Expands the prefix recursively, one variable at a time. Free variables
/// are treated as outermost existentials.
Verdict oracle_eval(const Pcnf& f, std::size_t bound = kOracleDefaultBound);

/// Same recursion over the matrix (clauses) OR (any cube), i.e. an ACNF
/// with empty learned-clause part.
Verdict oracle_eval_acnf(const Pcnf& f, std::span<const Clause> cubes, std::size_t bound = kOracleDefaultBound);

/// Every clause has a true literal under a.
bool is_model(const Pcnf& f, const Assignment& a);

/// Whether conjoining a clause (disjoining a cube) preserves the verdict.
bool check_redundant(const Pcnf& f, const Constraint& c, std::size_t bound = kOracleDefaultBound);

}  // namespace iqbf
