#include "iqbf/qres.hpp"

#include "iqbf/oracle.hpp"

namespace iqbf {

Constraint initial_cube(const Pcnf& f, const Assignment& model) {
  if (!is_model(f, model)) throw UsageError("initial_cube: assignment is not a model");
  Constraint c;
  c.kind = ConstraintKind::Cube;
  for (Literal l : model.literals()) {
    if (!f.prefix.declared(l.var())) throw UsageError("initial_cube: undeclared variable " + std::to_string(l.var()));
    c.literals.push_back(l);
  }
  sort_by_order(f.prefix, c.literals);
  return c;
}

}  // namespace iqbf
