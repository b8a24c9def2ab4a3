#pragma once

#include "ell/model.hpp"
#include "ell/text.hpp"

namespace ell {

/// Constraint documents. Unknowns come from `unknowns` or else every name in
/// the constraints, sorted; `vars` pairs with them by position (markers
/// x1, x2, ... when absent). Omega variables come from `omegavars`.
ConstraintSystem to_system(const Document& doc);

/// Expression documents: F is the (common-denominator) sum of the
/// expressions, the working field is [omegavars, vars, other symbols], and
/// every omega variable is eliminated in the document mode (GE by default).
Problem to_problem(const Document& doc);

}  // namespace ell
