#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ell/omega.hpp"

namespace ell {

/// sum(coeffs[i] * a_i) + constant, compared with 0.
struct LinearConstraint {
  std::vector<Exponent> coeffs;
  Exponent constant = 0;
  Mode relation = Mode::GE;
};

/// marker -> coeff * prod(name^exp)
struct MarkerSubst {
  std::string marker;
  Rational coeff{1};
  std::vector<std::pair<std::string, Exponent>> powers;
};

struct ConstraintSystem {
  std::vector<std::string> unknowns;
  std::vector<std::string> markers;  // markers[i] records unknowns[i]
  std::vector<std::string> lambdas;  // one per constraint; generated when empty
  std::vector<LinearConstraint> constraints;
  std::vector<MarkerSubst> substitutions;
  /// Order of the marker block in the working field; empty means `markers`.
  std::vector<std::string> marker_order;
};

/// An elimination problem: F, the working field, and the variables to remove.
struct Problem {
  ERat f;
  VarTable vt;
  std::vector<Step> steps;
  /// Applied to the result; targets are variables of vt.
  std::vector<std::pair<Var, Term>> substitutions;
};

/// Throws InvalidParams on inconsistent sizes or names.
void validate(const ConstraintSystem& sys);

/// One lambda per constraint, field order [lambdas..., markers..., extra
/// substitution targets...].
Problem crude_gf(const ConstraintSystem& sys);

ERatSum apply_substitutions(ERatSum s, const Problem& p);

/// Moves the substitutions into F, ahead of elimination.
Problem presubstitute(Problem p);

/// Eliminates every step, then applies the substitutions.
ERatSum solve(const Problem& p, const ElimOptions& opts = {}, const StepObserver& observe = {});

// Named problem families.
ConstraintSystem two_a_three_b();
ConstraintSystem triangle();
Problem kgon(int k);
Problem kgon_revisited(int k);
ConstraintSystem kgon_unordered(int k);
ConstraintSystem putnam_system(int t, int k, int c);
Problem putnam(int t, int k, int c);
ConstraintSystem magic(int n, bool single_marker = false);
Problem zeilberger(int n);

}  // namespace ell
