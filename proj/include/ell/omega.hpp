#pragma once

#include <functional>
#include <vector>

#include "ell/parfrac.hpp"

namespace ell {

/// GE keeps nonnegative powers and sets the variable to 1; EQ takes the constant term.
enum class Mode { GE, EQ };

enum class OrderPolicy { Given, Heuristic };

struct ElimOptions {
  Strategy strategy = Strategy::Auto;
  OrderPolicy order = OrderPolicy::Given;
  bool combine = false;
  /// Cancel and lower factor powers in every new term.
  bool simplify = true;
};

struct Step {
  Var var;
  Mode mode = Mode::GE;
};

/// Denominator factors (with multiplicity) over all terms that contribute
/// to the positive part in lambda.
std::size_t cf_count(std::span<const ERat> s, Var lambda);

/// Called after every elimination with the variable and the new term count.
using StepObserver = std::function<void(Var, std::size_t)>;

ERatSum eliminate(ERatSum s, std::vector<Step> steps, const ElimOptions& opts = {}, const StepObserver& observe = {});
ERatSum omega_ge(ERatSum s, const std::vector<Var>& lambdas, const ElimOptions& opts = {});
ERatSum omega_eq(ERatSum s, const std::vector<Var>& lambdas, const ElimOptions& opts = {});

}  // namespace ell
