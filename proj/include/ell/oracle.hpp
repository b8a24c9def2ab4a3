#pragma once

#include <optional>
#include <vector>

#include "ell/model.hpp"

namespace ell {

/// Coefficients of the monomials whose bounded exponents lie in [0, bound]
/// with bounded total degree <= bound. Unbounded variables are unrestricted.
struct TruncatedSeries {
  Exponent bound = 0;
  /// Empty means every variable is bounded.
  std::vector<Var> unbounded;
  LaurentPoly terms;

  bool in_range(const Monomial& m) const;
};

/// Exhaustive scan of unknown tuples with every coordinate <= bound. The
/// monomials live in the working field of crude_gf(sys); substitutions apply.
TruncatedSeries enumerate_solutions(const ConstraintSystem& sys, Exponent bound);

/// Truncated expansion of the sum. Term by term, every factor 1 - c*m needs
/// m nonnegative and nonconstant in the bounded variables and every numerator
/// nonnegative bounded exponents. Without unbounded variables a sum that fails
/// this is expanded by total degree instead, which only needs the degree-zero
/// factors to cancel. NotExpandable otherwise.
TruncatedSeries expand_series(std::span<const ERat> s, Exponent bound, std::vector<Var> unbounded = {});

/// Throws BoundMismatch unless both series share bound and variable split.
bool series_equal(const TruncatedSeries& a, const TruncatedSeries& b);

/// Constant term in lambda by repeated Elliott reduction
///   1/((1-x l^j)(1-y l^-k)) = 1/(1-x y l^(j-k)) * (1/(1-x l^j) + 1/(1-y l^-k) - 1)
/// Factors involving lambda must be 1 - m (coefficient 1); UnsupportedShape otherwise.
ERatSum elliott_reduce_ct(const ERat& f, Var lambda);

}  // namespace ell
