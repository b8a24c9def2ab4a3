#pragma once

#include <optional>
#include <vector>

#include "ell/erat.hpp"

namespace ell {

/// unit * (lambda^j - z) with z free of lambda and j > 0.
struct NormalizedFactor {
  Term unit;
  Exponent j = 1;
  Term z;
};

/// Rewrites 1 - c*m relative to lambda; nullopt when m does not involve lambda.
std::optional<NormalizedFactor> normalize_factor(const Factor& f, Var lambda);

/// Expanded lambda^j - z.
LaurentPoly expand(const NormalizedFactor& f, Var lambda);

/// True iff the proper fraction over lambda^j - z expands in nonnegative
/// powers of lambda, that is z < lambda^j.
bool contributes(const NormalizedFactor& f, Var lambda);

/// Reduces p modulo lambda^j - z: lambda^d * m -> lambda^(d mod j) * z^floor(d/j) * m.
LaurentPoly frac_mod(const LaurentPoly& p, Var lambda, Exponent j, const Term& z);

/// False iff lambda^j1 - z1 and lambda^j2 - z2 have a common root.
bool coprime_test(const NormalizedFactor& f1, const NormalizedFactor& f2);

struct CrossFrac {
  LaurentPoly num;
  Binomial den_extra;
};

/// Fractional part of 1/((lambda^j - a)(lambda^k - b)) with respect to the
/// first factor, as num / ((lambda^j - a) * den_extra). Throws NotCoprime.
CrossFrac cross_frac(const NormalizedFactor& f1, const NormalizedFactor& f2, Var lambda);

struct FactorGroup {
  std::vector<NormalizedFactor> members;  // repeated factors appear repeatedly
  bool contributes = false;
};

struct Grouping {
  std::vector<FactorGroup> groups;
  std::vector<FactorPower> lambda_free;
  /// Numerator divided by every unit, a Laurent polynomial in lambda.
  LaurentPoly numerator;
};

Grouping group_factors(const ERat& f, Var lambda);

/// Fractional part of the grouped function with respect to the product of
/// the members of groups[index].
ERatSum frac_wrt_group(const Grouping& g, std::size_t index, Var lambda);

/// Nonnegative-power part of the Laurent polynomial part.
ERat polynomial_part(const Grouping& g, Var lambda);

enum class Strategy { Auto, Direct, Complement };

struct PTResult {
  ERatSum terms;
  Strategy strategy_used = Strategy::Direct;
};

/// Terms of F with nonnegative powers of lambda.
PTResult pt_one(const ERat& f, Var lambda, Strategy strategy = Strategy::Auto);

/// Constant term in lambda.
ERatSum ct_one(const ERat& f, Var lambda, Strategy strategy = Strategy::Auto);

/// Value at lambda = 0 of a function regular there. Factors with a negative
/// power of lambda are turned around first; NegativePowerAtZero on a pole.
ERat evaluate_at_zero(const ERat& f, Var lambda);

}  // namespace ell
