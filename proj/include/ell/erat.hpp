#pragma once

#include <optional>
#include <span>
#include <vector>

#include "ell/laurent_poly.hpp"

namespace ell {

/// Canonical Elliott factor `1 - coeff * mono` with `Monomial{} < mono`, so
/// that 1/(1 - coeff*mono) is the geometric series in coeff*mono.
struct Factor {
  Rational coeff{1};
  Monomial mono;

  friend bool operator==(const Factor& a, const Factor& b) { return a.mono == b.mono && a.coeff == b.coeff; }
  friend bool operator<(const Factor& a, const Factor& b) {
    if (const auto c = a.mono <=> b.mono; c != 0) return c < 0;
    return cmp(a.coeff, b.coeff) < 0;
  }
};

struct FactorPower {
  Factor factor;
  unsigned mult = 1;

  friend bool operator==(const FactorPower&, const FactorPower&) = default;
};

/// A raw difference of two terms, `(lhs - rhs)^mult`.
struct Binomial {
  Term lhs;
  Term rhs;
  unsigned mult = 1;
};

/// `lhs - rhs == unit * (1 - c*m)`, or `unit` alone when both monomials agree.
struct CanonicalBinomial {
  Term unit;
  std::optional<Factor> factor;
};

CanonicalBinomial canonicalize(const Term& lhs, const Term& rhs);

/// Expanded value `1 - coeff*mono`.
LaurentPoly expand(const Factor& f);

/// Exact quotient p / (1 - c*m), or nullopt if it does not divide.
std::optional<LaurentPoly> divide(const LaurentPoly& p, const Factor& f);

/// Elliott-rational function: numerator / prod(factor^mult).
///
/// Monomial and constant prefactors of the denominator live in the numerator;
/// denominator factors are canonical, sorted, and distinct. No cancellation
/// between numerator and denominator happens implicitly.
class ERat {
 public:
  ERat() = default;
  ERat(LaurentPoly numerator);  // NOLINT
  ERat(LaurentPoly numerator, std::vector<FactorPower> denominator);

  /// numerator / prod(lhs - rhs)^mult. Throws DivisionByZero on a zero binomial.
  static ERat from_binomials(LaurentPoly numerator, std::span<const Binomial> denominator);

  const LaurentPoly& numerator() const noexcept { return num_; }
  const std::vector<FactorPower>& denominator() const noexcept { return den_; }
  bool is_zero() const noexcept { return num_.is_zero(); }
  /// Total number of denominator factors counted with multiplicity.
  unsigned factor_count() const noexcept;

  ERat& operator*=(const ERat& rhs);
  ERat& operator*=(const Term& t);
  friend ERat operator*(ERat a, const ERat& b) { return a *= b; }
  friend ERat operator-(ERat a) {
    a.num_ = -a.num_;
    return a;
  }

  /// Structural equality; see erat_equal for value equality.
  friend bool operator==(const ERat&, const ERat&) = default;

 private:
  void normalize();

  LaurentPoly num_;
  std::vector<FactorPower> den_;
};

using ERatSum = std::vector<ERat>;

/// Product with numerators multiplied and factor multisets merged.
inline ERat erat_mul(const ERat& a, const ERat& b) { return a * b; }

/// Replaces v by r (nonzero) in numerator and factors. Factors that become
/// constant are folded into the numerator; DivisionByZero if one vanishes.
ERat substitute(const ERat& f, Var v, const Term& r);

/// Evaluates at v = 0. Every factor containing v must contain it with a
/// positive exponent and the numerator must have no negative power of v.
ERat substitute_zero(const ERat& f, Var v);

/// v -> 1 in every entry; DivergentAtUnity if a factor vanishes.
ERatSum erat_subst_unity(const ERatSum& s, Var v);
ERatSum substitute(const ERatSum& s, Var v, const Term& r);

/// Single fraction over the least common multiple of the denominators, with
/// denominator factors cancelled where the numerator is exactly divisible.
ERat erat_combine(std::span<const ERat> s);

/// Single fraction over the least common multiple, no cancellation.
ERat common_denominator(std::span<const ERat> s);

/// Cancels denominator factors that divide the numerator.
ERat cancel(const ERat& f);

/// Replaces a factor 1 - c*w^d by 1 - r*w^(d/p), r^p = c, whenever the
/// numerator is divisible by the cofactor. Repeats until nothing changes.
ERat lower_powers(const ERat& f);

/// cancel followed by lower_powers.
ERat simplify(const ERat& f);

/// Deterministic order: by denominator, then numerator.
void sort_terms(ERatSum& s);

bool is_zero_sum(std::span<const ERat> s);
bool erat_equal(std::span<const ERat> a, std::span<const ERat> b);
bool erat_equal(const ERat& a, const ERat& b);

/// Product of the denominator factors, expanded.
LaurentPoly expand_denominator(const ERat& f);

/// True iff the sum equals num/den as rational functions; den must be nonzero.
bool equals_rational(std::span<const ERat> s, const LaurentPoly& num, const LaurentPoly& den);

}  // namespace ell
