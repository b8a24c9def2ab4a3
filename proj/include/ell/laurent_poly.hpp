#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "ell/monomial.hpp"

namespace ell {

using Rational = mpq_class;

Rational pow(const Rational& base, Exponent e);

/// A coefficient times a monomial.
struct Term {
  Rational coeff{1};
  Monomial mono;

  Term() = default;
  Term(Rational c, Monomial m = {}) : coeff(std::move(c)), mono(std::move(m)) {}

  bool is_zero() const { return sgn(coeff) == 0; }

  friend bool operator==(const Term& a, const Term& b) { return a.coeff == b.coeff && a.mono == b.mono; }
  friend Term operator*(const Term& a, const Term& b) { return {a.coeff * b.coeff, a.mono * b.mono}; }
  friend Term operator-(const Term& a) { return {-a.coeff, a.mono}; }
};

Term pow(const Term& t, Exponent e);
/// Throws DivisionByZero on a zero term.
Term inverse(const Term& t);

/// Sparse Laurent polynomial with exact rational coefficients.
///
/// Terms are kept in ascending field order with no zero coefficients, so the
/// zero polynomial has no terms and equality is structural.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  LaurentPoly(const Rational& c);  // NOLINT: constants convert implicitly
  LaurentPoly(long c) : LaurentPoly(Rational(c)) {}  // NOLINT
  LaurentPoly(Term t);                                // NOLINT

  /// Sorts and collects arbitrary terms.
  static LaurentPoly from_terms(std::vector<Term> terms);
  static LaurentPoly variable(Var v, Exponent e = 1) { return Term(1, Monomial::variable(v, e)); }

  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  /// Constant coefficient (0 for the zero polynomial); only meaningful for constants.
  Rational constant_term() const;

  bool depends_on(Var v) const;
  /// Highest and lowest exponent of v; both 0 for the zero polynomial.
  Exponent degree(Var v) const;
  Exponent min_degree(Var v) const;
  bool has_negative_exponents() const;

  LaurentPoly& operator+=(const LaurentPoly& rhs);
  LaurentPoly& operator-=(const LaurentPoly& rhs);
  LaurentPoly& operator*=(const LaurentPoly& rhs);
  LaurentPoly& operator*=(const Term& rhs);

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator*(LaurentPoly a, const Term& t) { return a *= t; }
  friend LaurentPoly operator*(const Term& t, LaurentPoly a) { return a *= t; }
  friend LaurentPoly operator-(LaurentPoly a);

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.terms_ == b.terms_; }

 private:
  std::vector<Term> terms_;
};

LaurentPoly pow(const LaurentPoly& p, unsigned e);

/// Replaces every occurrence v^d by r^d. A zero r requires d >= 0 for every
/// term (NegativePowerAtZero otherwise).
LaurentPoly substitute(const LaurentPoly& p, Var v, const Term& r);

/// Coefficient of v^d, a Laurent polynomial free of v.
LaurentPoly coefficient(const LaurentPoly& p, Var v, Exponent d);

/// Terms whose exponent of v is at least d.
LaurentPoly truncate_below(const LaurentPoly& p, Var v, Exponent d);

/// Splits p by the exponent of v; the map values are free of v.
std::map<Exponent, LaurentPoly> collect(const LaurentPoly& p, Var v);
LaurentPoly assemble(const std::map<Exponent, LaurentPoly>& parts, Var v);

/// A binomial in one variable: hi * v^hi_deg + lo * v^lo_deg with hi, lo free
/// of v, nonzero, and hi_deg > lo_deg.
struct VarBinomial {
  Var v;
  Term hi;
  Exponent hi_deg;
  Term lo;
  Exponent lo_deg;
};

/// Exact quotient n / b, or nullopt when b does not divide n.
std::optional<LaurentPoly> divide_exact(const LaurentPoly& n, const VarBinomial& b);

/// Polynomial quotient of n / b (remainder discarded); n must not contain
/// negative powers of b.v and b.lo_deg must be 0.
LaurentPoly quotient(const LaurentPoly& n, const VarBinomial& b);

}  // namespace ell
