#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "ell/erat.hpp"
#include "ell/error.hpp"
#include "ell/model.hpp"
#include "ell/oracle.hpp"
#include "ell/text.hpp"

namespace ell::test {

// Parsing shorthands bound to one variable table.
struct Ctx {
  VarTable vt;

  explicit Ctx(std::initializer_list<std::string> names) : vt(names) {}
  explicit Ctx(VarTable t) : vt(std::move(t)) {}

  Var v(std::string_view name) const { return vt.at(name); }
  LaurentPoly P(std::string_view s) const { return parse_poly(s, vt); }
  ERat E(std::string_view s) const { return parse_erat(s, vt); }
  Monomial M(std::string_view s) const {
    const LaurentPoly p = P(s);
    return p.terms().front().mono;
  }
  Term T(std::string_view s) const {
    const LaurentPoly p = P(s);
    return p.is_zero() ? Term(0) : p.terms().front();
  }
  std::string str(const ERat& f) const { return format(f, vt); }
  std::string str(const LaurentPoly& p) const { return format(p, vt); }
  std::string str(std::span<const ERat> s) const { return format(s, vt); }
};

// Small random objects for property tests.
struct Gen {
  std::mt19937_64 rng;

  explicit Gen(std::uint64_t seed) : rng(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }
  bool coin() { return integer(0, 1) == 1; }

  Rational coeff(long range = 3) {
    long n = 0;
    while (n == 0) n = integer(-range, range);
    return n;
  }

  Monomial monomial(std::size_t nvars, Exponent lo, Exponent hi) {
    std::vector<Exponent> e(nvars);
    for (auto& x : e) x = integer(lo, hi);
    return Monomial(e);
  }

  LaurentPoly poly(std::size_t nvars, std::size_t max_terms, Exponent lo, Exponent hi) {
    std::vector<Term> ts;
    const auto n = integer(0, static_cast<long>(max_terms));
    for (long i = 0; i < n; ++i) ts.emplace_back(coeff(), monomial(nvars, lo, hi));
    return LaurentPoly::from_terms(std::move(ts));
  }

  // A canonical factor 1 - c*m with m a nontrivial monomial.
  Factor factor(std::size_t nvars, Exponent lo, Exponent hi, bool unit_coeff = false) {
    Monomial m;
    while (m.is_one()) m = monomial(nvars, lo, hi);
    Rational c = unit_coeff ? Rational(coin() ? 1 : -1) : coeff(2);
    if (m < Monomial{}) return Factor{1 / c, m.inverse()};
    return Factor{c, m};
  }

  // Up to max_unknowns unknowns and max_constraints constraints, coefficients
  // in [-3, 3], small constants, an occasional equation.
  ConstraintSystem system(long max_unknowns, long max_constraints) {
    ConstraintSystem sys;
    const long n = integer(1, max_unknowns);
    for (long i = 1; i <= n; ++i) {
      sys.unknowns.push_back("a" + std::to_string(i));
      sys.markers.push_back("x" + std::to_string(i));
    }
    const long m = integer(1, max_constraints);
    for (long r = 0; r < m; ++r) {
      LinearConstraint c{std::vector<Exponent>(static_cast<std::size_t>(n), 0), integer(-2, 2),
                         integer(0, 3) == 0 ? Mode::EQ : Mode::GE};
      while (std::all_of(c.coeffs.begin(), c.coeffs.end(), [](Exponent k) { return k == 0; }))
        for (auto& k : c.coeffs) k = integer(-3, 3);
      sys.constraints.push_back(std::move(c));
    }
    return sys;
  }
};

// Distinct denominator factors over both sums; exact comparison is cheap
// only while this stays small.
inline std::size_t distinct_factors(const ERatSum& a, const ERatSum& b) {
  std::vector<Factor> all;
  for (const auto* s : {&a, &b})
    for (const auto& t : *s)
      for (const auto& fp : t.denominator()) all.push_back(fp.factor);
  std::sort(all.begin(), all.end());
  return static_cast<std::size_t>(std::unique(all.begin(), all.end()) - all.begin());
}

}  // namespace ell::test
