#include "doctest.h"
#include "ell/error.hpp"
#include "support.hpp"

using namespace ell;
using ell::test::Ctx;
using ell::test::Gen;

namespace {

ERat random_erat(Gen& g, std::size_t nvars) {
  std::vector<FactorPower> den;
  const long n = g.integer(0, 3);
  for (long i = 0; i < n; ++i) den.push_back({g.factor(nvars, -1, 2), static_cast<unsigned>(g.integer(1, 2))});
  return ERat(g.poly(nvars, 3, -1, 2), std::move(den));
}

}  // namespace

TEST_CASE("binomial canonicalization") {
  Ctx c{"x", "y"};
  for (const auto& [a, b] : std::vector<std::pair<std::string, std::string>>{
           {"x", "y"}, {"y", "x"}, {"1", "x"}, {"x", "1"}, {"2x^2", "-3y"}, {"x^-1", "y^2"}}) {
    const Term lhs = c.T(a), rhs = c.T(b);
    const auto [unit, factor] = canonicalize(lhs, rhs);
    REQUIRE(factor.has_value());
    CHECK(Monomial{} < factor->mono);
    CHECK(LaurentPoly(unit) * expand(*factor) == LaurentPoly(lhs) - LaurentPoly(rhs));
  }
  const auto [u, f] = canonicalize(c.T("3x"), c.T("x"));
  CHECK_FALSE(f.has_value());
  CHECK(u == c.T("2x"));
}

TEST_CASE("parsing produces canonical factors") {
  Ctx c{"x", "y"};
  const ERat a = c.E("1/(x-1)");
  REQUIRE(a.denominator().size() == 1);
  CHECK(a.numerator() == LaurentPoly(-1));
  CHECK(a.denominator()[0].factor == Factor{1, c.M("x")});
  CHECK(c.str(c.E("1/(y-x)^2")) == "x^-2/(1-x^-1*y)^2");
  CHECK_THROWS_AS(c.E("1/(1-x-y)"), NotElliott);
}

TEST_CASE("erat_mul examples") {
  Ctx c{"x", "y"};
  CHECK(c.E("1/(1-x)") * c.E("1/(1-y)") == c.E("1/((1-x)*(1-y))"));
  const ERat m = c.E("x/(1-x)") * ERat(c.P("1-x"));
  CHECK(m.numerator() == c.P("x - x^2"));
  CHECK(m.factor_count() == 1);
  CHECK(c.E("2/(1-x)") * ERat(LaurentPoly(3)) == c.E("6/(1-x)"));
}

TEST_CASE("erat_subst_unity examples") {
  Ctx c{"l", "x", "y"};
  const Var l = c.v("l");
  const ERatSum s = erat_subst_unity({c.E("l*x/(l-y)")}, l);
  CHECK(erat_equal(s, ERatSum{c.E("x/(1-y)")}));
  CHECK_THROWS_AS(erat_subst_unity({c.E("1/(1-l)")}, l), DivergentAtUnity);
  CHECK_THROWS_AS(erat_subst_unity({c.E("1/(1-l^2*x^0)")}, l), DivergentAtUnity);
}

TEST_CASE("erat_equal examples") {
  Ctx c{"x", "y"};
  CHECK(erat_equal(c.E("x/(1-x)"), c.E("-x/(x-1)")));
  CHECK(erat_equal(c.E("1/((1-x)*(1-y))"), erat_mul(c.E("1/(1-x)"), c.E("1/(1-y)"))));
  CHECK_FALSE(erat_equal(c.E("1/(1-x)"), c.E("1/(1-y)")));
}

TEST_CASE("erat_combine examples") {
  Ctx c{"x", "y"};
  const ERatSum s{c.E("1/(1-x)"), c.E("x/(1-x)")};
  const ERat r = erat_combine(s);
  CHECK(c.str(r) == "(1+x)/(1-x)");
  CHECK(erat_combine(ERatSum{c.E("1/(1-x)"), c.E("-1/(1-x)")}).is_zero());
  CHECK(c.str(erat_combine(ERatSum{c.E("1/(1-x)"), c.E("-x/(1-x)")})) == "1");
  CHECK(c.str(erat_combine(ERatSum{c.E("1/(1-x)^2"), c.E("-x/(1-x)^2")})) == "1/(1-x)");
}

TEST_CASE("comparison against a general rational function") {
  Ctx c{"q"};
  const RatFunc golden = parse_ratfunc("(1+q)/(1+q+q^2)", c.vt);
  CHECK(equals_rational(ERatSum{c.E("(1-q^2)/(1-q^3)")}, golden.num, golden.den));
  CHECK_FALSE(equals_rational(ERatSum{c.E("1/(1-q^3)")}, golden.num, golden.den));
}

TEST_CASE("property: equality, combination and substitution") {
  Gen g(21);
  for (int i = 0; i < 200; ++i) {
    const ERatSum s{random_erat(g, 3), random_erat(g, 3), random_erat(g, 3)};
    const ERat combined = erat_combine(s);
    CHECK(erat_equal(s, ERatSum{combined}));
    CHECK(erat_equal(s, s));
    ERatSum rev(s.rbegin(), s.rend());
    CHECK(erat_equal(rev, s));
    for (const auto& fp : combined.denominator()) CHECK(Monomial{} < fp.factor.mono);

    const Var v = static_cast<Var>(g.integer(0, 2));
    try {
      const ERatSum a = erat_subst_unity(s, v);
      const ERatSum b = erat_subst_unity(ERatSum{combined}, v);
      CHECK(erat_equal(a, b));
    } catch (const DivergentAtUnity&) {
    }
  }
}
