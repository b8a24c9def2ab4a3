#include <algorithm>

#include "doctest.h"
#include "ell/error.hpp"
#include "ell/input.hpp"
#include "support.hpp"

using namespace ell;
using ell::test::Ctx;
using ell::test::Gen;

namespace {

ERat random_erat(Gen& g, std::size_t nvars) {
  std::vector<FactorPower> den;
  const long n = g.integer(0, 3);
  for (long i = 0; i < n; ++i) den.push_back({g.factor(nvars, -2, 2), static_cast<unsigned>(g.integer(1, 3))});
  return ERat(g.poly(nvars, 4, -2, 3), std::move(den));
}

SyntaxError syntax_error(std::string_view text) {
  try {
    parse_document(text);
  } catch (const SyntaxError& e) {
    return e;
  }
  FAIL("no syntax error for: " << text);
  return SyntaxError("", 0, 0);
}

}  // namespace

TEST_CASE("constraint document") {
  const Document doc = parse_document("vars x y; omegavars l; ge: 2a - 3b >= 0;");
  CHECK(doc.vars == std::vector<std::string>{"x", "y"});
  CHECK(doc.omegavars == std::vector<std::string>{"l"});
  REQUIRE(doc.constraints.size() == 1);
  CHECK(doc.constraints[0].tag == Mode::GE);

  const ConstraintSystem sys = to_system(doc);
  CHECK(sys.unknowns == std::vector<std::string>{"a", "b"});
  REQUIRE(sys.constraints.size() == 1);
  CHECK(sys.constraints[0].coeffs == std::vector<Exponent>{2, -3});
  CHECK(sys.constraints[0].relation == Mode::GE);

  const Problem p = crude_gf(sys);
  Ctx c(p.vt);
  CHECK(erat_equal(p.f, c.E("1/((1-l^2*x)*(1-y/l^3))")));
  REQUIRE(p.steps.size() == 1);
  CHECK(p.steps[0].var == c.v("l"));
  CHECK(p.steps[0].mode == Mode::GE);
}

TEST_CASE("expression document") {
  const Problem p = to_problem(parse_document("vars x y; omegavars l; expr: 1/((1-l^2*x)*(1-y/l^3));"));
  Ctx c(p.vt);
  CHECK(p.vt.name(0) == "l");
  CHECK(erat_equal(p.f, c.E("1/((1-l^2*x)*(1-y*l^-3))")));
  CHECK(p.steps.size() == 1);

  CHECK_THROWS_AS(to_problem(parse_document("vars x y; expr: 1/(1-x-y);")), NotElliott);
}

TEST_CASE("relations, tags and defaults") {
  const Document doc = parse_document(
      "# comment line\n"
      "mode eq;\n"
      "a + 2b - 3c + 1 = 0;\n"
      "b <= c + 4;\n");
  CHECK(doc.mode == Mode::EQ);
  const ConstraintSystem sys = to_system(doc);
  CHECK(sys.unknowns == std::vector<std::string>{"a", "b", "c"});
  CHECK(sys.markers == std::vector<std::string>{"x1", "x2", "x3"});
  REQUIRE(sys.constraints.size() == 2);
  CHECK(sys.constraints[0].coeffs == std::vector<Exponent>{1, 2, -3});
  CHECK(sys.constraints[0].constant == 1);
  CHECK(sys.constraints[0].relation == Mode::EQ);
  // b <= c + 4 becomes c - b + 4 >= 0
  CHECK(sys.constraints[1].coeffs == std::vector<Exponent>{0, -1, 1});
  CHECK(sys.constraints[1].constant == 4);
  CHECK(sys.constraints[1].relation == Mode::GE);

  CHECK_THROWS_AS(to_system(parse_document("vars x; a + b >= 0;")), InvalidParams);
  CHECK_THROWS_AS(to_system(parse_document("a/2 >= 0;")), SyntaxError);
  CHECK_THROWS_AS(to_system(parse_document("unknowns a; a + b >= 0;")), SyntaxError);
}

TEST_CASE("marker substitutions") {
  const ConstraintSystem sys = to_system(parse_document("vars x y; a - b >= 0; subst x = q; subst y = 2*q^2;"));
  REQUIRE(sys.substitutions.size() == 2);
  CHECK(sys.substitutions[0].marker == "x");
  CHECK(sys.substitutions[0].powers == std::vector<std::pair<std::string, Exponent>>{{"q", 1}});
  CHECK(sys.substitutions[1].coeff == 2);
  CHECK(sys.substitutions[1].powers == std::vector<std::pair<std::string, Exponent>>{{"q", 2}});
  CHECK_THROWS_AS(to_system(parse_document("vars x; a >= 0; subst x = 1 + q;")), SyntaxError);
}

TEST_CASE("syntax errors carry a position") {
  const SyntaxError strict = syntax_error("vars x y;\nomegavars l;\n2a - 3b > 0;");
  CHECK(strict.line() == 3);
  CHECK(strict.column() == 9);

  const SyntaxError paren = syntax_error("vars x;\nexpr: (1-x;");
  CHECK(paren.line() == 2);
  CHECK(paren.column() == 11);

  const SyntaxError bad = syntax_error("vars x;\n  x $ 1;");
  CHECK(bad.line() == 2);
  CHECK(bad.column() == 5);

  const SyntaxError tag = syntax_error("eq: a - b >= 0;");
  CHECK(tag.line() == 1);
  CHECK(tag.column() == 11);

  // nonlinear constraint
  CHECK_THROWS_AS(parse_document("a*b >= 0;"), SyntaxError);
}

TEST_CASE("expression grammar") {
  Ctx c{"l", "x", "y"};
  CHECK(c.P("2x - -y + x^-2*3") == c.P("2*x + y + 3*x^-2"));
  CHECK(c.P("(x+1)^3") == c.P("1 + 3x + 3x^2 + x^3"));
  CHECK(c.P("3(x+y)") == c.P("3x + 3y"));
  CHECK(erat_equal(c.E("1/(x^-1 - y)"), c.E("x/(1-x*y)")));
  CHECK(erat_equal(c.E("x/(1-x) + 1/(1-x)"), c.E("(1+x)/(1-x)")));
  CHECK_THROWS_AS(c.E("1/(x-x)"), SyntaxError);
}

TEST_CASE("format_output examples") {
  Ctx c{"x"};
  CHECK(c.str(ERatSum{c.E("1/(1-x)")}) == "1/(1-x)");
  const ERat combined = erat_combine(ERatSum{c.E("x/(1-x)"), c.E("1/(1-x)")});
  CHECK(c.str(combined) == "(1+x)/(1-x)");
  CHECK(c.str(ERatSum{}) == "0");
  CHECK(c.str(ERat()) == "0");
}

TEST_CASE("property: parse after format is the identity") {
  Gen g(31);
  Ctx c{"l", "x", "y"};
  for (int i = 0; i < 300; ++i) {
    const ERat f = random_erat(g, 3);
    const std::string text = c.str(f);
    CHECK_MESSAGE(erat_equal(c.E(text), f), text);

    const ERatSum s{random_erat(g, 3), random_erat(g, 3)};
    const std::string sum_text = c.str(s);
    CHECK_MESSAGE(erat_equal(ERatSum{c.E(sum_text)}, s), sum_text);
  }
}

TEST_CASE("property: formatting is deterministic") {
  Gen g(32);
  Ctx c{"l", "x", "y"};
  for (int i = 0; i < 200; ++i) {
    ERatSum s;
    const long n = g.integer(1, 5);
    for (long k = 0; k < n; ++k) s.push_back(random_erat(g, 3));
    ERatSum shuffled = s;
    std::shuffle(shuffled.begin(), shuffled.end(), g.rng);
    sort_terms(s);
    sort_terms(shuffled);
    CHECK(c.str(s) == c.str(shuffled));
    CHECK(c.str(s) == c.str(s));
  }
}
