#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ell/omega.hpp"

namespace ell {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind { Number, Symbol, Neg, Add, Sub, Mul, Div, Pow };

  Kind kind = Kind::Number;
  Rational number;        // Number
  std::string name;       // Symbol
  Exponent exponent = 0;  // Pow
  ExprPtr lhs;            // Neg, Pow and the binary kinds
  ExprPtr rhs;
  std::size_t line = 1;
  std::size_t column = 1;
};

enum class Relation { GE, LE, EQ };

/// sum(coeffs[name] * name) + constant
struct LinearForm {
  std::map<std::string, Rational, std::less<>> coeffs;
  Rational constant;
};

struct ConstraintStmt {
  LinearForm form;  // lhs - rhs
  Relation relation = Relation::GE;
  std::optional<Mode> tag;
  std::size_t line = 1;
  std::size_t column = 1;
};

struct SubstStmt {
  std::string name;
  ExprPtr value;
};

/// Syntactic content of an input file.
struct Document {
  std::vector<std::string> vars;
  std::vector<std::string> omegavars;
  std::vector<std::string> unknowns;
  std::optional<Mode> mode;
  std::vector<ConstraintStmt> constraints;
  std::vector<SubstStmt> substitutions;
  std::vector<ExprPtr> expressions;
};

/// Throws SyntaxError with the position of the first offending token.
Document parse_document(std::string_view text);
ExprPtr parse_expression(std::string_view text);

/// Linear evaluation; SyntaxError when e is not affine in its symbols.
LinearForm to_linear(const Expr& e);

struct PolyLess {
  bool operator()(const LaurentPoly& a, const LaurentPoly& b) const;
};

/// Rational function as a product of powers of normalized polynomials.
///
/// `rest` is a single term unless it came out of a sum; every multi-term
/// factor is scaled so its first term is 1, making factor identity structural.
struct ProductForm {
  LaurentPoly rest;
  std::map<LaurentPoly, Exponent, PolyLess> factors;
};

ProductForm evaluate(const Expr& e, const VarTable& vt);

/// NotElliott when a denominator factor has more than two terms.
ERat to_erat(const ProductForm& p);

struct RatFunc {
  LaurentPoly num;
  LaurentPoly den;
};
RatFunc to_ratfunc(const ProductForm& p);

ERat parse_erat(std::string_view text, const VarTable& vt);
RatFunc parse_ratfunc(std::string_view text, const VarTable& vt);
LaurentPoly parse_poly(std::string_view text, const VarTable& vt);

std::string format(const Rational& c);
std::string format(const Monomial& m, const VarTable& vt);
std::string format(const LaurentPoly& p, const VarTable& vt);
std::string format(const ERat& f, const VarTable& vt);
/// Terms joined with + and -; "0" for the empty sum.
std::string format(std::span<const ERat> s, const VarTable& vt);

}  // namespace ell
