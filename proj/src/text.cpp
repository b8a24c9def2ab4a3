#include "ell/text.hpp"

#include <cctype>
#include <sstream>

#include "ell/error.hpp"

namespace ell {

namespace {

enum class Tok { Ident, Number, Plus, Minus, Star, Slash, Caret, LParen, RParen, Semi, Colon, Eq, Ge, Le, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    const std::size_t l = line, cl = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      out.push_back({Tok::Ident, std::string(src.substr(i, j - i)), l, cl});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      out.push_back({Tok::Number, std::string(src.substr(i, j - i)), l, cl});
      advance(j - i);
      continue;
    }
    Tok k;
    std::size_t len = 1;
    switch (c) {
      case '+': k = Tok::Plus; break;
      case '-': k = Tok::Minus; break;
      case '*': k = Tok::Star; break;
      case '/': k = Tok::Slash; break;
      case '^': k = Tok::Caret; break;
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      case ';': k = Tok::Semi; break;
      case ':': k = Tok::Colon; break;
      case '=': k = Tok::Eq; break;
      case '>':
      case '<':
        if (i + 1 >= src.size() || src[i + 1] != '=')
          throw SyntaxError("strict inequalities are not supported; use >= or <=", l, cl);
        k = c == '>' ? Tok::Ge : Tok::Le;
        len = 2;
        break;
      default:
        throw SyntaxError(std::string("unexpected character '") + c + "'", l, cl);
    }
    out.push_back({k, std::string(src.substr(i, len)), l, cl});
    advance(len);
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

bool ends_in_number(const Expr& e) {
  return e.kind == Expr::Kind::Number || (e.kind == Expr::Kind::Neg && ends_in_number(*e.lhs));
}

ExprPtr node(Expr::Kind k, const Token& at, ExprPtr lhs = nullptr, ExprPtr rhs = nullptr) {
  auto e = std::make_shared<Expr>();
  e->kind = k;
  e->lhs = std::move(lhs);
  e->rhs = std::move(rhs);
  e->line = at.line;
  e->column = at.column;
  return e;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(lex(src)) {}

  Document document() {
    Document doc;
    while (peek().kind != Tok::End) {
      if (accept(Tok::Semi)) continue;
      statement(doc);
      if (!accept(Tok::Semi) && peek().kind != Tok::End) fail(peek(), "expected ';'");
    }
    return doc;
  }

  ExprPtr whole_expression() {
    ExprPtr e = sum();
    accept(Tok::Semi);
    if (peek().kind != Tok::End) fail(peek(), "unexpected trailing input");
    return e;
  }

 private:
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  const Token& take() { return toks_[std::min(pos_++, toks_.size() - 1)]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }
  const Token& expect(Tok k, const char* what) {
    if (peek().kind != k) fail(peek(), std::string("expected ") + what);
    return take();
  }
  [[noreturn]] static void fail(const Token& t, const std::string& msg) {
    throw SyntaxError(msg + (t.kind == Tok::End ? " at end of input" : " near '" + t.text + "'"), t.line, t.column);
  }

  bool keyword(std::string_view word) const { return peek().kind == Tok::Ident && peek().text == word; }

  void statement(Document& doc) {
    if ((keyword("vars") || keyword("omegavars") || keyword("unknowns")) &&
        (peek(1).kind == Tok::Ident || peek(1).kind == Tok::Semi)) {
      const std::string kw = take().text;
      auto& list = kw == "vars" ? doc.vars : kw == "omegavars" ? doc.omegavars : doc.unknowns;
      while (peek().kind == Tok::Ident) list.push_back(take().text);
      return;
    }
    if (keyword("mode") && peek(1).kind == Tok::Ident) {
      take();
      const Token& m = take();
      if (m.text == "ge")
        doc.mode = Mode::GE;
      else if (m.text == "eq")
        doc.mode = Mode::EQ;
      else
        fail(m, "mode must be 'ge' or 'eq'");
      return;
    }
    if (keyword("subst") && peek(1).kind == Tok::Ident && peek(2).kind == Tok::Eq) {
      take();
      std::string name = take().text;
      take();
      doc.substitutions.push_back({std::move(name), sum()});
      return;
    }
    if (keyword("expr") && peek(1).kind == Tok::Colon) {
      take();
      take();
      doc.expressions.push_back(sum());
      return;
    }
    std::optional<Mode> tag;
    if ((keyword("ge") || keyword("eq")) && peek(1).kind == Tok::Colon) {
      tag = take().text == "ge" ? Mode::GE : Mode::EQ;
      take();
    }
    const Token& start = peek();
    ExprPtr lhs = sum();
    std::optional<Relation> rel;
    const Token& op = peek();
    if (accept(Tok::Ge))
      rel = Relation::GE;
    else if (accept(Tok::Le))
      rel = Relation::LE;
    else if (accept(Tok::Eq))
      rel = Relation::EQ;
    if (!rel) {
      if (tag) fail(peek(), "expected a relation");
      doc.expressions.push_back(std::move(lhs));
      return;
    }
    if (tag && (*tag == Mode::EQ) != (*rel == Relation::EQ)) fail(op, "relation does not match the constraint tag");
    ExprPtr rhs = sum();
    ConstraintStmt c;
    c.form = to_linear(*lhs);
    const LinearForm r = to_linear(*rhs);
    for (const auto& [name, k] : r.coeffs) {
      Rational& slot = c.form.coeffs[name];
      slot -= k;
      if (sgn(slot) == 0) c.form.coeffs.erase(name);
    }
    c.form.constant -= r.constant;
    c.relation = *rel;
    c.tag = tag;
    c.line = start.line;
    c.column = start.column;
    doc.constraints.push_back(std::move(c));
  }

  ExprPtr sum() {
    ExprPtr e = product();
    for (;;) {
      const Token& t = peek();
      if (accept(Tok::Plus))
        e = node(Expr::Kind::Add, t, e, product());
      else if (accept(Tok::Minus))
        e = node(Expr::Kind::Sub, t, e, product());
      else
        return e;
    }
  }

  ExprPtr product() {
    ExprPtr e = unary();
    bool after_number = ends_in_number(*e);
    for (;;) {
      const Token& t = peek();
      if (accept(Tok::Star)) {
        ExprPtr r = unary();
        after_number = r->kind == Expr::Kind::Number;
        e = node(Expr::Kind::Mul, t, e, r);
      } else if (accept(Tok::Slash)) {
        ExprPtr r = unary();
        after_number = r->kind == Expr::Kind::Number;
        e = node(Expr::Kind::Div, t, e, r);
      } else if (after_number && (t.kind == Tok::Ident || t.kind == Tok::LParen)) {
        // implicit product such as 2b or 3(x+1)
        e = node(Expr::Kind::Mul, t, e, power());
        after_number = false;
      } else {
        return e;
      }
    }
  }

  ExprPtr unary() {
    const Token& t = peek();
    if (accept(Tok::Minus)) return node(Expr::Kind::Neg, t, unary());
    if (accept(Tok::Plus)) return unary();
    return power();
  }

  ExprPtr power() {
    ExprPtr base = atom();
    const Token& t = peek();
    if (!accept(Tok::Caret)) return base;
    const bool neg = accept(Tok::Minus);
    const Token& n = expect(Tok::Number, "an integer exponent");
    if (n.text.size() > 18) fail(n, "exponent too large");
    auto e = node(Expr::Kind::Pow, t, base);
    const Exponent v = std::stoll(n.text);
    std::const_pointer_cast<Expr>(e)->exponent = neg ? -v : v;
    return e;
  }

  ExprPtr atom() {
    const Token& t = peek();
    if (accept(Tok::Number)) {
      auto e = node(Expr::Kind::Number, t);
      std::const_pointer_cast<Expr>(e)->number = Rational(mpz_class(t.text));
      return e;
    }
    if (accept(Tok::Ident)) {
      auto e = node(Expr::Kind::Symbol, t);
      std::const_pointer_cast<Expr>(e)->name = t.text;
      return e;
    }
    if (accept(Tok::LParen)) {
      ExprPtr e = sum();
      expect(Tok::RParen, "')'");
      return e;
    }
    fail(t, "expected an expression");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

[[noreturn]] void fail_at(const Expr& e, const std::string& msg) { throw SyntaxError(msg, e.line, e.column); }

bool is_constant(const LinearForm& f) { return f.coeffs.empty(); }

LinearForm scaled(LinearForm f, const Rational& k) {
  if (sgn(k) == 0) return {};
  for (auto& [name, c] : f.coeffs) c *= k;
  f.constant *= k;
  return f;
}

LinearForm added(LinearForm a, const LinearForm& b, int sign) {
  for (const auto& [name, c] : b.coeffs) {
    Rational& slot = a.coeffs[name];
    slot += sign * c;
    if (sgn(slot) == 0) a.coeffs.erase(name);
  }
  a.constant += sign * b.constant;
  return a;
}

// ProductForm helpers.

void absorb(ProductForm& p, const LaurentPoly& poly, Exponent e) {
  if (e == 0) return;
  if (poly.is_zero()) {
    if (e < 0) throw DivisionByZero("division by zero");
    p.rest = LaurentPoly{};
    p.factors.clear();
    return;
  }
  const Term lead = poly.terms().front();
  p.rest *= pow(lead, e);
  if (poly.size() == 1) return;
  LaurentPoly normalized = poly * inverse(lead);
  auto [it, inserted] = p.factors.emplace(std::move(normalized), e);
  if (!inserted) {
    it->second = checked_add(it->second, e);
    if (it->second == 0) p.factors.erase(it);
  }
}

void promote(ProductForm& p) {
  if (p.rest.size() <= 1) return;
  LaurentPoly r = std::move(p.rest);
  p.rest = LaurentPoly(1);
  absorb(p, r, 1);
}

ProductForm mul(ProductForm a, ProductForm b) {
  promote(a);
  promote(b);
  if (a.rest.is_zero() || b.rest.is_zero()) return {};
  a.rest *= b.rest;
  for (const auto& [f, e] : b.factors) absorb(a, f, e);
  return a;
}

ProductForm power_of(ProductForm a, Exponent e) {
  if (e == 0) return {LaurentPoly(1), {}};
  promote(a);
  if (a.rest.is_zero()) {
    if (e < 0) throw DivisionByZero("division by zero");
    return {};
  }
  ProductForm r{LaurentPoly(pow(a.rest.terms().front(), e)), {}};
  for (const auto& [f, k] : a.factors) r.factors.emplace(f, checked_mul(k, e));
  return r;
}

LaurentPoly positive_part(const ProductForm& p) {
  LaurentPoly n = p.rest;
  for (const auto& [f, e] : p.factors)
    if (e > 0) n *= pow(f, static_cast<unsigned>(e));
  return n;
}

ProductForm add(const ProductForm& a, const ProductForm& b, int sign) {
  std::map<LaurentPoly, Exponent, PolyLess> lcm;
  for (const auto* p : {&a, &b})
    for (const auto& [f, e] : p->factors)
      if (e < 0) lcm[f] = std::max(lcm[f], -e);
  auto lift = [&](const ProductForm& p) {
    LaurentPoly n = positive_part(p);
    for (const auto& [f, need] : lcm) {
      Exponent have = 0;
      if (auto it = p.factors.find(f); it != p.factors.end() && it->second < 0) have = -it->second;
      if (need > have) n *= pow(f, static_cast<unsigned>(need - have));
    }
    return n;
  };
  ProductForm r;
  r.rest = lift(a);
  if (sign > 0)
    r.rest += lift(b);
  else
    r.rest -= lift(b);
  if (r.rest.is_zero()) return {};
  for (const auto& [f, e] : lcm) r.factors.emplace(f, -e);
  return r;
}

void put_term(std::ostringstream& os, const Term& t, const VarTable& vt) {
  if (t.mono.is_one()) {
    os << format(t.coeff);
    return;
  }
  if (t.coeff == -1)
    os << '-';
  else if (t.coeff != 1)
    os << format(t.coeff) << '*';
  os << format(t.mono, vt);
}

}  // namespace

bool PolyLess::operator()(const LaurentPoly& a, const LaurentPoly& b) const {
  const auto& x = a.terms();
  const auto& y = b.terms();
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
    if (const auto c = x[i].mono <=> y[i].mono; c != 0) return c < 0;
    if (const int c = cmp(x[i].coeff, y[i].coeff); c != 0) return c < 0;
  }
  return x.size() < y.size();
}

Document parse_document(std::string_view text) { return Parser(text).document(); }

ExprPtr parse_expression(std::string_view text) { return Parser(text).whole_expression(); }

LinearForm to_linear(const Expr& e) {
  using K = Expr::Kind;
  switch (e.kind) {
    case K::Number:
      return {{}, e.number};
    case K::Symbol: {
      LinearForm f;
      f.coeffs.emplace(e.name, 1);
      return f;
    }
    case K::Neg:
      return scaled(to_linear(*e.lhs), -1);
    case K::Add:
      return added(to_linear(*e.lhs), to_linear(*e.rhs), 1);
    case K::Sub:
      return added(to_linear(*e.lhs), to_linear(*e.rhs), -1);
    case K::Mul: {
      LinearForm a = to_linear(*e.lhs);
      LinearForm b = to_linear(*e.rhs);
      if (is_constant(a)) return scaled(std::move(b), a.constant);
      if (is_constant(b)) return scaled(std::move(a), b.constant);
      fail_at(e, "constraint is not linear");
    }
    case K::Div: {
      LinearForm b = to_linear(*e.rhs);
      if (!is_constant(b)) fail_at(e, "constraint is not linear");
      if (sgn(b.constant) == 0) fail_at(e, "division by zero");
      return scaled(to_linear(*e.lhs), 1 / b.constant);
    }
    case K::Pow: {
      LinearForm a = to_linear(*e.lhs);
      if (e.exponent == 1) return a;
      if (!is_constant(a)) fail_at(e, "constraint is not linear");
      if (sgn(a.constant) == 0 && e.exponent < 0) fail_at(e, "division by zero");
      return {{}, pow(a.constant, e.exponent)};
    }
  }
  fail_at(e, "unsupported expression");
}

ProductForm evaluate(const Expr& e, const VarTable& vt) {
  using K = Expr::Kind;
  switch (e.kind) {
    case K::Number:
      return {LaurentPoly(e.number), {}};
    case K::Symbol: {
      const auto v = vt.find(e.name);
      if (!v) fail_at(e, "unknown variable '" + e.name + "'");
      return {LaurentPoly::variable(*v), {}};
    }
    case K::Neg: {
      ProductForm p = evaluate(*e.lhs, vt);
      p.rest = -p.rest;
      return p;
    }
    case K::Add:
      return add(evaluate(*e.lhs, vt), evaluate(*e.rhs, vt), 1);
    case K::Sub:
      return add(evaluate(*e.lhs, vt), evaluate(*e.rhs, vt), -1);
    case K::Mul:
      return mul(evaluate(*e.lhs, vt), evaluate(*e.rhs, vt));
    case K::Div: {
      ProductForm d = evaluate(*e.rhs, vt);
      if (d.rest.is_zero()) fail_at(e, "division by zero");
      return mul(evaluate(*e.lhs, vt), power_of(std::move(d), -1));
    }
    case K::Pow: {
      ProductForm b = evaluate(*e.lhs, vt);
      if (b.rest.is_zero() && e.exponent < 0) fail_at(e, "division by zero");
      return power_of(std::move(b), e.exponent);
    }
  }
  fail_at(e, "unsupported expression");
}

ERat to_erat(const ProductForm& p) {
  std::vector<FactorPower> den;
  for (const auto& [f, e] : p.factors) {
    if (e >= 0) continue;
    if (f.size() != 2) throw NotElliott("denominator factor with " + std::to_string(f.size()) + " terms");
    const Term& t = f.terms()[1];
    den.push_back({Factor{-t.coeff, t.mono}, static_cast<unsigned>(-e)});
  }
  return ERat(positive_part(p), std::move(den));
}

RatFunc to_ratfunc(const ProductForm& p) {
  LaurentPoly den(1);
  for (const auto& [f, e] : p.factors)
    if (e < 0) den *= pow(f, static_cast<unsigned>(-e));
  return {positive_part(p), std::move(den)};
}

ERat parse_erat(std::string_view text, const VarTable& vt) { return to_erat(evaluate(*parse_expression(text), vt)); }

RatFunc parse_ratfunc(std::string_view text, const VarTable& vt) {
  return to_ratfunc(evaluate(*parse_expression(text), vt));
}

LaurentPoly parse_poly(std::string_view text, const VarTable& vt) {
  const RatFunc r = parse_ratfunc(text, vt);
  if (!r.den.is_constant()) throw InvalidParams("not a Laurent polynomial: " + std::string(text));
  return r.num * Term(1 / r.den.constant_term());
}

std::string format(const Rational& c) { return c.get_str(); }

std::string format(const Monomial& m, const VarTable& vt) {
  if (m.is_one()) return "1";
  std::ostringstream os;
  bool first = true;
  for (Var v = 0; v < m.extent(); ++v) {
    const Exponent e = m[v];
    if (e == 0) continue;
    if (!first) os << '*';
    first = false;
    os << (v < vt.size() ? vt.name(v) : "v" + std::to_string(v));
    if (e != 1) os << '^' << e;
  }
  return os.str();
}

std::string format(const LaurentPoly& p, const VarTable& vt) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : p.terms()) {
    if (!first && sgn(t.coeff) > 0) os << '+';
    first = false;
    put_term(os, t, vt);
  }
  return os.str();
}

std::string format(const ERat& f, const VarTable& vt) {
  if (f.is_zero()) return "0";
  const LaurentPoly& n = f.numerator();
  std::string num = format(n, vt);
  if (f.denominator().empty()) return num;
  if (n.size() > 1) num = "(" + num + ")";
  std::vector<std::string> parts;
  for (const auto& [factor, mult] : f.denominator()) {
    std::string s = "(" + format(expand(factor), vt) + ")";
    if (mult > 1) s += "^" + std::to_string(mult);
    parts.push_back(std::move(s));
  }
  std::string den;
  for (std::size_t i = 0; i < parts.size(); ++i) den += (i ? "*" : "") + parts[i];
  if (parts.size() > 1) den = "(" + den + ")";
  return num + "/" + den;
}

std::string format(std::span<const ERat> s, const VarTable& vt) {
  std::string out;
  for (const auto& f : s) {
    if (f.is_zero()) continue;
    std::string t = format(f, vt);
    if (out.empty())
      out = std::move(t);
    else if (t.front() == '-')
      out += " - " + t.substr(1);
    else
      out += " + " + t;
  }
  return out.empty() ? "0" : out;
}

}  // namespace ell
