#include "ell/input.hpp"

#include <algorithm>
#include <set>

#include "ell/error.hpp"

namespace ell {

namespace {

void collect_symbols(const Expr& e, std::vector<std::string>& out) {
  if (e.kind == Expr::Kind::Symbol && std::find(out.begin(), out.end(), e.name) == out.end()) out.push_back(e.name);
  if (e.lhs) collect_symbols(*e.lhs, out);
  if (e.rhs) collect_symbols(*e.rhs, out);
}

Exponent integer(const Rational& r, const ConstraintStmt& c) {
  if (r.get_den() != 1 || !r.get_num().fits_slong_p())
    throw SyntaxError("constraint coefficients must be machine-size integers", c.line, c.column);
  return r.get_num().get_si();
}

// value of a substitution as a single term over vt
Term single_term(const SubstStmt& s, const VarTable& vt) {
  const ProductForm p = evaluate(*s.value, vt);
  const RatFunc r = to_ratfunc(p);
  if (r.num.size() != 1 || r.den.size() != 1)
    throw SyntaxError("substitution for '" + s.name + "' must be a monomial", s.value->line, s.value->column);
  return r.num.terms()[0] * inverse(r.den.terms()[0]);
}

}  // namespace

ConstraintSystem to_system(const Document& doc) {
  if (doc.constraints.empty()) throw InvalidParams("document has no constraints");
  ConstraintSystem sys;
  sys.unknowns = doc.unknowns;
  if (sys.unknowns.empty()) {
    std::set<std::string> names;
    for (const auto& c : doc.constraints)
      for (const auto& [name, k] : c.form.coeffs) names.insert(name);
    sys.unknowns.assign(names.begin(), names.end());
  }
  for (const auto& c : doc.constraints)
    for (const auto& [name, k] : c.form.coeffs)
      if (std::find(sys.unknowns.begin(), sys.unknowns.end(), name) == sys.unknowns.end())
        throw SyntaxError("undeclared unknown '" + name + "'", c.line, c.column);

  if (!doc.vars.empty() && doc.vars.size() != sys.unknowns.size())
    throw InvalidParams("vars must list one marker per unknown");
  sys.markers = doc.vars;
  for (std::size_t i = 1; sys.markers.size() < sys.unknowns.size(); ++i) {
    std::string name = "x" + std::to_string(i);
    if (std::find(sys.unknowns.begin(), sys.unknowns.end(), name) != sys.unknowns.end()) name = "x_" + name;
    sys.markers.push_back(name);
  }
  sys.lambdas = doc.omegavars;

  for (const auto& c : doc.constraints) {
    // GE: form >= 0, LE: -form >= 0, EQ: form = 0
    const Exponent sign = c.relation == Relation::LE ? -1 : 1;
    LinearConstraint lc{std::vector<Exponent>(sys.unknowns.size(), 0), sign * integer(c.form.constant, c),
                        c.relation == Relation::EQ ? Mode::EQ : Mode::GE};
    for (const auto& [name, k] : c.form.coeffs) {
      const auto at = std::find(sys.unknowns.begin(), sys.unknowns.end(), name) - sys.unknowns.begin();
      lc.coeffs[static_cast<std::size_t>(at)] = sign * integer(k, c);
    }
    sys.constraints.push_back(std::move(lc));
  }

  if (!doc.substitutions.empty()) {
    std::vector<std::string> names = sys.markers;
    for (const auto& s : doc.substitutions) collect_symbols(*s.value, names);
    const VarTable vt(names);
    for (const auto& s : doc.substitutions) {
      const Term t = single_term(s, vt);
      MarkerSubst m{s.name, t.coeff, {}};
      for (Var v = 0; v < t.mono.extent(); ++v)
        if (t.mono[v] != 0) m.powers.emplace_back(vt.name(v), t.mono[v]);
      sys.substitutions.push_back(std::move(m));
    }
  }
  validate(sys);
  return sys;
}

Problem to_problem(const Document& doc) {
  if (doc.expressions.empty()) throw InvalidParams("document has no expression");
  std::vector<std::string> names = doc.omegavars;
  for (const auto& v : doc.vars)
    if (std::find(names.begin(), names.end(), v) == names.end()) names.push_back(v);
  for (const auto& e : doc.expressions) collect_symbols(*e, names);
  for (const auto& s : doc.substitutions) {
    if (std::find(names.begin(), names.end(), s.name) == names.end())
      throw InvalidParams("substitution for unknown variable '" + s.name + "'");
    collect_symbols(*s.value, names);
  }

  Problem p;
  p.vt = VarTable(names);
  ERatSum parts;
  for (const auto& e : doc.expressions) parts.push_back(to_erat(evaluate(*e, p.vt)));
  p.f = parts.size() == 1 ? parts[0] : common_denominator(parts);
  for (const auto& name : doc.omegavars) p.steps.push_back({p.vt.at(name), doc.mode.value_or(Mode::GE)});
  for (const auto& s : doc.substitutions) p.substitutions.emplace_back(p.vt.at(s.name), single_term(s, p.vt));
  return p;
}

}  // namespace ell
