#include "ell/model.hpp"

#include <algorithm>
#include <set>

#include "ell/error.hpp"

namespace ell {

namespace {

std::string indexed(const std::string& stem, int i) { return stem + std::to_string(i); }

std::vector<std::string> lambda_names(const ConstraintSystem& sys) {
  if (!sys.lambdas.empty()) return sys.lambdas;
  std::set<std::string> taken(sys.markers.begin(), sys.markers.end());
  for (const auto& s : sys.substitutions)
    for (const auto& [name, e] : s.powers) taken.insert(name);
  std::string stem = "l";
  auto clash = [&] {
    for (std::size_t r = 1; r <= sys.constraints.size(); ++r)
      if (taken.contains(indexed(stem, static_cast<int>(r)))) return true;
    return false;
  };
  while (clash()) stem += "l";
  std::vector<std::string> out;
  for (std::size_t r = 1; r <= sys.constraints.size(); ++r) out.push_back(indexed(stem, static_cast<int>(r)));
  return out;
}

}  // namespace

void validate(const ConstraintSystem& sys) {
  const std::size_t n = sys.unknowns.size();
  if (sys.markers.size() != n) throw InvalidParams("every unknown needs exactly one marker variable");
  if (!sys.lambdas.empty() && sys.lambdas.size() != sys.constraints.size())
    throw InvalidParams("number of omega variables differs from the number of constraints");
  for (const auto& c : sys.constraints) {
    if (c.coeffs.size() != n) throw InvalidParams("constraint arity differs from the number of unknowns");
    if (std::all_of(c.coeffs.begin(), c.coeffs.end(), [](Exponent e) { return e == 0; }))
      throw InvalidParams("constraint without unknowns");
  }
  if (!sys.marker_order.empty()) {
    auto a = sys.marker_order, b = sys.markers;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) throw InvalidParams("marker order is not a permutation of the markers");
  }
  for (const auto& s : sys.substitutions)
    if (std::find(sys.markers.begin(), sys.markers.end(), s.marker) == sys.markers.end())
      throw InvalidParams("substitution for unknown marker '" + s.marker + "'");
}

Problem crude_gf(const ConstraintSystem& sys) {
  validate(sys);
  Problem p;
  const auto lambdas = lambda_names(sys);
  std::vector<Var> lv;
  for (const auto& name : lambdas) lv.push_back(p.vt.add(name));
  for (const auto& name : sys.marker_order.empty() ? sys.markers : sys.marker_order) p.vt.add(name);
  for (const auto& s : sys.substitutions)
    for (const auto& [name, e] : s.powers)
      if (!p.vt.find(name)) p.vt.add(name);

  Monomial shift;
  for (std::size_t r = 0; r < sys.constraints.size(); ++r)
    shift *= Monomial::variable(lv[r], sys.constraints[r].constant);
  std::vector<Binomial> den;
  for (std::size_t i = 0; i < sys.unknowns.size(); ++i) {
    Monomial m = Monomial::variable(p.vt.at(sys.markers[i]));
    for (std::size_t r = 0; r < sys.constraints.size(); ++r)
      m *= Monomial::variable(lv[r], sys.constraints[r].coeffs[i]);
    den.push_back({Term(1), Term(1, std::move(m))});
  }
  p.f = ERat::from_binomials(LaurentPoly(Term(1, shift)), den);
  for (std::size_t r = 0; r < sys.constraints.size(); ++r) p.steps.push_back({lv[r], sys.constraints[r].relation});
  for (const auto& s : sys.substitutions) {
    Monomial m;
    for (const auto& [name, e] : s.powers) m *= Monomial::variable(p.vt.at(name), e);
    p.substitutions.emplace_back(p.vt.at(s.marker), Term(s.coeff, std::move(m)));
  }
  return p;
}

ERatSum apply_substitutions(ERatSum s, const Problem& p) {
  for (const auto& [v, t] : p.substitutions) s = substitute(s, v, t);
  return s;
}

Problem presubstitute(Problem p) {
  for (const auto& [v, t] : p.substitutions) p.f = substitute(p.f, v, t);
  p.substitutions.clear();
  return p;
}

ERatSum solve(const Problem& p, const ElimOptions& opts, const StepObserver& observe) {
  ElimOptions inner = opts;
  inner.combine = false;
  ERatSum s = apply_substitutions(eliminate({p.f}, p.steps, inner, observe), p);
  if (opts.combine && !s.empty()) {
    ERat c = erat_combine(s);
    s.clear();
    if (!c.is_zero()) s.push_back(std::move(c));
  }
  return s;
}

ConstraintSystem two_a_three_b() {
  ConstraintSystem sys;
  sys.unknowns = {"a", "b"};
  sys.markers = {"x", "y"};
  sys.lambdas = {"l"};
  sys.constraints = {{{2, -3}, 0, Mode::GE}};
  return sys;
}

ConstraintSystem triangle() {
  ConstraintSystem sys;
  sys.unknowns = {"a", "b", "c"};
  sys.markers = {"x1", "x2", "x3"};
  sys.lambdas = {"l1", "l2", "l3"};
  sys.constraints = {{{1, 1, -1}, 0, Mode::GE}, {{-1, 1, 1}, 0, Mode::GE}, {{1, -1, 1}, 0, Mode::GE}};
  sys.marker_order = {"x3", "x2", "x1"};
  return sys;
}

Problem kgon(int k) {
  if (k < 3) throw InvalidParams("kgon needs k >= 3");
  Problem p;
  std::vector<Var> a;
  for (int i = 1; i <= k; ++i) a.push_back(p.vt.add(indexed("a", i)));
  const Var q = p.vt.add("q");
  auto mono = [&](std::initializer_list<std::pair<int, Exponent>> powers) {
    Monomial m = Monomial::variable(q);
    for (const auto& [i, e] : powers) m *= Monomial::variable(a[static_cast<std::size_t>(i - 1)], e);
    return m;
  };
  std::vector<Binomial> den;
  den.push_back({Term(1), Term(1, mono({{k, 1}, {1, -1}}))});
  for (int i = 2; i <= k - 1; ++i) den.push_back({Term(1), Term(1, mono({{k, 1}, {i - 1, 1}, {i, -1}}))});
  den.push_back({Term(1), Term(1, mono({{k - 1, 1}, {k, -1}}))});
  p.f = ERat::from_binomials(LaurentPoly(Term(1, mono({{1, -1}}))), den);
  for (Var v : a) p.steps.push_back({v, Mode::GE});
  return p;
}

Problem kgon_revisited(int k) {
  if (k < 3) throw InvalidParams("kgon needs k >= 3");
  Problem p;
  const Var l = p.vt.add("l");
  std::vector<Var> x;
  for (int i = 1; i <= k; ++i) x.push_back(p.vt.add(indexed("x", i)));
  std::vector<Binomial> den;
  for (int i = 1; i <= k - 1; ++i)
    den.push_back({Term(1), Term(1, Monomial::variable(x[i - 1]) * Monomial::variable(l, k - 1 - i))});
  den.push_back({Term(1), Term(1, Monomial::variable(x[k - 1]) * Monomial::variable(l, -1))});
  p.f = ERat::from_binomials(LaurentPoly::variable(l, k - 3), den);
  p.steps.push_back({l, Mode::GE});
  return p;
}

ConstraintSystem kgon_unordered(int k) {
  if (k < 1) throw InvalidParams("kgon_unordered needs k >= 1");
  ConstraintSystem sys;
  for (int i = 1; i <= k; ++i) {
    sys.unknowns.push_back(indexed("a", i));
    sys.markers.push_back(indexed("x", i));
    sys.lambdas.push_back(indexed("l", i));
  }
  for (int i = 0; i < k; ++i) {
    LinearConstraint c{std::vector<Exponent>(static_cast<std::size_t>(k), 1), 0, Mode::GE};
    c.coeffs[static_cast<std::size_t>(i)] = -1;
    sys.constraints.push_back(std::move(c));
  }
  return sys;
}

ConstraintSystem putnam_system(int t, int k, int c) {
  if (t < 1) throw InvalidParams("putnam needs T >= 1");
  if (k == c) throw InvalidParams("putnam with k = c is trivial");
  if (k < 0 || c < 0) throw InvalidParams("putnam needs nonnegative k and c");
  ConstraintSystem sys;
  for (int i = 1; i <= t; ++i) {
    sys.unknowns.push_back(indexed("n", i));
    sys.markers.push_back(indexed("x", i));
    sys.lambdas.push_back(indexed("a", i));
  }
  // x_i carries a_j^(k - self*[i == j]); every exponent changes sign when k < c.
  const Exponent s = k > c ? 1 : -1;
  const Exponent self = static_cast<Exponent>(k) * (t - 1) + c;
  for (int j = 0; j < t; ++j) {
    LinearConstraint row{std::vector<Exponent>(static_cast<std::size_t>(t), s * k), 0, Mode::GE};
    row.coeffs[static_cast<std::size_t>(j)] = s * (k - self);
    sys.constraints.push_back(std::move(row));
  }
  return sys;
}

Problem putnam(int t, int k, int c) { return crude_gf(putnam_system(t, k, c)); }

ConstraintSystem magic(int n, bool single_marker) {
  if (n < 1) throw InvalidParams("magic needs n >= 1");
  ConstraintSystem sys;
  sys.unknowns.push_back("s");
  sys.markers.push_back("t");
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      sys.unknowns.push_back("a" + std::to_string(i) + "_" + std::to_string(j));
      sys.markers.push_back("x" + std::to_string(i) + "_" + std::to_string(j));
      if (single_marker) sys.substitutions.push_back({sys.markers.back(), 1, {{"x", 1}}});
    }
  const auto size = static_cast<std::size_t>(n * n + 1);
  // Rows and columns alternate; eliminating all rows first grows much larger intermediates.
  for (int i = 0; i < n; ++i) {
    LinearConstraint row{std::vector<Exponent>(size, 0), 0, Mode::EQ};
    LinearConstraint col = row;
    row.coeffs[0] = col.coeffs[0] = 1;
    for (int j = 0; j < n; ++j) {
      row.coeffs[static_cast<std::size_t>(1 + i * n + j)] = -1;
      col.coeffs[static_cast<std::size_t>(1 + j * n + i)] = -1;
    }
    sys.constraints.push_back(std::move(row));
    sys.lambdas.push_back(indexed("l", i + 1));
    sys.constraints.push_back(std::move(col));
    sys.lambdas.push_back(indexed("m", i + 1));
  }
  return sys;
}

Problem zeilberger(int n) {
  if (n < 1) throw InvalidParams("zeilberger needs n >= 1");
  Problem p;
  std::vector<Var> x;
  for (int i = 1; i <= n; ++i) x.push_back(p.vt.add(indexed("x", i)));
  std::vector<Binomial> den;
  for (Var v : x) den.push_back({Term(1), Term(1, Monomial::variable(v))});
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j)
      den.push_back({Term(1, Monomial::variable(x[i])), Term(1, Monomial::variable(x[j]))});
  p.f = ERat::from_binomials(LaurentPoly(1), den);
  for (auto it = x.rbegin(); it != x.rend(); ++it) p.steps.push_back({*it, Mode::EQ});
  return p;
}

}  // namespace ell
