#include "ell/parfrac.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "ell/error.hpp"

namespace ell {

namespace {

bool member_less(const NormalizedFactor& a, const NormalizedFactor& b) {
  if (a.j != b.j) return a.j > b.j;
  if (const auto c = a.z.mono <=> b.z.mono; c != 0) return c < 0;
  return cmp(a.z.coeff, b.z.coeff) < 0;
}

bool same_root_set(const NormalizedFactor& a, const NormalizedFactor& b) { return a.j == b.j && a.z == b.z; }

Binomial as_binomial(const NormalizedFactor& f, Var lambda) { return {Term(1, Monomial::variable(lambda, f.j)), f.z}; }

LaurentPoly expand(const Binomial& b) { return LaurentPoly::from_terms({b.lhs, -b.rhs}); }

std::size_t group_count(const Grouping& g, bool contributing) {
  return static_cast<std::size_t>(
      std::count_if(g.groups.begin(), g.groups.end(), [&](const FactorGroup& grp) { return grp.contributes == contributing; }));
}

}  // namespace

std::optional<NormalizedFactor> normalize_factor(const Factor& f, Var lambda) {
  const Exponent e = f.mono[lambda];
  if (e == 0) return std::nullopt;
  Monomial rest = f.mono.without(lambda);
  if (e > 0) {
    // 1 - c m' l^e = (-c m') (l^e - 1/(c m'))
    return NormalizedFactor{Term(-f.coeff, rest), e, Term(1 / f.coeff, rest.inverse())};
  }
  // 1 - c m' l^e = l^e (l^-e - c m')
  return NormalizedFactor{Term(1, Monomial::variable(lambda, e)), -e, Term(f.coeff, std::move(rest))};
}

LaurentPoly expand(const NormalizedFactor& f, Var lambda) { return expand(as_binomial(f, lambda)); }

bool contributes(const NormalizedFactor& f, Var lambda) { return f.z.mono < Monomial::variable(lambda, f.j); }

LaurentPoly frac_mod(const LaurentPoly& p, Var lambda, Exponent j, const Term& z) {
  if (j < 1) throw InvalidParams("frac_mod needs a positive degree");
  std::map<Exponent, Term> zpow;
  std::vector<Term> out;
  out.reserve(p.size());
  for (const auto& t : p.terms()) {
    const Exponent d = t.mono[lambda];
    Exponent q = d / j;
    if (d % j < 0) --q;
    const Exponent r = d - q * j;
    if (q == 0) {
      out.push_back(t);
      continue;
    }
    if (z.is_zero()) {
      if (q < 0) throw ZeroZWithNegativePower("negative power of lambda reduced modulo lambda^j");
      continue;
    }
    auto it = zpow.find(q);
    if (it == zpow.end()) it = zpow.emplace(q, pow(z, q)).first;
    out.emplace_back(t.coeff * it->second.coeff, t.mono.with(lambda, r) * it->second.mono);
  }
  return LaurentPoly::from_terms(std::move(out));
}

bool coprime_test(const NormalizedFactor& f1, const NormalizedFactor& f2) {
  if (same_root_set(f1, f2)) return false;
  const Exponent g = std::gcd(f1.j, f2.j);
  return pow(f1.z, f2.j / g) != pow(f2.z, f1.j / g);
}

CrossFrac cross_frac(const NormalizedFactor& f1, const NormalizedFactor& f2, Var lambda) {
  if (!coprime_test(f1, f2)) throw NotCoprime("factors share a root");
  const Exponent g = std::gcd(f1.j, f2.j);
  const Exponent jr = f1.j / g;
  const Exponent kr = f2.j / g;
  std::vector<Term> num;
  num.reserve(static_cast<std::size_t>(jr));
  for (Exponent i = 0; i < jr; ++i) {
    const Term b = pow(f2.z, jr - 1 - i);
    num.emplace_back(b.coeff, b.mono * Monomial::variable(lambda, checked_mul(i, f2.j)));
  }
  return {LaurentPoly::from_terms(std::move(num)), Binomial{pow(f1.z, kr), pow(f2.z, jr)}};
}

Grouping group_factors(const ERat& f, Var lambda) {
  Grouping g;
  g.numerator = f.numerator();
  std::vector<NormalizedFactor> all;
  for (const auto& [factor, mult] : f.denominator()) {
    auto nf = normalize_factor(factor, lambda);
    if (!nf) {
      g.lambda_free.push_back({factor, mult});
      continue;
    }
    g.numerator *= pow(inverse(nf->unit), static_cast<Exponent>(mult));
    for (unsigned k = 0; k < mult; ++k) all.push_back(*nf);
  }
  // Transitive closure of non-coprimality.
  std::vector<std::size_t> parent(all.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t a = 0; a < all.size(); ++a)
    for (std::size_t b = a + 1; b < all.size(); ++b)
      if (find(a) != find(b) && !coprime_test(all[a], all[b])) parent[find(b)] = find(a);
  std::map<std::size_t, std::size_t> slot;
  for (std::size_t i = 0; i < all.size(); ++i) {
    auto [it, fresh] = slot.emplace(find(i), g.groups.size());
    if (fresh) g.groups.emplace_back();
    g.groups[it->second].members.push_back(all[i]);
  }
  for (auto& grp : g.groups) {
    std::sort(grp.members.begin(), grp.members.end(), member_less);
    grp.contributes = contributes(grp.members.front(), lambda);
  }
  return g;
}

ERatSum frac_wrt_group(const Grouping& g, std::size_t index, Var lambda) {
  const auto& members = g.groups.at(index).members;
  std::vector<const NormalizedFactor*> others;
  for (std::size_t i = 0; i < g.groups.size(); ++i)
    if (i != index)
      for (const auto& m : g.groups[i].members) others.push_back(&m);

  const ERat free_part(LaurentPoly(1), g.lambda_free);
  const std::size_t k = members.size();
  LaurentPoly d(1);
  if (k > 1)
    for (const auto* o : others) d *= expand(*o, lambda);

  // Invariant: the part still to be split is n / (G * members[i..] * others * free).
  LaurentPoly n = g.numerator;
  std::vector<Binomial> acc;
  ERatSum out;
  for (std::size_t i = 0; i < k; ++i) {
    const NormalizedFactor& p = members[i];
    LaurentPoly r = frac_mod(n, lambda, p.j, p.z);
    std::vector<Binomial> extra;
    for (const auto* o : others) {
      if (r.is_zero()) break;
      CrossFrac cf = cross_frac(p, *o, lambda);
      r = frac_mod(r * cf.num, lambda, p.j, p.z);
      extra.push_back(std::move(cf.den_extra));
    }
    if (!r.is_zero()) {
      std::vector<Binomial> den = acc;
      den.insert(den.end(), extra.begin(), extra.end());
      for (std::size_t m = i; m < k; ++m) den.push_back(as_binomial(members[m], lambda));
      ERat t = ERat::from_binomials(r, den) * free_part;
      if (!t.is_zero()) out.push_back(std::move(t));
    }
    if (i + 1 == k) break;
    // r vanishes exactly when p divides n; then no new denominators are needed
    if (r.is_zero()) extra.clear();
    LaurentPoly e(1);
    for (const auto& b : extra) e *= expand(b);
    auto q = divide_exact(n * e - r * d, VarBinomial{lambda, Term(1), p.j, -p.z, 0});
    if (!q) throw ExactDivisionFailed("group recurrence left a remainder");
    n = std::move(*q);
    acc.insert(acc.end(), extra.begin(), extra.end());
  }
  return out;
}

ERat polynomial_part(const Grouping& g, Var lambda) {
  LaurentPoly n = truncate_below(g.numerator, lambda, 0);
  Exponent total = 0;
  for (const auto& grp : g.groups)
    for (const auto& m : grp.members) total = checked_add(total, m.j);
  if (n.is_zero() || n.degree(lambda) < total) return {};
  for (const auto& grp : g.groups)
    for (const auto& m : grp.members) {
      n = quotient(n, VarBinomial{lambda, Term(1), m.j, -m.z, 0});
      if (n.is_zero()) return {};
    }
  return ERat(std::move(n), g.lambda_free);
}

PTResult pt_one(const ERat& f, Var lambda, Strategy strategy) {
  if (f.is_zero()) return {{}, Strategy::Direct};
  const Grouping g = group_factors(f, lambda);
  const bool laurent = !g.numerator.is_zero() && g.numerator.min_degree(lambda) < 0;

  if (strategy == Strategy::Auto) {
    Exponent total = 0;
    for (const auto& grp : g.groups)
      for (const auto& m : grp.members) total = checked_add(total, m.j);
    const std::size_t direct = group_count(g, true) + (g.numerator.degree(lambda) >= total ? 1 : 0);
    const std::size_t complement = 1 + group_count(g, false);
    strategy = !laurent && complement < direct ? Strategy::Complement : Strategy::Direct;
  } else if (strategy == Strategy::Complement && laurent) {
    strategy = Strategy::Direct;
  }

  PTResult res;
  res.strategy_used = strategy;
  if (strategy == Strategy::Direct) {
    ERat poly = polynomial_part(g, lambda);
    if (!poly.is_zero()) res.terms.push_back(std::move(poly));
    for (std::size_t i = 0; i < g.groups.size(); ++i) {
      if (!g.groups[i].contributes) continue;
      for (auto& t : frac_wrt_group(g, i, lambda)) res.terms.push_back(std::move(t));
    }
  } else {
    res.terms.push_back(f);
    for (std::size_t i = 0; i < g.groups.size(); ++i) {
      if (g.groups[i].contributes) continue;
      for (auto& t : frac_wrt_group(g, i, lambda)) res.terms.push_back(-t);
    }
  }
  return res;
}

ERat evaluate_at_zero(const ERat& f, Var lambda) {
  LaurentPoly num = f.numerator();
  std::vector<FactorPower> den;
  for (const auto& [factor, mult] : f.denominator()) {
    const Exponent e = factor.mono[lambda];
    if (e == 0) {
      den.push_back({factor, mult});
    } else if (e < 0) {
      // 1/(1 - t) = (-1/t) / (1 - 1/t), and 1/t vanishes at lambda = 0
      num *= pow(-inverse(Term(factor.coeff, factor.mono)), static_cast<Exponent>(mult));
    }
  }
  return ERat(substitute(num, lambda, Term(0)), std::move(den));
}

ERatSum ct_one(const ERat& f, Var lambda, Strategy strategy) {
  ERatSum out;
  for (const auto& t : pt_one(f, lambda, strategy).terms) {
    ERat v = evaluate_at_zero(t, lambda);
    if (!v.is_zero()) out.push_back(std::move(v));
  }
  return out;
}

}  // namespace ell
