#include "ell/erat.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <utility>

#include "ell/error.hpp"

namespace ell {

CanonicalBinomial canonicalize(const Term& lhs, const Term& rhs) {
  if (rhs.is_zero()) return {lhs, std::nullopt};
  if (lhs.is_zero()) return {-rhs, std::nullopt};
  const auto c = lhs.mono <=> rhs.mono;
  if (c == 0) return {Term(lhs.coeff - rhs.coeff, lhs.mono), std::nullopt};
  if (c < 0) {
    // lhs - rhs = lhs * (1 - rhs/lhs)
    return {lhs, Factor{rhs.coeff / lhs.coeff, rhs.mono / lhs.mono}};
  }
  return {-rhs, Factor{lhs.coeff / rhs.coeff, lhs.mono / rhs.mono}};
}

LaurentPoly expand(const Factor& f) {
  return LaurentPoly::from_terms({Term(1), Term(-f.coeff, f.mono)});
}

std::optional<LaurentPoly> divide(const LaurentPoly& p, const Factor& f) {
  const Var v = f.mono.extent() - 1;
  const Exponent e = f.mono[v];
  const Term rest(-f.coeff, f.mono.without(v));
  if (e > 0) return divide_exact(p, VarBinomial{v, rest, e, Term(1), 0});
  return divide_exact(p, VarBinomial{v, Term(1), 0, rest, e});
}

ERat::ERat(LaurentPoly numerator) : num_(std::move(numerator)) {}

ERat::ERat(LaurentPoly numerator, std::vector<FactorPower> denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
  normalize();
}

ERat ERat::from_binomials(LaurentPoly numerator, std::span<const Binomial> denominator) {
  ERat r(std::move(numerator));
  for (const auto& b : denominator) {
    if (b.mult == 0) continue;
    auto [unit, factor] = canonicalize(b.lhs, b.rhs);
    if (unit.is_zero()) throw DivisionByZero("zero binomial in a denominator");
    r.num_ *= pow(inverse(unit), static_cast<Exponent>(b.mult));
    if (factor) r.den_.push_back({std::move(*factor), b.mult});
  }
  r.normalize();
  return r;
}

unsigned ERat::factor_count() const noexcept {
  unsigned n = 0;
  for (const auto& fp : den_) n += fp.mult;
  return n;
}

ERat& ERat::operator*=(const ERat& rhs) {
  num_ *= rhs.num_;
  den_.insert(den_.end(), rhs.den_.begin(), rhs.den_.end());
  normalize();
  return *this;
}

ERat& ERat::operator*=(const Term& t) {
  num_ *= t;
  if (num_.is_zero()) den_.clear();
  return *this;
}

void ERat::normalize() {
  if (num_.is_zero()) {
    den_.clear();
    return;
  }
  std::sort(den_.begin(), den_.end(), [](const FactorPower& a, const FactorPower& b) { return a.factor < b.factor; });
  std::vector<FactorPower> out;
  out.reserve(den_.size());
  for (auto& fp : den_) {
    if (fp.mult == 0) continue;
    if (!out.empty() && out.back().factor == fp.factor)
      out.back().mult += fp.mult;
    else
      out.push_back(std::move(fp));
  }
  den_ = std::move(out);
}

namespace {

ERat substitute_impl(const ERat& f, Var v, const Term& r, bool unity) {
  LaurentPoly num = substitute(f.numerator(), v, r);
  std::vector<FactorPower> den;
  den.reserve(f.denominator().size());
  for (const auto& [factor, mult] : f.denominator()) {
    const Exponent d = factor.mono[v];
    if (d == 0) {
      den.push_back({factor, mult});
      continue;
    }
    const Term t = Term(factor.coeff, factor.mono.without(v)) * pow(r, d);
    auto [unit, nf] = canonicalize(Term(1), t);
    if (unit.is_zero()) {
      if (unity) throw DivergentAtUnity("a denominator factor vanishes at 1");
      throw DivisionByZero("a denominator factor vanishes under substitution");
    }
    num *= pow(inverse(unit), static_cast<Exponent>(mult));
    if (nf) den.push_back({std::move(*nf), mult});
  }
  return ERat(std::move(num), std::move(den));
}

}  // namespace

ERat substitute(const ERat& f, Var v, const Term& r) {
  if (r.is_zero()) return substitute_zero(f, v);
  return substitute_impl(f, v, r, false);
}

ERat substitute_zero(const ERat& f, Var v) {
  LaurentPoly num = substitute(f.numerator(), v, Term(0));
  std::vector<FactorPower> den;
  for (const auto& fp : f.denominator()) {
    const Exponent d = fp.factor.mono[v];
    if (d < 0) throw NegativePowerAtZero("denominator factor has a negative power of the variable set to zero");
    if (d == 0) den.push_back(fp);
  }
  return ERat(std::move(num), std::move(den));
}

ERatSum erat_subst_unity(const ERatSum& s, Var v) {
  ERatSum out;
  out.reserve(s.size());
  for (const auto& f : s) {
    ERat g = substitute_impl(f, v, Term(1), true);
    if (!g.is_zero()) out.push_back(std::move(g));
  }
  return out;
}

ERatSum substitute(const ERatSum& s, Var v, const Term& r) {
  ERatSum out;
  out.reserve(s.size());
  for (const auto& f : s) {
    ERat g = substitute(f, v, r);
    if (!g.is_zero()) out.push_back(std::move(g));
  }
  return out;
}

ERat common_denominator(std::span<const ERat> s) {
  std::map<Factor, unsigned> lcm;
  for (const auto& f : s) {
    if (f.is_zero()) continue;
    for (const auto& [factor, mult] : f.denominator()) {
      unsigned& m = lcm[factor];
      m = std::max(m, mult);
    }
  }
  std::vector<Term> acc;
  for (const auto& f : s) {
    if (f.is_zero()) continue;
    LaurentPoly missing(1);
    auto it = f.denominator().begin();
    for (const auto& [factor, mult] : lcm) {
      unsigned have = 0;
      if (it != f.denominator().end() && it->factor == factor) have = (it++)->mult;
      if (mult > have) missing *= pow(expand(factor), mult - have);
    }
    const LaurentPoly part = missing * f.numerator();
    acc.insert(acc.end(), part.terms().begin(), part.terms().end());
  }
  std::vector<FactorPower> den;
  den.reserve(lcm.size());
  for (const auto& [factor, mult] : lcm) den.push_back({factor, mult});
  return ERat(LaurentPoly::from_terms(std::move(acc)), std::move(den));
}

ERat cancel(const ERat& f) {
  LaurentPoly num = f.numerator();
  std::vector<FactorPower> den;
  for (const auto& [factor, mult] : f.denominator()) {
    unsigned left = mult;
    while (left > 0 && !num.is_zero()) {
      auto q = divide(num, factor);
      if (!q) break;
      num = std::move(*q);
      --left;
    }
    if (left > 0) den.push_back({factor, left});
  }
  return ERat(std::move(num), std::move(den));
}

namespace {

std::optional<mpz_class> exact_root(const mpz_class& a, unsigned long p) {
  if (sgn(a) < 0 && p % 2 == 0) return std::nullopt;
  mpz_class r;
  if (mpz_root(r.get_mpz_t(), a.get_mpz_t(), p) == 0) return std::nullopt;
  return r;
}

std::optional<Rational> exact_root(const Rational& c, unsigned long p) {
  auto n = exact_root(c.get_num(), p);
  if (!n) return std::nullopt;
  auto d = exact_root(c.get_den(), p);
  if (!d) return std::nullopt;
  return Rational(*n, *d);
}

// One step down from f whose cofactor divides num, if any.
std::optional<Factor> lower_once(LaurentPoly& num, const Factor& f) {
  Exponent g = 0;
  for (Exponent e : f.mono.exponents()) g = std::gcd(g, e);
  for (Exponent p = 2; p <= g; ++p) {
    if (g % p != 0) continue;
    bool prime = true;
    for (Exponent q = 2; q * q <= p && prime; ++q) prime = p % q != 0;
    if (!prime) continue;
    auto r = exact_root(f.coeff, static_cast<unsigned long>(p));
    if (!r) continue;
    std::vector<Exponent> exps(f.mono.exponents().begin(), f.mono.exponents().end());
    for (auto& e : exps) e /= p;
    Factor lower{*r, Monomial(exps)};
    if (auto q = divide(num * expand(lower), f)) {
      num = std::move(*q);
      return lower;
    }
  }
  return std::nullopt;
}

}  // namespace

ERat lower_powers(const ERat& f) {
  LaurentPoly num = f.numerator();
  std::vector<FactorPower> den;
  for (const auto& [factor, mult] : f.denominator())
    for (unsigned k = 0; k < mult; ++k) {
      Factor cur = factor;
      while (!num.is_zero())
        if (auto lower = lower_once(num, cur))
          cur = std::move(*lower);
        else
          break;
      den.push_back({std::move(cur), 1});
    }
  return ERat(std::move(num), std::move(den));
}

ERat simplify(const ERat& f) { return lower_powers(cancel(f)); }

ERat erat_combine(std::span<const ERat> s) { return cancel(common_denominator(s)); }

void sort_terms(ERatSum& s) {
  auto term_less = [](const Term& a, const Term& b) {
    if (const auto c = a.mono <=> b.mono; c != 0) return c < 0;
    return cmp(a.coeff, b.coeff) < 0;
  };
  auto power_less = [](const FactorPower& a, const FactorPower& b) {
    if (!(a.factor == b.factor)) return a.factor < b.factor;
    return a.mult < b.mult;
  };
  std::stable_sort(s.begin(), s.end(), [&](const ERat& a, const ERat& b) {
    const auto& da = a.denominator();
    const auto& db = b.denominator();
    if (std::lexicographical_compare(da.begin(), da.end(), db.begin(), db.end(), power_less)) return true;
    if (std::lexicographical_compare(db.begin(), db.end(), da.begin(), da.end(), power_less)) return false;
    const auto& na = a.numerator().terms();
    const auto& nb = b.numerator().terms();
    return std::lexicographical_compare(na.begin(), na.end(), nb.begin(), nb.end(), term_less);
  });
}

bool is_zero_sum(std::span<const ERat> s) { return common_denominator(s).is_zero(); }

bool erat_equal(std::span<const ERat> a, std::span<const ERat> b) {
  ERatSum all(a.begin(), a.end());
  for (const auto& f : b) all.push_back(-f);
  return is_zero_sum(all);
}

bool erat_equal(const ERat& a, const ERat& b) {
  return erat_equal(std::span<const ERat>(&a, 1), std::span<const ERat>(&b, 1));
}

LaurentPoly expand_denominator(const ERat& f) {
  LaurentPoly d(1);
  for (const auto& [factor, mult] : f.denominator()) d *= pow(expand(factor), mult);
  return d;
}

bool equals_rational(std::span<const ERat> s, const LaurentPoly& num, const LaurentPoly& den) {
  const ERat c = common_denominator(s);
  return c.numerator() * den == num * expand_denominator(c);
}

}  // namespace ell
