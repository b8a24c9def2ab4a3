#include "ell/laurent_poly.hpp"

#include <algorithm>
#include <iterator>
#include <utility>

#include "ell/error.hpp"

namespace ell {

namespace {

bool term_less(const Term& a, const Term& b) { return a.mono < b.mono; }

// Merges two sorted, collected term lists.
std::vector<Term> merge_add(const std::vector<Term>& a, const std::vector<Term>& b, bool negate_b) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    const auto c = i->mono <=> j->mono;
    if (c < 0) {
      out.push_back(*i++);
    } else if (c > 0) {
      out.push_back(negate_b ? -*j : *j);
      ++j;
    } else {
      Rational s = negate_b ? Rational(i->coeff - j->coeff) : Rational(i->coeff + j->coeff);
      if (sgn(s) != 0) out.emplace_back(std::move(s), i->mono);
      ++i;
      ++j;
    }
  }
  out.insert(out.end(), i, a.end());
  for (; j != b.end(); ++j) out.push_back(negate_b ? -*j : *j);
  return out;
}

std::vector<Term> merge_move(std::vector<Term>&& a, std::vector<Term>&& b) {
  if (a.empty()) return std::move(b);
  if (b.empty()) return std::move(a);
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  auto i = std::make_move_iterator(a.begin());
  auto j = std::make_move_iterator(b.begin());
  const auto ie = std::make_move_iterator(a.end());
  const auto je = std::make_move_iterator(b.end());
  while (i != ie && j != je) {
    const auto c = i->mono <=> j->mono;
    if (c < 0) {
      out.push_back(*i++);
    } else if (c > 0) {
      out.push_back(*j++);
    } else {
      Term t = *i++;
      t.coeff += j->coeff;
      ++j;
      if (sgn(t.coeff) != 0) out.push_back(std::move(t));
    }
  }
  out.insert(out.end(), i, ie);
  out.insert(out.end(), j, je);
  return out;
}

}  // namespace

Rational pow(const Rational& base, Exponent e) {
  if (e == 0) return 1;
  if (sgn(base) == 0) {
    if (e < 0) throw DivisionByZero("zero raised to a negative power");
    return 0;
  }
  const unsigned long n = static_cast<unsigned long>(e < 0 ? -e : e);
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), n);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), n);
  Rational r = e > 0 ? Rational(num, den) : Rational(den, num);
  r.canonicalize();
  return r;
}

Term pow(const Term& t, Exponent e) { return {pow(t.coeff, e), t.mono.pow(e)}; }

Term inverse(const Term& t) {
  if (t.is_zero()) throw DivisionByZero("inverse of zero term");
  return {1 / t.coeff, t.mono.inverse()};
}

LaurentPoly::LaurentPoly(const Rational& c) {
  if (sgn(c) != 0) terms_.emplace_back(c, Monomial{});
}

LaurentPoly::LaurentPoly(Term t) {
  if (!t.is_zero()) terms_.push_back(std::move(t));
}

LaurentPoly LaurentPoly::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), term_less);
  LaurentPoly p;
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
      p.terms_.back().coeff += t.coeff;
    } else {
      if (!p.terms_.empty() && sgn(p.terms_.back().coeff) == 0) p.terms_.pop_back();
      p.terms_.push_back(std::move(t));
    }
  }
  if (!p.terms_.empty() && sgn(p.terms_.back().coeff) == 0) p.terms_.pop_back();
  return p;
}

Rational LaurentPoly::constant_term() const {
  for (const auto& t : terms_)
    if (t.mono.is_one()) return t.coeff;
  return 0;
}

bool LaurentPoly::depends_on(Var v) const {
  return std::any_of(terms_.begin(), terms_.end(), [v](const Term& t) { return t.mono[v] != 0; });
}

Exponent LaurentPoly::degree(Var v) const {
  if (terms_.empty()) return 0;
  Exponent d = terms_.front().mono[v];
  for (const auto& t : terms_) d = std::max(d, t.mono[v]);
  return d;
}

Exponent LaurentPoly::min_degree(Var v) const {
  if (terms_.empty()) return 0;
  Exponent d = terms_.front().mono[v];
  for (const auto& t : terms_) d = std::min(d, t.mono[v]);
  return d;
}

bool LaurentPoly::has_negative_exponents() const {
  return std::any_of(terms_.begin(), terms_.end(), [](const Term& t) { return !t.mono.is_nonnegative(); });
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& rhs) {
  if (rhs.terms_.empty()) return *this;
  terms_ = merge_add(terms_, rhs.terms_, false);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& rhs) {
  if (rhs.terms_.empty()) return *this;
  terms_ = merge_add(terms_, rhs.terms_, true);
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(const Term& rhs) {
  if (rhs.is_zero()) {
    terms_.clear();
    return *this;
  }
  // The order is a group order, so scaling by a monomial keeps terms sorted.
  for (auto& t : terms_) {
    t.coeff *= rhs.coeff;
    t.mono *= rhs.mono;
  }
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& rhs) {
  *this = *this * rhs;
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  const LaurentPoly& small = a.size() <= b.size() ? a : b;
  const LaurentPoly& large = a.size() <= b.size() ? b : a;
  if (small.is_zero()) return {};
  // Each shifted copy of the larger factor is already sorted; merge them
  // pairwise in a balanced tree.
  std::vector<std::vector<Term>> parts;
  parts.reserve(small.size());
  for (const auto& t : small.terms_) {
    std::vector<Term> shifted;
    shifted.reserve(large.size());
    for (const auto& u : large.terms_) shifted.emplace_back(t.coeff * u.coeff, t.mono * u.mono);
    parts.push_back(std::move(shifted));
  }
  while (parts.size() > 1) {
    std::vector<std::vector<Term>> next;
    next.reserve((parts.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < parts.size(); i += 2)
      next.push_back(merge_move(std::move(parts[i]), std::move(parts[i + 1])));
    if (parts.size() % 2 == 1) next.push_back(std::move(parts.back()));
    parts = std::move(next);
  }
  LaurentPoly r;
  r.terms_ = std::move(parts.front());
  return r;
}

LaurentPoly operator-(LaurentPoly a) {
  for (auto& t : a.terms_) t.coeff = -t.coeff;
  return a;
}

LaurentPoly pow(const LaurentPoly& p, unsigned e) {
  LaurentPoly result(1);
  LaurentPoly base = p;
  while (e > 0) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e > 0) base = base * base;
  }
  return result;
}

LaurentPoly substitute(const LaurentPoly& p, Var v, const Term& r) {
  std::vector<Term> out;
  out.reserve(p.size());
  const bool zero = r.is_zero();
  for (const auto& t : p.terms()) {
    const Exponent d = t.mono[v];
    if (d == 0) {
      out.push_back(t);
      continue;
    }
    if (zero) {
      if (d < 0) throw NegativePowerAtZero("negative power of a variable substituted by zero");
      continue;
    }
    out.push_back(Term(t.coeff, t.mono.without(v)) * pow(r, d));
  }
  return LaurentPoly::from_terms(std::move(out));
}

LaurentPoly coefficient(const LaurentPoly& p, Var v, Exponent d) {
  std::vector<Term> out;
  for (const auto& t : p.terms())
    if (t.mono[v] == d) out.emplace_back(t.coeff, t.mono.without(v));
  return LaurentPoly::from_terms(std::move(out));
}

LaurentPoly truncate_below(const LaurentPoly& p, Var v, Exponent d) {
  std::vector<Term> out;
  for (const auto& t : p.terms())
    if (t.mono[v] >= d) out.push_back(t);
  return LaurentPoly::from_terms(std::move(out));
}

std::map<Exponent, LaurentPoly> collect(const LaurentPoly& p, Var v) {
  std::map<Exponent, std::vector<Term>> buckets;
  for (const auto& t : p.terms()) buckets[t.mono[v]].emplace_back(t.coeff, t.mono.without(v));
  std::map<Exponent, LaurentPoly> out;
  for (auto& [d, ts] : buckets) out.emplace(d, LaurentPoly::from_terms(std::move(ts)));
  return out;
}

LaurentPoly assemble(const std::map<Exponent, LaurentPoly>& parts, Var v) {
  std::vector<Term> out;
  for (const auto& [d, c] : parts) {
    const Monomial shift = Monomial::variable(v, d);
    for (const auto& t : c.terms()) out.emplace_back(t.coeff, t.mono * shift);
  }
  return LaurentPoly::from_terms(std::move(out));
}

std::optional<LaurentPoly> divide_exact(const LaurentPoly& n, const VarBinomial& b) {
  if (n.is_zero()) return LaurentPoly{};
  auto parts = collect(n, b.v);
  const Exponent bottom = parts.begin()->first;
  const Exponent gap = b.hi_deg - b.lo_deg;
  const Term hi_inv = inverse(b.hi);
  std::map<Exponent, LaurentPoly> q;
  while (!parts.empty()) {
    auto top = std::prev(parts.end());
    if (top->second.is_zero()) {
      parts.erase(top);
      continue;
    }
    const Exponent d = top->first;
    if (d - gap < bottom) return std::nullopt;
    LaurentPoly c = std::move(top->second) * hi_inv;
    parts.erase(top);
    parts[d - gap] -= c * b.lo;
    q.emplace(d - b.hi_deg, std::move(c));
  }
  return assemble(q, b.v);
}

LaurentPoly quotient(const LaurentPoly& n, const VarBinomial& b) {
  auto parts = collect(n, b.v);
  const Term hi_inv = inverse(b.hi);
  std::map<Exponent, LaurentPoly> q;
  while (!parts.empty()) {
    auto top = std::prev(parts.end());
    const Exponent d = top->first;
    if (d < b.hi_deg) break;
    if (top->second.is_zero()) {
      parts.erase(top);
      continue;
    }
    LaurentPoly c = std::move(top->second) * hi_inv;
    parts.erase(top);
    parts[d - b.hi_deg + b.lo_deg] -= c * b.lo;
    q.emplace(d - b.hi_deg, std::move(c));
  }
  return assemble(q, b.v);
}

}  // namespace ell
