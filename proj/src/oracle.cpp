#include "ell/oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>

#include "ell/error.hpp"

namespace ell {

namespace {

bool is_unbounded(const std::vector<Var>& unbounded, Var v) {
  return std::find(unbounded.begin(), unbounded.end(), v) != unbounded.end();
}

// Bounded exponents nonnegative, and at least one positive.
bool grows(const Monomial& m, const std::vector<Var>& unbounded) {
  bool positive = false;
  const auto exps = m.exponents();
  for (Var v = 0; v < exps.size(); ++v) {
    if (is_unbounded(unbounded, v)) continue;
    if (exps[v] < 0) return false;
    positive = positive || exps[v] > 0;
  }
  return positive;
}

bool nonnegative(const Monomial& m, const std::vector<Var>& unbounded) {
  const auto exps = m.exponents();
  for (Var v = 0; v < exps.size(); ++v)
    if (!is_unbounded(unbounded, v) && exps[v] < 0) return false;
  return true;
}

LaurentPoly truncated_product(const TruncatedSeries& range, const LaurentPoly& a, const LaurentPoly& b) {
  std::vector<Term> out;
  for (const auto& s : a.terms())
    for (const auto& t : b.terms()) {
      Monomial m = s.mono * t.mono;
      if (range.in_range(m)) out.emplace_back(s.coeff * t.coeff, std::move(m));
    }
  return LaurentPoly::from_terms(std::move(out));
}

// series / (1 - t), truncated; t grows in the bounded variables.
LaurentPoly divide_geometric(const TruncatedSeries& range, LaurentPoly series, const Term& t) {
  LaurentPoly sum = series;
  const LaurentPoly step(t);
  for (;;) {
    series = truncated_product(range, series, step);
    if (series.is_zero()) return sum;
    sum += series;
  }
}

}  // namespace

bool TruncatedSeries::in_range(const Monomial& m) const {
  Exponent total = 0;
  const auto exps = m.exponents();
  for (Var v = 0; v < exps.size(); ++v) {
    if (is_unbounded(unbounded, v)) continue;
    if (exps[v] < 0 || exps[v] > bound) return false;
    total += exps[v];
  }
  return total <= bound;
}

TruncatedSeries enumerate_solutions(const ConstraintSystem& sys, Exponent bound) {
  const Problem p = crude_gf(sys);
  TruncatedSeries out;
  out.bound = bound;
  const std::size_t n = sys.unknowns.size();

  std::vector<Term> image;
  for (const auto& marker : sys.markers) image.emplace_back(1, Monomial::variable(p.vt.at(marker)));
  for (const auto& [v, t] : p.substitutions)
    for (std::size_t i = 0; i < n; ++i)
      if (p.vt.at(sys.markers[i]) == v) image[i] = t;
  // With growing images a partial monomial out of range stays out of range.
  const bool prune = std::all_of(image.begin(), image.end(), [](const Term& t) { return grows(t.mono, {}); });

  std::vector<Exponent> a(n, 0);
  std::vector<Term> found;
  std::function<void(std::size_t, const Term&)> scan = [&](std::size_t i, const Term& acc) {
    if (i == n) {
      for (const auto& c : sys.constraints) {
        Exponent value = c.constant;
        for (std::size_t k = 0; k < n; ++k) value = checked_add(value, checked_mul(c.coeffs[k], a[k]));
        if (c.relation == Mode::GE ? value < 0 : value != 0) return;
      }
      if (out.in_range(acc.mono)) found.push_back(acc);
      return;
    }
    Term cur = acc;
    for (a[i] = 0; a[i] <= bound; ++a[i]) {
      if (prune && !out.in_range(cur.mono)) break;
      scan(i + 1, cur);
      cur = cur * image[i];
    }
    a[i] = 0;
  };
  scan(0, Term(1));
  out.terms = LaurentPoly::from_terms(std::move(found));
  return out;
}

namespace {

Exponent total_degree(const Monomial& m) {
  Exponent d = 0;
  for (const Exponent e : m.exponents()) d = checked_add(d, e);
  return d;
}

// Terms of p with total degree <= top.
LaurentPoly degree_at_most(const LaurentPoly& p, Exponent top) {
  std::vector<Term> kept;
  for (const auto& t : p.terms())
    if (total_degree(t.mono) <= top) kept.push_back(t);
  return LaurentPoly::from_terms(std::move(kept));
}

LaurentPoly product_at_most(const LaurentPoly& a, const LaurentPoly& b, Exponent top) {
  std::vector<Term> out;
  for (const auto& s : a.terms())
    for (const auto& t : b.terms()) {
      Monomial m = s.mono * t.mono;
      if (total_degree(m) <= top) out.emplace_back(s.coeff * t.coeff, std::move(m));
    }
  return LaurentPoly::from_terms(std::move(out));
}

TruncatedSeries expand_series_plain(std::span<const ERat> s, Exponent bound, std::vector<Var> unbounded) {
  TruncatedSeries out;
  out.bound = bound;
  out.unbounded = std::move(unbounded);
  std::sort(out.unbounded.begin(), out.unbounded.end());
  LaurentPoly total;
  for (const auto& f : s) {
    for (const auto& t : f.numerator().terms())
      if (!nonnegative(t.mono, out.unbounded)) throw NotExpandable("numerator has a negative power of a bounded variable");
    for (const auto& fp : f.denominator())
      if (!grows(fp.factor.mono, out.unbounded)) throw NotExpandable("factor does not expand into a bounded series");
    std::vector<Term> kept;
    for (const auto& t : f.numerator().terms())
      if (out.in_range(t.mono)) kept.push_back(t);
    LaurentPoly series = LaurentPoly::from_terms(std::move(kept));
    for (const auto& [factor, mult] : f.denominator())
      for (unsigned k = 0; k < mult; ++k) series = divide_geometric(out, std::move(series), Term(factor.coeff, factor.mono));
    total += series;
  }
  out.terms = std::move(total);
  return out;
}

// Expansion in t after x -> t*x for every variable. Factors of positive
// degree become geometric series in t, factors of negative degree are turned
// around first, and degree-zero factors stay as denominators. The degree-zero
// denominators must cancel in the sum.
LaurentPoly expand_graded(std::span<const ERat> s, Exponent bound) {
  ERatSum parts;
  for (const auto& f : s) {
    if (f.is_zero()) continue;
    LaurentPoly num = f.numerator();
    std::vector<FactorPower> level;
    std::vector<Term> steps;
    for (const auto& [factor, mult] : f.denominator()) {
      const Exponent d = total_degree(factor.mono);
      if (d == 0) {
        level.push_back({factor, mult});
        continue;
      }
      Term step(factor.coeff, factor.mono);
      if (d < 0) {
        // 1/(1 - u) = (-1/u) / (1 - 1/u)
        step = inverse(step);
        num *= LaurentPoly(pow(Term(-1) * step, static_cast<Exponent>(mult)));
      }
      for (unsigned k = 0; k < mult; ++k) steps.push_back(step);
    }
    Exponent lowest = 0;
    for (const auto& t : num.terms()) lowest = std::min(lowest, total_degree(t.mono));
    const Exponent reach = checked_add(bound, -lowest);
    LaurentPoly series(1);
    for (const auto& step : steps) {
      const Exponent d = total_degree(step.mono);
      LaurentPoly geo;
      Term power(1);
      for (Exponent used = 0; used <= reach; used += d) {
        geo += LaurentPoly(power);
        power = power * step;
      }
      series = product_at_most(series, geo, reach);
    }
    parts.emplace_back(product_at_most(num, series, bound), std::move(level));
  }
  const ERat sum = erat_combine(parts);
  if (!sum.denominator().empty()) throw NotExpandable("degree-zero factors do not cancel");
  return degree_at_most(sum.numerator(), bound);
}

}  // namespace

TruncatedSeries expand_series(std::span<const ERat> s, Exponent bound, std::vector<Var> unbounded) {
  if (unbounded.empty()) {
    try {
      return expand_series_plain(s, bound, {});
    } catch (const NotExpandable&) {
      TruncatedSeries out;
      out.bound = bound;
      out.terms = expand_graded(s, bound);
      return out;
    }
  }
  return expand_series_plain(s, bound, std::move(unbounded));
}

bool series_equal(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (a.bound != b.bound || a.unbounded != b.unbounded) throw BoundMismatch("series truncated differently");
  return a.terms == b.terms;
}

namespace {

struct Split {
  std::vector<Factor> pos, neg, free;
};

Split split(const ERat& f, Var lambda) {
  Split s;
  for (const auto& [factor, mult] : f.denominator()) {
    const Exponent e = factor.mono[lambda];
    if (e != 0 && factor.coeff != 1) throw UnsupportedShape("factor with a coefficient other than 1");
    auto& dst = e > 0 ? s.pos : e < 0 ? s.neg : s.free;
    for (unsigned k = 0; k < mult; ++k) dst.push_back(factor);
  }
  return s;
}

ERat build(LaurentPoly num, std::initializer_list<std::vector<Factor>> parts) {
  std::vector<FactorPower> den;
  for (const auto& part : parts)
    for (const auto& f : part) den.push_back({f, 1});
  return ERat(std::move(num), std::move(den));
}

// prod 1/(1 - m_i) truncated to |lambda exponent| <= reach; all exponents share one sign.
LaurentPoly one_sided(const std::vector<Factor>& factors, Var lambda, Exponent reach) {
  LaurentPoly series(1);
  for (const auto& f : factors) {
    const Exponent step = f.mono[lambda] > 0 ? f.mono[lambda] : -f.mono[lambda];
    LaurentPoly geo;
    Term power(1);
    for (Exponent used = 0; used <= reach; used += step) {
      geo += LaurentPoly(power);
      power = power * Term(f.coeff, f.mono);
    }
    const LaurentPoly full = series * geo;
    std::vector<Term> kept;
    for (const auto& t : full.terms())
      if (std::abs(t.mono[lambda]) <= reach) kept.push_back(t);
    series = LaurentPoly::from_terms(std::move(kept));
  }
  return series;
}

Factor merged(const Factor& a, const Factor& b) { return {a.coeff * b.coeff, a.mono * b.mono}; }

}  // namespace

ERatSum elliott_reduce_ct(const ERat& f, Var lambda) {
  ERatSum out;
  std::vector<ERat> work{f};
  while (!work.empty()) {
    ERat cur = std::move(work.back());
    work.pop_back();
    if (cur.is_zero()) continue;
    Split s = split(cur, lambda);
    if (!s.pos.empty() && !s.neg.empty()) {
      // The steepest pair on each side; other choices can cycle.
      auto by_power = [&](const Factor& a, const Factor& b) { return a.mono[lambda] < b.mono[lambda]; };
      std::iter_swap(std::max_element(s.pos.begin(), s.pos.end(), by_power), s.pos.end() - 1);
      std::iter_swap(std::min_element(s.neg.begin(), s.neg.end(), by_power), s.neg.end() - 1);
      const Factor x = s.pos.back(), y = s.neg.back();
      s.pos.pop_back();
      s.neg.pop_back();
      std::vector<Factor> fresh{merged(x, y)};
      std::vector<Factor> with_x = s.pos, with_y = s.neg;
      with_x.push_back(x);
      with_y.push_back(y);
      work.push_back(build(cur.numerator(), {fresh, with_x, s.neg, s.free}));
      work.push_back(build(cur.numerator(), {fresh, s.pos, with_y, s.free}));
      work.push_back(build(-cur.numerator(), {fresh, s.pos, s.neg, s.free}));
      continue;
    }
    // One-sided: the constant term pairs numerator powers with series powers of opposite sign.
    const LaurentPoly& num = cur.numerator();
    const bool positive = !s.pos.empty();
    const auto& side = positive ? s.pos : s.neg;
    Exponent reach = 0;
    if (!side.empty()) reach = std::max<Exponent>(0, positive ? -num.min_degree(lambda) : num.degree(lambda));
    const LaurentPoly ct = coefficient(num * one_sided(side, lambda, reach), lambda, 0);
    if (!ct.is_zero()) out.push_back(build(ct, {s.free}));
  }
  return out;
}

}  // namespace ell
