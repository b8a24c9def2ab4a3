#include "ell/monomial.hpp"

#include <algorithm>

#include "ell/error.hpp"

namespace ell {

Exponent checked_add(Exponent a, Exponent b) {
  Exponent r;
  if (__builtin_add_overflow(a, b, &r)) throw ExponentOverflow();
  return r;
}

Exponent checked_mul(Exponent a, Exponent b) {
  Exponent r;
  if (__builtin_mul_overflow(a, b, &r)) throw ExponentOverflow();
  return r;
}

VarTable::VarTable(std::initializer_list<std::string> names) {
  for (const auto& n : names) add(n);
}

VarTable::VarTable(std::vector<std::string> names) {
  for (auto& n : names) add(std::move(n));
}

Var VarTable::add(std::string name) {
  if (index_.contains(name)) throw InvalidParams("duplicate variable '" + name + "'");
  const Var v = names_.size();
  index_.emplace(name, v);
  names_.push_back(std::move(name));
  return v;
}

std::optional<Var> VarTable::find(std::string_view name) const {
  if (auto it = index_.find(name); it != index_.end()) return it->second;
  return std::nullopt;
}

Var VarTable::at(std::string_view name) const {
  if (auto v = find(name)) return *v;
  throw InvalidParams("unknown variable '" + std::string(name) + "'");
}

Monomial::Monomial(std::span<const Exponent> exponents) : exps_(exponents.begin(), exponents.end()) {
  trim();
}

Monomial::Monomial(std::initializer_list<std::pair<Var, Exponent>> powers) {
  for (const auto& [v, e] : powers) *this *= variable(v, e);
}

Monomial Monomial::variable(Var v, Exponent e) {
  Monomial m;
  if (e != 0) {
    m.exps_.assign(v + 1, 0);
    m.exps_[v] = e;
  }
  return m;
}

bool Monomial::is_nonnegative() const noexcept {
  return std::all_of(exps_.begin(), exps_.end(), [](Exponent e) { return e >= 0; });
}

Exponent Monomial::total_degree() const {
  Exponent d = 0;
  for (Exponent e : exps_) d = checked_add(d, e);
  return d;
}

Monomial Monomial::with(Var v, Exponent e) const {
  Monomial m = *this;
  if (v >= m.exps_.size()) {
    if (e == 0) return m;
    m.exps_.resize(v + 1, 0);
  }
  m.exps_[v] = e;
  m.trim();
  return m;
}

Monomial Monomial::inverse() const {
  Monomial m = *this;
  for (auto& e : m.exps_) e = checked_mul(e, -1);
  return m;
}

Monomial Monomial::pow(Exponent e) const {
  if (e == 0) return {};
  Monomial m = *this;
  for (auto& x : m.exps_) x = checked_mul(x, e);
  return m;
}

Monomial& Monomial::operator*=(const Monomial& rhs) {
  if (rhs.exps_.size() > exps_.size()) exps_.resize(rhs.exps_.size(), 0);
  for (std::size_t i = 0; i < rhs.exps_.size(); ++i) exps_[i] = checked_add(exps_[i], rhs.exps_[i]);
  trim();
  return *this;
}

Monomial& Monomial::operator/=(const Monomial& rhs) {
  if (rhs.exps_.size() > exps_.size()) exps_.resize(rhs.exps_.size(), 0);
  for (std::size_t i = 0; i < rhs.exps_.size(); ++i) {
    Exponent r;
    if (__builtin_sub_overflow(exps_[i], rhs.exps_[i], &r)) throw ExponentOverflow();
    exps_[i] = r;
  }
  trim();
  return *this;
}

std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) noexcept {
  const std::size_t n = std::max(a.exps_.size(), b.exps_.size());
  for (std::size_t i = n; i-- > 0;) {
    const Exponent x = a[i];
    const Exponent y = b[i];
    if (x != y) return x <=> y;
  }
  return std::strong_ordering::equal;
}

std::size_t Monomial::hash() const noexcept {
  std::size_t h = 0x9e3779b97f4a7c15ULL;
  for (Exponent e : exps_) h = (h ^ static_cast<std::size_t>(e)) * 0x100000001b3ULL + (h >> 29);
  return h;
}

void Monomial::trim() noexcept {
  while (!exps_.empty() && exps_.back() == 0) exps_.pop_back();
}

}  // namespace ell
