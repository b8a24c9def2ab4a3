#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/container/small_vector.hpp>

namespace ell {

using Exponent = std::int64_t;

/// Index of a variable in a VarTable. The index is also the variable's rank in
/// the iterated Laurent field: a larger index is infinitesimally smaller.
using Var = std::size_t;

Exponent checked_add(Exponent a, Exponent b);
Exponent checked_mul(Exponent a, Exponent b);

/// Ordered, duplicate-free list of variable names.
class VarTable {
 public:
  VarTable() = default;
  VarTable(std::initializer_list<std::string> names);
  explicit VarTable(std::vector<std::string> names);

  /// Appends a variable; throws InvalidParams on a duplicate name.
  Var add(std::string name);

  std::optional<Var> find(std::string_view name) const;
  Var at(std::string_view name) const;
  const std::string& name(Var v) const { return names_.at(v); }
  std::size_t size() const noexcept { return names_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }

  friend bool operator==(const VarTable& a, const VarTable& b) { return a.names_ == b.names_; }

 private:
  std::vector<std::string> names_;
  std::map<std::string, Var, std::less<>> index_;
};

/// Laurent monomial stored as a dense exponent vector indexed by Var, with
/// trailing zeros trimmed so that equal monomials have equal storage.
///
/// The three-way comparison implements the reverse lexicographic order of the
/// iterated Laurent field: the highest-ranked variable whose exponents differ
/// decides, and the smaller exponent is the smaller monomial. Hence
/// `pow(x_i, s) < x_j` whenever i < j, and a smaller monomial is a larger
/// magnitude.
class Monomial {
 public:
  using Storage = boost::container::small_vector<Exponent, 8>;

  Monomial() = default;
  explicit Monomial(std::span<const Exponent> exponents);
  Monomial(std::initializer_list<std::pair<Var, Exponent>> powers);

  static Monomial variable(Var v, Exponent e = 1);

  Exponent operator[](Var v) const noexcept { return v < exps_.size() ? exps_[v] : 0; }
  std::span<const Exponent> exponents() const noexcept { return {exps_.data(), exps_.size()}; }

  /// One past the highest variable with a nonzero exponent.
  std::size_t extent() const noexcept { return exps_.size(); }
  bool is_one() const noexcept { return exps_.empty(); }
  bool is_nonnegative() const noexcept;
  Exponent total_degree() const;

  /// Same monomial with the exponent of v replaced by e.
  Monomial with(Var v, Exponent e) const;
  Monomial without(Var v) const { return with(v, 0); }

  Monomial inverse() const;
  Monomial pow(Exponent e) const;

  Monomial& operator*=(const Monomial& rhs);
  Monomial& operator/=(const Monomial& rhs);
  friend Monomial operator*(Monomial a, const Monomial& b) { return a *= b; }
  friend Monomial operator/(Monomial a, const Monomial& b) { return a /= b; }

  friend bool operator==(const Monomial& a, const Monomial& b) noexcept { return a.exps_ == b.exps_; }
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) noexcept;

  std::size_t hash() const noexcept;

 private:
  void trim() noexcept;
  Storage exps_;
};

/// Relation of m1 to m2 under the field order.
inline std::strong_ordering monomial_compare(const Monomial& m1, const Monomial& m2) noexcept {
  return m1 <=> m2;
}

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept { return m.hash(); }
};

}  // namespace ell
