#include "ell/omega.hpp"

#include <algorithm>

namespace ell {

std::size_t cf_count(std::span<const ERat> s, Var lambda) {
  std::size_t n = 0;
  for (const auto& f : s)
    for (const auto& [factor, mult] : f.denominator()) {
      const auto nf = normalize_factor(factor, lambda);
      if (nf && contributes(*nf, lambda)) n += mult;
    }
  return n;
}

namespace {

ERatSum eliminate_one(const ERatSum& s, const Step& step, const ElimOptions& opts) {
  const Strategy strategy = opts.strategy;
  ERatSum out;
  for (const auto& f : s) {
    if (step.mode == Mode::EQ) {
      for (auto& t : ct_one(f, step.var, strategy)) out.push_back(std::move(t));
    } else {
      const PTResult pt = pt_one(f, step.var, strategy);
      for (auto& t : erat_subst_unity(pt.terms, step.var)) out.push_back(std::move(t));
    }
  }
  if (opts.simplify)
    for (auto& t : out) t = simplify(t);
  return out;
}

}  // namespace

ERatSum eliminate(ERatSum s, std::vector<Step> steps, const ElimOptions& opts, const StepObserver& observe) {
  while (!steps.empty()) {
    auto next = steps.begin();
    if (opts.order == OrderPolicy::Heuristic) {
      std::size_t best = cf_count(s, next->var);
      for (auto it = std::next(steps.begin()); it != steps.end(); ++it) {
        const std::size_t c = cf_count(s, it->var);
        if (c < best) {
          best = c;
          next = it;
        }
      }
    }
    const Step step = *next;
    steps.erase(next);
    s = eliminate_one(s, step, opts);
    if (observe) observe(step.var, s.size());
  }
  if (opts.combine && !s.empty()) {
    ERat c = erat_combine(s);
    s.clear();
    if (!c.is_zero()) s.push_back(std::move(c));
  }
  return s;
}

ERatSum omega_ge(ERatSum s, const std::vector<Var>& lambdas, const ElimOptions& opts) {
  std::vector<Step> steps;
  for (Var v : lambdas) steps.push_back({v, Mode::GE});
  return eliminate(std::move(s), std::move(steps), opts);
}

ERatSum omega_eq(ERatSum s, const std::vector<Var>& lambdas, const ElimOptions& opts) {
  std::vector<Step> steps;
  for (Var v : lambdas) steps.push_back({v, Mode::EQ});
  return eliminate(std::move(s), std::move(steps), opts);
}

}  // namespace ell
