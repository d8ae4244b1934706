// Self-contained dense LP solver: two-phase primal simplex with Bland's
// pivoting rule. Deterministic, exact over rationals, no external solver.
//
// Internal reduction to standard form:
//   - equality rows become a <= and a >= pair,
//   - >= rows are negated into <= rows,
//   - variables are shifted/mirrored onto y >= 0; free variables split into
//     a difference of two nonnegative parts,
//   - double-bounded variables get an explicit upper-bound row.
#pragma once

#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "atsp/rational.hpp"

namespace atsp {

enum class Relation { LessEq, Equal, GreaterEq };
enum class LpStatus { Optimal, Infeasible, Unbounded };

template <class S = Rational>
struct LpConstraint {
  std::vector<S> coeffs;
  Relation rel = Relation::LessEq;
  S rhs{};
};

template <class S = Rational>
struct LpModel {
  int num_vars = 0;
  std::vector<S> objective;  // minimized
  std::vector<LpConstraint<S>> constraints;
  std::vector<std::optional<S>> lower;  // nullopt = -infinity
  std::vector<std::optional<S>> upper;  // nullopt = +infinity
};

template <class S = Rational>
LpModel<S> make_lp(int num_vars) {
  LpModel<S> m;
  m.num_vars = num_vars;
  m.objective.assign(static_cast<std::size_t>(num_vars), S(0));
  m.lower.assign(static_cast<std::size_t>(num_vars), std::nullopt);
  m.upper.assign(static_cast<std::size_t>(num_vars), std::nullopt);
  return m;
}

template <class S = Rational>
struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  S objective_value{};
  std::vector<S> primal;  // length num_vars when Optimal
  // Float-mode metadata: set when some accepted pivot magnitude fell below
  // the warning threshold. Always false in exact mode.
  bool conditioning_warning = false;
};

// Appends a row, leaving the input model untouched. No deduplication.
template <class S>
LpModel<S> lp_add_constraint(LpModel<S> m, LpConstraint<S> row) {
  if (static_cast<int>(row.coeffs.size()) != m.num_vars)
    throw std::invalid_argument("constraint length does not match num_vars");
  m.constraints.push_back(std::move(row));
  return m;
}

template <class S>
void validate_model(const LpModel<S>& m) {
  if (m.num_vars < 0) throw std::invalid_argument("negative num_vars");
  auto nv = static_cast<std::size_t>(m.num_vars);
  if (m.objective.size() != nv) throw std::invalid_argument("objective length mismatch");
  if (m.lower.size() != nv || m.upper.size() != nv)
    throw std::invalid_argument("bounds length mismatch");
  for (const auto& c : m.constraints)
    if (c.coeffs.size() != nv) throw std::invalid_argument("constraint length mismatch");
  for (std::size_t j = 0; j < nv; ++j)
    if (m.lower[j] && m.upper[j] && *m.lower[j] > *m.upper[j])
      throw std::invalid_argument("variable with lower > upper");
}

namespace detail {

// How original variable j maps onto the nonnegative y-space.
template <class S>
struct VarMap {
  enum class Kind { ShiftLower, MirrorUpper, FreeSplit } kind;
  int y = 0;       // first y index
  S offset{};      // lower bound (ShiftLower) or upper bound (MirrorUpper)
};

template <class S>
class SimplexTableau {
 public:
  // rows: the <= system over y >= 0 (coefficients and rhs).
  SimplexTableau(std::vector<std::vector<S>> rows, std::vector<S> rhs, int num_y)
      : num_y_(num_y), m_(static_cast<int>(rows.size())), m_orig_(m_) {
    // Layout: [y variables | slacks | artificials] with one slack per row.
    num_art_ = 0;
    for (int i = 0; i < m_; ++i)
      if (rhs[static_cast<std::size_t>(i)] < S(0)) ++num_art_;
    width_ = num_y_ + m_ + num_art_;
    tab_.assign(static_cast<std::size_t>(m_), std::vector<S>(static_cast<std::size_t>(width_), S(0)));
    rhs_.assign(static_cast<std::size_t>(m_), S(0));
    basis_.assign(static_cast<std::size_t>(m_), -1);
    int art = num_y_ + m_;
    for (int i = 0; i < m_; ++i) {
      auto& row = tab_[static_cast<std::size_t>(i)];
      bool negate = rhs[static_cast<std::size_t>(i)] < S(0);
      for (int j = 0; j < num_y_; ++j) {
        const S& a = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        if (a != S(0)) row[static_cast<std::size_t>(j)] = negate ? S(-a) : a;
      }
      row[static_cast<std::size_t>(num_y_ + i)] = negate ? S(-1) : S(1);
      rhs_[static_cast<std::size_t>(i)] = negate ? S(-rhs[static_cast<std::size_t>(i)])
                                                 : rhs[static_cast<std::size_t>(i)];
      if (negate) {
        row[static_cast<std::size_t>(art)] = S(1);
        basis_[static_cast<std::size_t>(i)] = art;
        ++art;
      } else {
        basis_[static_cast<std::size_t>(i)] = num_y_ + i;
      }
    }
  }

  bool has_artificials() const { return num_art_ > 0; }
  bool conditioning_warning() const { return warning_; }

  // Phase 1: minimize the sum of artificials. Returns false when the
  // phase-1 optimum is positive (original system infeasible).
  bool phase1() {
    if (num_art_ == 0) return true;
    std::vector<S> cost(static_cast<std::size_t>(width_), S(0));
    for (int j = num_y_ + m_orig_; j < width_; ++j) cost[static_cast<std::size_t>(j)] = S(1);
    run(cost, /*allow_unbounded=*/false);
    S infeas(0);
    for (int i = 0; i < m_; ++i)
      if (basis_[static_cast<std::size_t>(i)] >= num_y_ + m_orig_) infeas += rhs_[static_cast<std::size_t>(i)];
    if (infeas > scalar_traits<S>::feasibility_tolerance()) return false;
    drop_artificials();
    return true;
  }

  // Phase 2 on the y-objective. Returns false when unbounded.
  bool phase2(const std::vector<S>& y_cost) {
    std::vector<S> cost(static_cast<std::size_t>(width_), S(0));
    for (int j = 0; j < num_y_; ++j) cost[static_cast<std::size_t>(j)] = y_cost[static_cast<std::size_t>(j)];
    return run(cost, /*allow_unbounded=*/true);
  }

  std::vector<S> extract_y() const {
    std::vector<S> y(static_cast<std::size_t>(num_y_), S(0));
    for (int i = 0; i < m_; ++i) {
      int b = basis_[static_cast<std::size_t>(i)];
      if (b < num_y_) y[static_cast<std::size_t>(b)] = rhs_[static_cast<std::size_t>(i)];
    }
    return y;
  }

 private:
  // Bland's rule simplex loop over the given cost vector. Returns false only
  // when an unbounded direction is found (and allow_unbounded is set).
  bool run(const std::vector<S>& cost, bool allow_unbounded) {
    const S tol = scalar_traits<S>::feasibility_tolerance();
    // Reduced costs for the current basis.
    std::vector<S> red(cost);
    for (int i = 0; i < m_; ++i) {
      const S& cb = cost[static_cast<std::size_t>(basis_[static_cast<std::size_t>(i)])];
      if (cb == S(0)) continue;
      const auto& row = tab_[static_cast<std::size_t>(i)];
      for (int j = 0; j < width_; ++j)
        if (row[static_cast<std::size_t>(j)] != S(0))
          red[static_cast<std::size_t>(j)] -= cb * row[static_cast<std::size_t>(j)];
    }
    for (;;) {
      // Entering: smallest index with negative reduced cost (Bland).
      int pc = -1;
      for (int j = 0; j < width_; ++j) {
        if (red[static_cast<std::size_t>(j)] < -tol) {
          pc = j;
          break;
        }
      }
      if (pc < 0) return true;  // optimal for this phase
      // Leaving: minimum ratio, ties by smallest basic variable index. Any
      // strictly positive entry is eligible; float mode flags pivots below
      // the warning threshold instead of skipping them.
      int pr = -1;
      S best{};
      for (int i = 0; i < m_; ++i) {
        const S& a = tab_[static_cast<std::size_t>(i)][static_cast<std::size_t>(pc)];
        if (a <= S(0)) continue;
        S ratio = rhs_[static_cast<std::size_t>(i)] / a;
        if (pr < 0 || ratio < best ||
            (ratio == best && basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(pr)])) {
          pr = i;
          best = ratio;
        }
      }
      if (pr < 0) {
        if (allow_unbounded) return false;
        throw std::logic_error("phase-1 objective unbounded");  // cannot happen
      }
      pivot(pr, pc, red);
    }
  }

  void pivot(int pr, int pc, std::vector<S>& red) {
    auto& prow = tab_[static_cast<std::size_t>(pr)];
    S piv = prow[static_cast<std::size_t>(pc)];
    if constexpr (!scalar_traits<S>::is_exact) {
      if (abs_value(piv) < scalar_traits<S>::pivot_warning_threshold()) warning_ = true;
    }
    if (piv != S(1)) {
      for (int j = 0; j < width_; ++j)
        if (prow[static_cast<std::size_t>(j)] != S(0)) prow[static_cast<std::size_t>(j)] /= piv;
      rhs_[static_cast<std::size_t>(pr)] /= piv;
    }
    for (int i = 0; i < m_; ++i) {
      if (i == pr) continue;
      auto& row = tab_[static_cast<std::size_t>(i)];
      const S f = row[static_cast<std::size_t>(pc)];
      if (f == S(0)) continue;
      for (int j = 0; j < width_; ++j)
        if (prow[static_cast<std::size_t>(j)] != S(0))
          row[static_cast<std::size_t>(j)] -= f * prow[static_cast<std::size_t>(j)];
      rhs_[static_cast<std::size_t>(i)] -= f * rhs_[static_cast<std::size_t>(pr)];
    }
    {
      const S f = red[static_cast<std::size_t>(pc)];
      if (f != S(0))
        for (int j = 0; j < width_; ++j)
          if (prow[static_cast<std::size_t>(j)] != S(0))
            red[static_cast<std::size_t>(j)] -= f * prow[static_cast<std::size_t>(j)];
    }
    basis_[static_cast<std::size_t>(pr)] = pc;
  }

  // After a zero phase-1 optimum, pivot artificials out of the basis, then
  // truncate the artificial columns. Because every row carries its own slack
  // the rows stay linearly independent, so a pivot column always exists; the
  // drop branch is a guard only. Pivoting on a zero-rhs row preserves
  // feasibility regardless of the pivot element's sign.
  void drop_artificials() {
    const S tol = scalar_traits<S>::feasibility_tolerance();
    std::vector<S> dummy(static_cast<std::size_t>(width_), S(0));
    for (int i = m_ - 1; i >= 0; --i) {
      if (basis_[static_cast<std::size_t>(i)] < num_y_ + m_orig_) continue;
      int pc = -1;
      for (int j = 0; j < num_y_ + m_orig_; ++j) {
        if (abs_value(tab_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) > tol) {
          pc = j;
          break;
        }
      }
      if (pc >= 0) {
        pivot(i, pc, dummy);
      } else {
        tab_.erase(tab_.begin() + i);
        rhs_.erase(rhs_.begin() + i);
        basis_.erase(basis_.begin() + i);
        --m_;
      }
    }
    // Slack column indices are relative to the original row count, so only
    // the trailing artificial block is removed.
    width_ = num_y_ + m_orig_;
    for (auto& row : tab_) row.resize(static_cast<std::size_t>(width_));
  }

  int num_y_;
  int m_;
  int m_orig_;
  int num_art_ = 0;
  int width_ = 0;
  bool warning_ = false;
  std::vector<std::vector<S>> tab_;
  std::vector<S> rhs_;
  std::vector<int> basis_;
};

}  // namespace detail

template <class S>
LpSolution<S> lp_solve(const LpModel<S>& m) {
  validate_model(m);
  const auto nv = static_cast<std::size_t>(m.num_vars);

  // Map original variables onto y >= 0.
  std::vector<detail::VarMap<S>> vmap(nv);
  int num_y = 0;
  std::vector<std::size_t> double_bounded;
  for (std::size_t j = 0; j < nv; ++j) {
    if (m.lower[j]) {
      vmap[j] = {detail::VarMap<S>::Kind::ShiftLower, num_y, *m.lower[j]};
      num_y += 1;
      if (m.upper[j]) double_bounded.push_back(j);
    } else if (m.upper[j]) {
      vmap[j] = {detail::VarMap<S>::Kind::MirrorUpper, num_y, *m.upper[j]};
      num_y += 1;
    } else {
      vmap[j] = {detail::VarMap<S>::Kind::FreeSplit, num_y, S(0)};
      num_y += 2;
    }
  }

  // Substitute into each row and emit the <= system over y.
  std::vector<std::vector<S>> rows;
  std::vector<S> rhs;
  auto emit = [&](const std::vector<S>& coeffs, const S& b, bool negated) {
    std::vector<S> yrow(static_cast<std::size_t>(num_y), S(0));
    S rb = negated ? S(-b) : b;
    for (std::size_t j = 0; j < nv; ++j) {
      S a = negated ? S(-coeffs[j]) : coeffs[j];
      if (a == S(0)) continue;
      const auto& vm = vmap[j];
      switch (vm.kind) {
        case detail::VarMap<S>::Kind::ShiftLower:
          yrow[static_cast<std::size_t>(vm.y)] += a;
          rb -= a * vm.offset;
          break;
        case detail::VarMap<S>::Kind::MirrorUpper:
          yrow[static_cast<std::size_t>(vm.y)] -= a;
          rb -= a * vm.offset;
          break;
        case detail::VarMap<S>::Kind::FreeSplit:
          yrow[static_cast<std::size_t>(vm.y)] += a;
          yrow[static_cast<std::size_t>(vm.y) + 1] -= a;
          break;
      }
    }
    rows.push_back(std::move(yrow));
    rhs.push_back(std::move(rb));
  };
  for (const auto& c : m.constraints) {
    if (c.rel == Relation::LessEq || c.rel == Relation::Equal) emit(c.coeffs, c.rhs, false);
    if (c.rel == Relation::GreaterEq || c.rel == Relation::Equal) emit(c.coeffs, c.rhs, true);
  }
  // Upper-bound rows for double-bounded variables: y_j <= upper - lower.
  for (std::size_t j : double_bounded) {
    std::vector<S> yrow(static_cast<std::size_t>(num_y), S(0));
    yrow[static_cast<std::size_t>(vmap[j].y)] = S(1);
    rows.push_back(std::move(yrow));
    rhs.push_back(S(*m.upper[j] - *m.lower[j]));
  }

  // Objective over y (the constant offset from shifts is reapplied at the end
  // by evaluating the original objective on the recovered x).
  std::vector<S> y_cost(static_cast<std::size_t>(num_y), S(0));
  for (std::size_t j = 0; j < nv; ++j) {
    const S& a = m.objective[j];
    if (a == S(0)) continue;
    const auto& vm = vmap[j];
    switch (vm.kind) {
      case detail::VarMap<S>::Kind::ShiftLower:
        y_cost[static_cast<std::size_t>(vm.y)] += a;
        break;
      case detail::VarMap<S>::Kind::MirrorUpper:
        y_cost[static_cast<std::size_t>(vm.y)] -= a;
        break;
      case detail::VarMap<S>::Kind::FreeSplit:
        y_cost[static_cast<std::size_t>(vm.y)] += a;
        y_cost[static_cast<std::size_t>(vm.y) + 1] -= a;
        break;
    }
  }

  detail::SimplexTableau<S> tab(std::move(rows), std::move(rhs), num_y);
  LpSolution<S> sol;
  if (!tab.phase1()) {
    sol.status = LpStatus::Infeasible;
    sol.conditioning_warning = tab.conditioning_warning();
    return sol;
  }
  if (!tab.phase2(y_cost)) {
    sol.status = LpStatus::Unbounded;
    sol.conditioning_warning = tab.conditioning_warning();
    return sol;
  }

  std::vector<S> y = tab.extract_y();
  sol.status = LpStatus::Optimal;
  sol.conditioning_warning = tab.conditioning_warning();
  sol.primal.assign(nv, S(0));
  for (std::size_t j = 0; j < nv; ++j) {
    const auto& vm = vmap[j];
    switch (vm.kind) {
      case detail::VarMap<S>::Kind::ShiftLower:
        sol.primal[j] = vm.offset + y[static_cast<std::size_t>(vm.y)];
        break;
      case detail::VarMap<S>::Kind::MirrorUpper:
        sol.primal[j] = vm.offset - y[static_cast<std::size_t>(vm.y)];
        break;
      case detail::VarMap<S>::Kind::FreeSplit:
        sol.primal[j] = y[static_cast<std::size_t>(vm.y)] - y[static_cast<std::size_t>(vm.y) + 1];
        break;
    }
  }
  sol.objective_value = S(0);
  for (std::size_t j = 0; j < nv; ++j)
    if (m.objective[j] != S(0)) sol.objective_value += m.objective[j] * sol.primal[j];
  return sol;
}

// Maximum constraint/bound violation of a candidate primal vector; used by
// tests and the solution-verification invariant.
template <class S>
S lp_violation(const LpModel<S>& m, const std::vector<S>& primal) {
  validate_model(m);
  if (primal.size() != static_cast<std::size_t>(m.num_vars))
    throw std::invalid_argument("primal length mismatch");
  S worst(0);
  auto update = [&](const S& v) {
    if (v > worst) worst = v;
  };
  for (const auto& c : m.constraints) {
    S lhs(0);
    for (std::size_t j = 0; j < primal.size(); ++j)
      if (c.coeffs[j] != S(0)) lhs += c.coeffs[j] * primal[j];
    switch (c.rel) {
      case Relation::LessEq: update(S(lhs - c.rhs)); break;
      case Relation::GreaterEq: update(S(c.rhs - lhs)); break;
      case Relation::Equal: update(abs_value(S(lhs - c.rhs))); break;
    }
  }
  for (std::size_t j = 0; j < primal.size(); ++j) {
    if (m.lower[j]) update(S(*m.lower[j] - primal[j]));
    if (m.upper[j]) update(S(primal[j] - *m.upper[j]));
  }
  return worst;
}

}  // namespace atsp
