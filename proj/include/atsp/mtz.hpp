// Node-order (u) constraints: u_i - u_j + n*x_ij <= n-1, slack evaluation,
// full feasibility check, and the corresponding LP relaxation bound.
//
// The arc family is every (i,j) with i != j and j != 1. Arcs closing into
// node 1 are excluded: even an integral tour violates the inequality on its
// closing arc, so the family keeps arcs out of node 1 but not into it. The u
// variables carry no bounds of their own.
#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "atsp/dfj.hpp"
#include "atsp/instance.hpp"
#include "atsp/lp.hpp"

namespace atsp {

// Node potentials u_1..u_n; u[0] unused so labels index directly.
template <class S = Rational>
struct Potentials {
  int n = 0;
  std::vector<S> u;

  friend bool operator==(const Potentials&, const Potentials&) = default;
};

template <class S>
void validate_potentials(const Potentials<S>& pot) {
  if (pot.u.size() != static_cast<std::size_t>(pot.n) + 1)
    throw std::invalid_argument("potentials vector has wrong length");
}

// Slack (n-1) - (u_i - u_j + n*x_ij); nonnegative iff the arc inequality
// holds.
template <class S>
S mtz_slack(const FractionalPoint<S>& p, const Potentials<S>& pot, int i, int j) {
  if (p.n != pot.n) throw std::invalid_argument("point and potentials disagree on n");
  if (i < 1 || i > p.n || j < 1 || j > p.n || i == j)
    throw std::domain_error("invalid arc");
  if (j == 1)
    throw std::domain_error("arcs into node 1 are outside the constraint family");
  return S(p.n - 1) - (pot.u[i] - pot.u[j] + S(p.n) * p.x[i][j]);
}

template <class S = Rational>
struct MtzViolation {
  int i = 0, j = 0;
  S slack{};  // negative
};

// First violated arc in lexicographic order, or nothing when (x,u) is
// feasible for the whole family.
template <class S>
std::optional<MtzViolation<S>> mtz_check(const FractionalPoint<S>& p, const Potentials<S>& pot) {
  validate_point(p);
  validate_potentials(pot);
  if (p.n != pot.n) throw std::invalid_argument("point and potentials disagree on n");
  const S tol = scalar_traits<S>::feasibility_tolerance();
  for (int i = 1; i <= p.n; ++i)
    for (int j = 2; j <= p.n; ++j) {
      if (i == j) continue;
      S slack = mtz_slack(p, pot, i, j);
      if (slack < -tol) return MtzViolation<S>{i, j, std::move(slack)};
    }
  return std::nullopt;
}

template <class S = Rational>
struct MtzBound {
  S value{};
  FractionalPoint<S> point;
  Potentials<S> potentials;
};

// One LP: minimize c.x over the degree relaxation plus the u inequalities,
// with the u variables free. Always feasible (any tour with visit-order
// potentials) and bounded (x lies in a box), hence Optimal.
template <class S>
MtzBound<S> mtz_lp_bound(const AtspInstance<S>& inst) {
  validate_instance(inst);
  const int n = inst.n;
  const int num_arcs = n * (n - 1);
  LpModel<S> m = detail::degree_lp(inst);
  m.num_vars = num_arcs + n;  // append free u_1..u_n
  m.objective.resize(static_cast<std::size_t>(m.num_vars), S(0));
  m.lower.resize(static_cast<std::size_t>(m.num_vars), std::nullopt);
  m.upper.resize(static_cast<std::size_t>(m.num_vars), std::nullopt);
  for (auto& c : m.constraints) c.coeffs.resize(static_cast<std::size_t>(m.num_vars), S(0));
  auto u_index = [&](int i) { return static_cast<std::size_t>(num_arcs + i - 1); };
  for (int i = 1; i <= n; ++i)
    for (int j = 2; j <= n; ++j) {
      if (i == j) continue;
      LpConstraint<S> row{std::vector<S>(static_cast<std::size_t>(m.num_vars), S(0)),
                          Relation::LessEq, S(n - 1)};
      row.coeffs[u_index(i)] += S(1);
      row.coeffs[u_index(j)] -= S(1);
      row.coeffs[static_cast<std::size_t>(arc_index(n, i, j))] = S(n);
      m.constraints.push_back(std::move(row));
    }
  LpSolution<S> sol = lp_solve(m);
  if (sol.status != LpStatus::Optimal)
    throw std::logic_error("the u-constrained relaxation must be feasible and bounded");
  MtzBound<S> out;
  out.value = sol.objective_value;
  out.point = detail::point_from_primal(n, sol.primal);
  out.potentials.n = n;
  out.potentials.u.assign(static_cast<std::size_t>(n) + 1, S(0));
  for (int i = 1; i <= n; ++i) out.potentials.u[i] = sol.primal[u_index(i)];
  return out;
}

// Visit-order potentials of a tour: 0 for node 1, k-1 for the k-th node.
template <class S = Rational>
Potentials<S> visit_order_potentials(const Tour& t) {
  Potentials<S> pot{t.n(), std::vector<S>(static_cast<std::size_t>(t.n()) + 1, S(0))};
  for (int k = 0; k < t.n(); ++k) pot.u[t.order[static_cast<std::size_t>(k)]] = S(k);
  return pot;
}

}  // namespace atsp
