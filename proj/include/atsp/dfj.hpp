// Subtour-elimination machinery: evaluation of sum_{i,j in Q} x_ij <= |Q|-1
// over Q subset of {2..n}, exhaustive and min-cut separation, the LP bound by
// cutting planes, and a desk-scale brute-force tour oracle.
#pragma once

#include <algorithm>
#include <bit>
#include <optional>
#include <queue>
#include <stdexcept>
#include <vector>

#include "atsp/instance.hpp"
#include "atsp/lp.hpp"

namespace atsp {

// A violated subtour-elimination inequality. The node set never contains
// node 1 and violation is strictly positive by construction.
template <class S = Rational>
struct CutCertificate {
  std::vector<int> q;  // sorted ascending
  S lhs{};
  S violation{};
};

// sum of x_ij over ordered pairs of q. Node 1 is outside the inequality
// family, so q must avoid it and contain at least two nodes.
template <class S>
S dfj_lhs(const FractionalPoint<S>& p, const std::vector<int>& q) {
  if (q.size() < 2) throw std::domain_error("subtour set needs at least 2 nodes");
  std::vector<bool> seen(static_cast<std::size_t>(p.n) + 1, false);
  for (int v : q) {
    if (v == 1) throw std::domain_error("subtour set must not contain node 1");
    if (v < 2 || v > p.n) throw std::domain_error("node label out of range");
    if (seen[static_cast<std::size_t>(v)]) throw std::domain_error("duplicate node in subtour set");
    seen[static_cast<std::size_t>(v)] = true;
  }
  S total(0);
  for (int i : q)
    for (int j : q)
      if (i != j) total += p.x[i][j];
  return total;
}

namespace detail {

inline std::vector<int> nodes_of_mask(std::uint32_t mask) {
  std::vector<int> q;
  for (int b = 0; mask >> b; ++b)
    if ((mask >> b) & 1u) q.push_back(b + 2);
  return q;
}

}  // namespace detail

// Checks every Q subset of {2..n} with |Q| >= 2. Returns a certificate for a
// maximally violated subset, ties broken by smaller set then lexicographic
// node order. Subset sums are built incrementally, so the whole enumeration
// costs O(n * 2^(n-1)) scalar additions.
template <class S>
std::optional<CutCertificate<S>> dfj_check_enumerate(const FractionalPoint<S>& p) {
  if (p.n > 20) throw std::invalid_argument("dfj_check_enumerate limited to n <= 20");
  const int bits = p.n - 1;  // bit b represents node b+2
  const std::uint32_t top = 1u << bits;
  std::vector<S> lhs(top, S(0));
  std::optional<std::uint32_t> best_mask;
  S best_violation(0);
  for (std::uint32_t mask = 1; mask < top; ++mask) {
    int low = std::countr_zero(mask);
    std::uint32_t rest = mask & (mask - 1);
    int v = low + 2;
    S sum = lhs[rest];
    for (int b = 0; rest >> b; ++b)
      if ((rest >> b) & 1u) {
        int u = b + 2;
        sum += p.x[u][v];
        sum += p.x[v][u];
      }
    lhs[mask] = sum;
    int size = std::popcount(mask);
    if (size < 2) continue;
    S violation = sum - S(size - 1);
    if (violation <= S(0)) continue;
    if (!best_mask) {
      best_mask = mask;
      best_violation = violation;
      continue;
    }
    if (violation < best_violation) continue;
    if (violation > best_violation) {
      best_mask = mask;
      best_violation = violation;
      continue;
    }
    int best_size = std::popcount(*best_mask);
    if (size > best_size) continue;
    if (size < best_size || detail::nodes_of_mask(mask) < detail::nodes_of_mask(*best_mask)) {
      best_mask = mask;
      best_violation = violation;
    }
  }
  if (!best_mask) return std::nullopt;
  return CutCertificate<S>{detail::nodes_of_mask(*best_mask), lhs[*best_mask], best_violation};
}

// Exact separation via max-flow. For a degree-feasible point,
// sum_{i,j in Q} x_ij = |Q| - x(delta_out(Q)), so Q violates the inequality
// exactly when the x-capacity leaving Q is below 1; that capacity is a 1->k
// min cut for any k in Q. Sinks are scanned in increasing order and the
// first violated sink-side set is returned.
template <class S>
std::optional<CutCertificate<S>> separation_mincut(const FractionalPoint<S>& p) {
  if (!check_degrees(p)) throw std::domain_error("separation_mincut needs a degree-feasible point");
  const int n = p.n;
  const S tol = scalar_traits<S>::feasibility_tolerance();
  const S limit = S(1) - tol;
  std::vector<std::vector<S>> residual;
  std::vector<int> parent(static_cast<std::size_t>(n) + 1);

  for (int sink = 2; sink <= n; ++sink) {
    residual = p.x;
    S flow(0);
    bool enough = false;
    for (;;) {
      // Shortest augmenting path by BFS, neighbors scanned in label order.
      std::fill(parent.begin(), parent.end(), 0);
      parent[1] = 1;
      std::queue<int> bfs;
      bfs.push(1);
      while (!bfs.empty() && parent[static_cast<std::size_t>(sink)] == 0) {
        int u = bfs.front();
        bfs.pop();
        for (int v = 1; v <= n; ++v)
          if (parent[static_cast<std::size_t>(v)] == 0 && residual[u][v] > S(0)) {
            parent[static_cast<std::size_t>(v)] = u;
            bfs.push(v);
          }
      }
      if (parent[static_cast<std::size_t>(sink)] == 0) break;  // sink unreachable: cut found
      S bottleneck = residual[parent[static_cast<std::size_t>(sink)]][sink];
      for (int v = sink; v != 1; v = parent[static_cast<std::size_t>(v)]) {
        const S& r = residual[parent[static_cast<std::size_t>(v)]][v];
        if (r < bottleneck) bottleneck = r;
      }
      for (int v = sink; v != 1; v = parent[static_cast<std::size_t>(v)]) {
        int u = parent[static_cast<std::size_t>(v)];
        residual[u][v] -= bottleneck;
        residual[v][u] += bottleneck;
      }
      flow += bottleneck;
      if (flow >= limit) {  // this sink cannot yield a violated cut
        enough = true;
        break;
      }
    }
    if (enough) continue;
    // Sink side of the min cut: nodes unreachable from 1 in the residual
    // graph (parent was filled by the final failed BFS).
    std::vector<int> q;
    for (int v = 2; v <= n; ++v)
      if (parent[static_cast<std::size_t>(v)] == 0) q.push_back(v);
    if (q.size() < 2) continue;  // excluded by degree feasibility; float guard
    S lhs = dfj_lhs(p, q);
    S violation = lhs - S(static_cast<int>(q.size()) - 1);
    if (violation > tol) return CutCertificate<S>{std::move(q), std::move(lhs), std::move(violation)};
  }
  return std::nullopt;
}

template <class S = Rational>
struct DfjBound {
  S value{};
  FractionalPoint<S> point;
  std::vector<CutCertificate<S>> cuts;  // in the order they were added
  std::vector<S> value_history;         // LP value after each solve; non-decreasing
};

namespace detail {

// Degree-constrained base relaxation shared by both formulations:
// variables x_ij for all arcs, bounds [0,1], row/column sums equal to 1.
template <class S>
LpModel<S> degree_lp(const AtspInstance<S>& inst) {
  const int n = inst.n;
  const int num_arcs = n * (n - 1);
  LpModel<S> m = make_lp<S>(num_arcs);
  for (int idx = 0; idx < num_arcs; ++idx) {
    auto [i, j] = arc_from_index(n, idx);
    m.objective[static_cast<std::size_t>(idx)] = inst.costs[i][j];
    m.lower[static_cast<std::size_t>(idx)] = S(0);
    m.upper[static_cast<std::size_t>(idx)] = S(1);
  }
  for (int i = 1; i <= n; ++i) {
    LpConstraint<S> out{std::vector<S>(static_cast<std::size_t>(num_arcs), S(0)), Relation::Equal, S(1)};
    LpConstraint<S> in{std::vector<S>(static_cast<std::size_t>(num_arcs), S(0)), Relation::Equal, S(1)};
    for (int j = 1; j <= n; ++j) {
      if (i == j) continue;
      out.coeffs[static_cast<std::size_t>(arc_index(n, i, j))] = S(1);
      in.coeffs[static_cast<std::size_t>(arc_index(n, j, i))] = S(1);
    }
    m.constraints.push_back(std::move(out));
    m.constraints.push_back(std::move(in));
  }
  return m;
}

template <class S>
FractionalPoint<S> point_from_primal(int n, const std::vector<S>& primal) {
  FractionalPoint<S> p{n, make_square_matrix<S>(n)};
  for (int idx = 0; idx < n * (n - 1); ++idx) {
    auto [i, j] = arc_from_index(n, idx);
    S v = primal[static_cast<std::size_t>(idx)];
    if constexpr (!scalar_traits<S>::is_exact) {
      // Clamp float round-off so the point invariants hold.
      if (v < S(0)) v = S(0);
      if (v > S(1)) v = S(1);
    }
    p.x[i][j] = v;
  }
  return p;
}

}  // namespace detail

// DFJ LP bound by cutting planes: solve the degree relaxation, separate with
// the min-cut oracle, add the violated row, re-solve until none remains.
// Each added subset is new (the LP optimum satisfies all present rows), so
// the loop terminates.
template <class S>
DfjBound<S> dfj_lp_bound(const AtspInstance<S>& inst) {
  validate_instance(inst);
  const int n = inst.n;
  LpModel<S> model = detail::degree_lp(inst);
  DfjBound<S> out;
  for (;;) {
    LpSolution<S> sol = lp_solve(model);
    if (sol.status != LpStatus::Optimal)
      throw std::logic_error("degree relaxation must be feasible and bounded");
    out.point = detail::point_from_primal(n, sol.primal);
    out.value = sol.objective_value;
    out.value_history.push_back(sol.objective_value);
    auto cut = separation_mincut(out.point);
    if (!cut) return out;
    LpConstraint<S> row{std::vector<S>(static_cast<std::size_t>(model.num_vars), S(0)),
                        Relation::LessEq, S(static_cast<int>(cut->q.size()) - 1)};
    for (int i : cut->q)
      for (int j : cut->q)
        if (i != j) row.coeffs[static_cast<std::size_t>(arc_index(n, i, j))] = S(1);
    model = lp_add_constraint(std::move(model), std::move(row));
    out.cuts.push_back(std::move(*cut));
  }
}

template <class S = Rational>
struct BruteForceResult {
  S cost{};
  Tour tour;
};

// Exhaustive minimum over all (n-1)! tours; ties resolved by the first tour
// in lexicographic visit order.
template <class S>
BruteForceResult<S> brute_force_optimum(const AtspInstance<S>& inst) {
  validate_instance(inst);
  if (inst.n > 10) throw std::invalid_argument("brute_force_optimum limited to n <= 10");
  std::vector<int> rest;
  for (int v = 2; v <= inst.n; ++v) rest.push_back(v);
  std::optional<BruteForceResult<S>> best;
  do {
    S cost = inst.costs[rest.back()][1];
    int prev = 1;
    for (int v : rest) {
      cost += inst.costs[prev][v];
      prev = v;
    }
    if (!best || cost < best->cost) {
      Tour t;
      t.order.push_back(1);
      t.order.insert(t.order.end(), rest.begin(), rest.end());
      best = BruteForceResult<S>{std::move(cost), std::move(t)};
    }
  } while (std::next_permutation(rest.begin(), rest.end()));
  return *best;
}

}  // namespace atsp
