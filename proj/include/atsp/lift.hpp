// The lift construction: reweight arcs to (n-1) - n*x_ij, take shortest-path
// distances from node 1, and read potentials off them as u_j = -d(j). When a
// negative cycle blocks the distances, the cycle's node set is a violated
// subtour-elimination cut.
//
// Arcs into node 1 are absent from the reweighted graph, mirroring the
// constraint family in mtz.hpp: with them present even a tour point would
// put a cycle of weight -n through node 1 and no distances would exist.
#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

#include "atsp/dfj.hpp"
#include "atsp/instance.hpp"
#include "atsp/mtz.hpp"

namespace atsp {

// Dense digraph with optional per-arc weights; absent arcs are nullopt.
template <class S = Rational>
struct WeightedDigraph {
  int n = 0;
  std::vector<std::vector<std::optional<S>>> w;

  static WeightedDigraph empty(int n) {
    return WeightedDigraph{
        n, std::vector<std::vector<std::optional<S>>>(
               static_cast<std::size_t>(n) + 1,
               std::vector<std::optional<S>>(static_cast<std::size_t>(n) + 1, std::nullopt))};
  }

  void add_arc(int i, int j, S weight) { w[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = std::move(weight); }
};

// Arc weights (n-1) - n*x_ij for every i != j with j != 1.
template <class S>
WeightedDigraph<S> build_modified_graph(const FractionalPoint<S>& p) {
  auto g = WeightedDigraph<S>::empty(p.n);
  for (int i = 1; i <= p.n; ++i)
    for (int j = 2; j <= p.n; ++j) {
      if (i == j) continue;
      g.add_arc(i, j, S(p.n - 1) - S(p.n) * p.x[i][j]);
    }
  return g;
}

template <class S = Rational>
struct NegativeCycle {
  std::vector<int> nodes;  // distinct; arcs follow the sequence and wrap
  S weight{};
};

// Shortest-path distances indexed by node label; nullopt = unreachable.
template <class S = Rational>
using DistanceVector = std::vector<std::optional<S>>;

template <class S = Rational>
using BellmanFordResult = std::variant<DistanceVector<S>, NegativeCycle<S>>;

namespace detail {

template <class S>
S cycle_weight(const WeightedDigraph<S>& g, const std::vector<int>& nodes) {
  S total(0);
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    int a = nodes[k];
    int b = nodes[(k + 1) % nodes.size()];
    const auto& arc = g.w[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
    if (!arc) throw std::logic_error("cycle uses an absent arc");
    total += *arc;
  }
  return total;
}

// Rotate so the smallest label comes first; purely cosmetic canonical form.
inline void canonicalize_cycle(std::vector<int>& nodes) {
  auto it = std::min_element(nodes.begin(), nodes.end());
  std::rotate(nodes.begin(), it, nodes.end());
}

}  // namespace detail

// Bellman-Ford with arcs relaxed in fixed lexicographic order. Runs n rounds:
// rounds 1..n-1 settle distances, and any relaxation in round n proves a
// reachable negative cycle, which is recovered from the predecessor links by
// walking back n steps and then collecting the loop. Stops early when a full
// round changes nothing.
template <class S>
BellmanFordResult<S> bellman_ford(const WeightedDigraph<S>& g, int source) {
  const int n = g.n;
  if (source < 1 || source > n) throw std::invalid_argument("source out of range");
  DistanceVector<S> dist(static_cast<std::size_t>(n) + 1, std::nullopt);
  std::vector<int> pred(static_cast<std::size_t>(n) + 1, 0);
  dist[static_cast<std::size_t>(source)] = S(0);

  int cycle_head = 0;
  for (int round = 1; round <= n && cycle_head == 0; ++round) {
    bool changed = false;
    for (int i = 1; i <= n && cycle_head == 0; ++i) {
      if (!dist[static_cast<std::size_t>(i)]) continue;
      for (int j = 1; j <= n; ++j) {
        const auto& arc = g.w[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        if (!arc) continue;
        S cand = *dist[static_cast<std::size_t>(i)] + *arc;
        auto& dj = dist[static_cast<std::size_t>(j)];
        if (!dj || cand < *dj) {
          dj = std::move(cand);
          pred[static_cast<std::size_t>(j)] = i;
          changed = true;
          if (round == n) {
            cycle_head = j;  // round n should be stable; a cycle pumps it
            break;
          }
        }
      }
    }
    if (!changed) break;
  }
  if (cycle_head == 0) return dist;

  // Walk back n steps to land inside the loop of the predecessor graph, then
  // collect until the first repeat. Every predecessor on the walk is set:
  // freshness of updates decreases by at most one per step, so the chain
  // cannot run off the tree root within n steps.
  int v = cycle_head;
  for (int step = 0; step < n; ++step) {
    v = pred[static_cast<std::size_t>(v)];
    if (v == 0) throw std::logic_error("predecessor walk left the graph");
  }
  std::vector<int> rev;
  std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
  int u = v;
  while (!seen[static_cast<std::size_t>(u)]) {
    seen[static_cast<std::size_t>(u)] = true;
    rev.push_back(u);
    u = pred[static_cast<std::size_t>(u)];
    if (u == 0) throw std::logic_error("predecessor walk left the graph");
  }
  // Trim the tail leading into the loop, then flip to forward arc order.
  std::vector<int> nodes(std::find(rev.begin(), rev.end(), u), rev.end());
  std::reverse(nodes.begin(), nodes.end());
  detail::canonicalize_cycle(nodes);
  NegativeCycle<S> cycle{nodes, detail::cycle_weight(g, nodes)};
  if (!(cycle.weight < S(0))) throw std::logic_error("extracted cycle is not negative");
  return cycle;
}

// Outcome of lifting a point: either potentials certifying feasibility for
// the u-constraint family, or the blocking negative cycle.
template <class S = Rational>
struct LiftResult {
  std::variant<Potentials<S>, NegativeCycle<S>> outcome;

  bool lifted() const { return std::holds_alternative<Potentials<S>>(outcome); }
  const Potentials<S>& potentials() const { return std::get<Potentials<S>>(outcome); }
  const NegativeCycle<S>& cycle() const { return std::get<NegativeCycle<S>>(outcome); }
};

// Lift x to (x,u) with u_j = -d(j), d = shortest paths from node 1 in the
// reweighted graph. Total: inputs outside the DFJ polytope yield either a
// valid lift anyway or a negative cycle; inputs inside it always lift.
template <class S>
LiftResult<S> lift_point(const FractionalPoint<S>& p) {
  validate_point(p);
  auto g = build_modified_graph(p);
  auto result = bellman_ford(g, 1);
  if (auto* cycle = std::get_if<NegativeCycle<S>>(&result)) return LiftResult<S>{std::move(*cycle)};
  const auto& dist = std::get<DistanceVector<S>>(result);
  Potentials<S> pot{p.n, std::vector<S>(static_cast<std::size_t>(p.n) + 1, S(0))};
  for (int j = 1; j <= p.n; ++j) {
    if (!dist[static_cast<std::size_t>(j)]) throw std::logic_error("node unreachable from node 1");
    pot.u[j] = S(-*dist[static_cast<std::size_t>(j)]);
  }
  return LiftResult<S>{std::move(pot)};
}

// Contrapositive: a simple negative cycle avoiding node 1 certifies that its
// node set Q violates the subtour inequality. With w(C) < 0 and |Q| <= n,
//   |Q|(n-1)/n < sum_C x_ij <= sum_{Q x Q} x_ij  and  |Q|(n-1)/n >= |Q|-1.
template <class S>
CutCertificate<S> cycle_to_cut(const FractionalPoint<S>& p, const std::vector<int>& cycle_nodes) {
  if (cycle_nodes.size() < 2) throw std::domain_error("cycle needs at least 2 nodes");
  std::vector<bool> seen(static_cast<std::size_t>(p.n) + 1, false);
  for (int v : cycle_nodes) {
    if (v == 1) throw std::domain_error("cycle must not contain node 1");
    if (v < 2 || v > p.n) throw std::domain_error("cycle node out of range");
    if (seen[static_cast<std::size_t>(v)]) throw std::domain_error("cycle is not simple");
    seen[static_cast<std::size_t>(v)] = true;
  }
  S weight(0);
  for (std::size_t k = 0; k < cycle_nodes.size(); ++k) {
    int a = cycle_nodes[k];
    int b = cycle_nodes[(k + 1) % cycle_nodes.size()];
    weight += S(p.n - 1) - S(p.n) * p.x[a][b];
  }
  if (!(weight < S(0))) throw std::domain_error("cycle has nonnegative modified weight");
  std::vector<int> q(cycle_nodes);
  std::sort(q.begin(), q.end());
  S lhs = dfj_lhs(p, q);
  S violation = lhs - S(static_cast<int>(q.size()) - 1);
  if (!(violation > S(0))) throw std::domain_error("cycle does not certify a violated cut");
  return CutCertificate<S>{std::move(q), std::move(lhs), std::move(violation)};
}

}  // namespace atsp
