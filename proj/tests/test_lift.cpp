#include "doctest.h"

#include <algorithm>
#include <variant>

#include "atsp/lift.hpp"
#include "atsp/random.hpp"
#include "oracles.hpp"

using atsp::FractionalPoint;
using atsp::Rational;
using atsp::Tour;
using atsp::WeightedDigraph;

namespace {

FractionalPoint<Rational> two_cycle_point() {
  FractionalPoint<Rational> p{4, atsp::make_square_matrix<Rational>(4)};
  p.x[2][3] = p.x[3][2] = Rational(1);
  p.x[1][4] = p.x[4][1] = Rational(1);
  return p;
}

FractionalPoint<Rational> half_half_point() {
  auto a = atsp::point_from_tour<Rational>(Tour{{1, 2, 3, 4}});
  auto b = atsp::point_from_tour<Rational>(Tour{{1, 3, 2, 4}});
  Rational half = Rational(1) / Rational(2);
  return atsp::convex_combination<Rational>({a, b}, {half, half});
}

WeightedDigraph<Rational> random_graph(atsp::Rng& rng, int n, int lo, int hi, int arc_pct) {
  auto g = WeightedDigraph<Rational>::empty(n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      if (i == j) continue;
      if (rng.range(1, 100) <= arc_pct) g.add_arc(i, j, Rational(rng.range(lo, hi)));
    }
  return g;
}

}  // namespace

TEST_CASE("modified arc weights follow (n-1) - n*x") {
  FractionalPoint<Rational> p{4, atsp::make_square_matrix<Rational>(4)};
  p.x[1][2] = Rational(1);
  p.x[2][3] = Rational(1) / Rational(2);
  auto g = atsp::build_modified_graph(p);
  CHECK(*g.w[1][2] == Rational(-1));
  CHECK(*g.w[2][3] == Rational(1));
  CHECK(*g.w[3][4] == Rational(3));
  // No arcs into node 1, no self-loops.
  for (int i = 1; i <= 4; ++i) {
    CHECK_FALSE(g.w[i][1].has_value());
    CHECK_FALSE(g.w[i][i].has_value());
  }
}

TEST_CASE("shortest paths on the 3-node tour graph") {
  auto g = atsp::build_modified_graph(atsp::point_from_tour<Rational>(Tour{{1, 2, 3}}));
  auto result = atsp::bellman_ford(g, 1);
  auto* dist = std::get_if<atsp::DistanceVector<Rational>>(&result);
  REQUIRE(dist != nullptr);
  CHECK(*(*dist)[1] == Rational(0));
  CHECK(*(*dist)[2] == Rational(-1));
  CHECK(*(*dist)[3] == Rational(-2));
  auto fw = oracle::floyd_warshall(g);
  REQUIRE_FALSE(fw.has_negative_cycle);
  for (int j = 1; j <= 3; ++j) CHECK(*(*dist)[j] == *fw.dist[1][j]);
}

TEST_CASE("shortest paths on the half/half point") {
  auto g = atsp::build_modified_graph(half_half_point());
  auto result = atsp::bellman_ford(g, 1);
  auto* dist = std::get_if<atsp::DistanceVector<Rational>>(&result);
  REQUIRE(dist != nullptr);
  CHECK(*(*dist)[1] == Rational(0));
  CHECK(*(*dist)[2] == Rational(1));
  CHECK(*(*dist)[3] == Rational(1));
  CHECK(*(*dist)[4] == Rational(2));
  auto fw = oracle::floyd_warshall(g);
  for (int j = 1; j <= 4; ++j) CHECK(*(*dist)[j] == *fw.dist[1][j]);
}

TEST_CASE("the 2-cycle point yields the (2,3) negative cycle") {
  auto g = atsp::build_modified_graph(two_cycle_point());
  auto result = atsp::bellman_ford(g, 1);
  auto* cycle = std::get_if<atsp::NegativeCycle<Rational>>(&result);
  REQUIRE(cycle != nullptr);
  CHECK(cycle->nodes == std::vector<int>{2, 3});
  CHECK(cycle->weight == Rational(-2));
  // Exhaustive cycle enumeration confirms it is the unique negative cycle.
  int negative = 0;
  for (const auto& c : oracle::enumerate_simple_cycles(g))
    if (c.weight < Rational(0)) {
      ++negative;
      CHECK(c.nodes == std::vector<int>{2, 3});
    }
  CHECK(negative == 1);
}

TEST_CASE("bellman-ford agrees with floyd-warshall on random graphs") {
  atsp::Rng rng(101);
  int clean = 0, cyclic = 0;
  while (clean < 60 || cyclic < 20) {
    int n = rng.range(3, 9);
    auto g = random_graph(rng, n, -3, 12, 70);
    auto fw = oracle::floyd_warshall(g);
    auto result = atsp::bellman_ford(g, 1);
    if (auto* dist = std::get_if<atsp::DistanceVector<Rational>>(&result)) {
      // No negative cycle reachable from node 1. Floyd-Warshall may still
      // see one elsewhere; compare only when the whole graph is clean.
      if (fw.has_negative_cycle) continue;
      ++clean;
      for (int j = 1; j <= n; ++j) {
        REQUIRE((*dist)[j].has_value() == fw.dist[1][j].has_value());
        if ((*dist)[j]) CHECK(*(*dist)[j] == *fw.dist[1][j]);
      }
    } else {
      ++cyclic;
      const auto& cycle = std::get<atsp::NegativeCycle<Rational>>(result);
      CHECK(fw.has_negative_cycle);
      CHECK(cycle.weight < Rational(0));
      // Simple: no node repeats.
      auto sorted = cycle.nodes;
      std::sort(sorted.begin(), sorted.end());
      CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
      // Weight re-verifies against the arc weights.
      Rational w(0);
      for (std::size_t k = 0; k < cycle.nodes.size(); ++k) {
        auto arc = g.w[cycle.nodes[k]][cycle.nodes[(k + 1) % cycle.nodes.size()]];
        REQUIRE(arc.has_value());
        w += *arc;
      }
      CHECK(w == cycle.weight);
    }
  }
}

TEST_CASE("negative-cycle extraction stress: always simple, negative, in-graph") {
  // Aggressively negative dense graphs with many overlapping cycles; the
  // extracted cycle must re-verify every time.
  atsp::Rng rng(20250809);
  int cycles_seen = 0;
  for (int rep = 0; rep < 2000; ++rep) {
    int n = rng.range(2, 9);
    auto g = WeightedDigraph<Rational>::empty(n);
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j) {
        if (i == j) continue;
        if (rng.range(1, 100) <= 80)
          g.add_arc(i, j, Rational(rng.range(-6, 6)) / Rational(rng.range(1, 3)));
      }
    int source = rng.range(1, n);
    auto result = atsp::bellman_ford(g, source);
    if (auto* cycle = std::get_if<atsp::NegativeCycle<Rational>>(&result)) {
      ++cycles_seen;
      auto sorted = cycle->nodes;
      std::sort(sorted.begin(), sorted.end());
      REQUIRE(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
      Rational w(0);
      for (std::size_t k = 0; k < cycle->nodes.size(); ++k) {
        auto arc = g.w[cycle->nodes[k]][cycle->nodes[(k + 1) % cycle->nodes.size()]];
        REQUIRE(arc.has_value());
        w += *arc;
      }
      REQUIRE(w == cycle->weight);
      REQUIRE(w < Rational(0));
      REQUIRE(oracle::floyd_warshall(g).has_negative_cycle);
    } else {
      // No reachable negative cycle: distances must match the oracle.
      const auto& dist = std::get<atsp::DistanceVector<Rational>>(result);
      auto fw = oracle::floyd_warshall(g);
      for (int j = 1; j <= n; ++j) {
        REQUIRE(dist[j].has_value() == fw.dist[source][j].has_value());
        if (dist[j]) REQUIRE(*dist[j] == *fw.dist[source][j]);
      }
    }
  }
  CHECK(cycles_seen > 500);
}

TEST_CASE("unreachable nodes keep no distance") {
  auto g = WeightedDigraph<Rational>::empty(3);
  g.add_arc(1, 2, Rational(5));
  auto result = atsp::bellman_ford(g, 1);
  auto* dist = std::get_if<atsp::DistanceVector<Rational>>(&result);
  REQUIRE(dist != nullptr);
  CHECK(*(*dist)[2] == Rational(5));
  CHECK_FALSE((*dist)[3].has_value());
}

TEST_CASE("lifting tour and mixed points produces valid potentials") {
  auto p3 = atsp::point_from_tour<Rational>(Tour{{1, 2, 3}});
  auto lifted = atsp::lift_point(p3);
  REQUIRE(lifted.lifted());
  CHECK(lifted.potentials().u[1] == Rational(0));
  CHECK(lifted.potentials().u[2] == Rational(1));
  CHECK(lifted.potentials().u[3] == Rational(2));
  CHECK_FALSE(atsp::mtz_check(p3, lifted.potentials()).has_value());

  auto mixed = atsp::lift_point(half_half_point());
  REQUIRE(mixed.lifted());
  CHECK(mixed.potentials().u[1] == Rational(0));
  CHECK(mixed.potentials().u[2] == Rational(-1));
  CHECK(mixed.potentials().u[3] == Rational(-1));
  CHECK(mixed.potentials().u[4] == Rational(-2));
  CHECK_FALSE(atsp::mtz_check(half_half_point(), mixed.potentials()).has_value());
}

TEST_CASE("lifting the 2-cycle point fails with the blocking cycle") {
  auto lifted = atsp::lift_point(two_cycle_point());
  REQUIRE_FALSE(lifted.lifted());
  CHECK(lifted.cycle().nodes == std::vector<int>{2, 3});
  CHECK(lifted.cycle().weight == Rational(-2));
  auto cut = atsp::cycle_to_cut(two_cycle_point(), lifted.cycle().nodes);
  CHECK(cut.q == std::vector<int>{2, 3});
  CHECK(cut.lhs == Rational(2));
  CHECK(cut.violation == Rational(1));
}

TEST_CASE("cycle_to_cut on a value-1 3-cycle inside a 5-node point") {
  FractionalPoint<Rational> p{5, atsp::make_square_matrix<Rational>(5)};
  p.x[2][3] = p.x[3][4] = p.x[4][2] = Rational(1);
  p.x[1][5] = p.x[5][1] = Rational(1);
  // Modified weight of the 3-cycle: 3*4 - 5*3 = -3.
  Rational w(0);
  std::vector<int> cyc{2, 3, 4};
  for (std::size_t k = 0; k < cyc.size(); ++k)
    w += Rational(4) - Rational(5) * p.x[cyc[k]][cyc[(k + 1) % 3]];
  CHECK(w == Rational(-3));
  auto cut = atsp::cycle_to_cut(p, cyc);
  CHECK(cut.q == std::vector<int>{2, 3, 4});
  CHECK(cut.lhs == atsp::dfj_lhs(p, cut.q));
  CHECK(cut.violation == Rational(1));
}

TEST_CASE("cycle_to_cut rejects bad cycles") {
  auto p = two_cycle_point();
  CHECK_THROWS_AS(atsp::cycle_to_cut(p, {1, 4}), std::domain_error);
  CHECK_THROWS_AS(atsp::cycle_to_cut(p, {2, 3, 2}), std::domain_error);
  CHECK_THROWS_AS(atsp::cycle_to_cut(p, {2}), std::domain_error);
  // Nonnegative modified weight: arcs (2,4),(4,2) both have x=0.
  CHECK_THROWS_AS(atsp::cycle_to_cut(p, {2, 4}), std::domain_error);
}

TEST_CASE("containment property on random convex combinations") {
  atsp::Rng rng(424242);
  for (int rep = 0; rep < 200; ++rep) {
    int n = rng.range(3, 8);
    auto p = atsp::random_dfj_point<Rational>(n, rng.range(1, 5), rng.engine());
    REQUIRE(atsp::check_degrees(p));
    REQUIRE_FALSE(atsp::dfj_check_enumerate(p).has_value());
    auto lifted = atsp::lift_point(p);
    REQUIRE(lifted.lifted());
    CHECK(lifted.potentials().u[1] == Rational(0));
    CHECK_FALSE(atsp::mtz_check(p, lifted.potentials()).has_value());
    // Shortest-path optimality gives the one-arc bound d(j) <= w_1j, i.e.
    // -u_j <= (n-1) - n*x_1j.
    for (int j = 2; j <= n; ++j)
      CHECK(-lifted.potentials().u[j] <= Rational(n - 1) - Rational(n) * p.x[1][j]);
  }
}

TEST_CASE("lifting an integral tour recovers visit-order potentials") {
  // Over all 24 tours at n=5: tour arcs cost -1 in the reweighted graph and
  // everything else n-1, so the shortest path to the k-th visited node is
  // the tour prefix and u comes out as the visit order itself.
  std::vector<int> rest{2, 3, 4, 5};
  do {
    Tour t;
    t.order.push_back(1);
    t.order.insert(t.order.end(), rest.begin(), rest.end());
    auto lifted = atsp::lift_point(atsp::point_from_tour<Rational>(t));
    REQUIRE(lifted.lifted());
    CHECK(lifted.potentials() == atsp::visit_order_potentials<Rational>(t));
  } while (std::next_permutation(rest.begin(), rest.end()));
}

TEST_CASE("a subtour-violating point can still lift") {
  // x_23 = x_32 = 3/5 violates Q={2,3} (lhs 6/5 > 1) yet the reweighted
  // graph has no negative cycle, so the lift succeeds. Containment is
  // one-directional.
  FractionalPoint<Rational> p{4, atsp::make_square_matrix<Rational>(4)};
  p.x[2][3] = p.x[3][2] = Rational(3) / Rational(5);
  auto cert = atsp::dfj_check_enumerate(p);
  REQUIRE(cert.has_value());
  CHECK(cert->q == std::vector<int>{2, 3});
  auto lifted = atsp::lift_point(p);
  REQUIRE(lifted.lifted());
  CHECK_FALSE(atsp::mtz_check(p, lifted.potentials()).has_value());
}

TEST_CASE("exhaustive integral case analysis at n=4..6") {
  // Every derangement permutation matrix is a degree-feasible 0/1 point. It
  // lies in the subtour polytope iff the permutation is one n-cycle; the
  // lift must succeed exactly then, and otherwise hand back a cycle that
  // converts to a cut.
  for (int n = 4; n <= 6; ++n) {
    std::vector<int> perm;
    for (int v = 1; v <= n; ++v) perm.push_back(v);
    int checked = 0;
    do {
      bool derangement = true;
      for (int i = 1; i <= n; ++i)
        if (perm[i - 1] == i) derangement = false;
      if (!derangement) continue;
      ++checked;
      FractionalPoint<Rational> p{n, atsp::make_square_matrix<Rational>(n)};
      for (int i = 1; i <= n; ++i) p.x[i][perm[i - 1]] = Rational(1);
      // Count the permutation's cycles.
      std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
      int cycles = 0;
      for (int s = 1; s <= n; ++s) {
        if (seen[s]) continue;
        ++cycles;
        for (int v = s; !seen[v]; v = perm[v - 1]) seen[v] = true;
      }
      bool is_tour = cycles == 1;
      CHECK(atsp::check_degrees(p));
      CHECK(atsp::dfj_check_enumerate(p).has_value() == !is_tour);
      CHECK(atsp::separation_mincut(p).has_value() == !is_tour);
      auto lifted = atsp::lift_point(p);
      CHECK(lifted.lifted() == is_tour);
      if (lifted.lifted()) {
        CHECK_FALSE(atsp::mtz_check(p, lifted.potentials()).has_value());
      } else {
        auto cut = atsp::cycle_to_cut(p, lifted.cycle().nodes);
        CHECK(cut.violation >= Rational(1));
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    // Derangement counts: D(4)=9, D(5)=44, D(6)=265.
    CHECK(checked == (n == 4 ? 9 : n == 5 ? 44 : 265));
  }
}

TEST_CASE("every failed lift converts to a violated cut") {
  atsp::Rng rng(987);
  int failures = 0;
  for (int rep = 0; rep < 100; ++rep) {
    int n = rng.range(4, 8);
    // Force a 2- or 3-subtour at value 1, tour the rest through node 1.
    int sub = (n >= 5 && rng.range(0, 1) == 1) ? 3 : 2;
    FractionalPoint<Rational> p{n, atsp::make_square_matrix<Rational>(n)};
    std::vector<int> cyc;
    for (int v = 2; v < 2 + sub; ++v) cyc.push_back(v);
    for (std::size_t k = 0; k < cyc.size(); ++k)
      p.x[cyc[k]][cyc[(k + 1) % cyc.size()]] = Rational(1);
    std::vector<int> rest{1};
    for (int v = 2 + sub; v <= n; ++v) rest.push_back(v);
    for (std::size_t k = 0; k < rest.size(); ++k)
      p.x[rest[k]][rest[(k + 1) % rest.size()]] = Rational(1);
    auto lifted = atsp::lift_point(p);
    REQUIRE_FALSE(lifted.lifted());
    ++failures;
    const auto& cycle = lifted.cycle();
    CHECK(std::find(cycle.nodes.begin(), cycle.nodes.end(), 1) == cycle.nodes.end());
    auto cut = atsp::cycle_to_cut(p, cycle.nodes);
    CHECK(cut.violation >= Rational(1));
  }
  CHECK(failures == 100);
}
