// Deterministic random generation of tours, DFJ-feasible points, and
// random-cost instances. Draws go through our own bounded sampler so results
// are identical across platforms and standard library implementations.
#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "atsp/instance.hpp"

namespace atsp {

inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Combines a base seed with stream coordinates (e.g. n and trial index).
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
  return splitmix64(seed ^ splitmix64(a ^ splitmix64(b)));
}

struct Rng {
  std::mt19937_64 engine;

  explicit Rng(std::uint64_t seed) : engine(seed) {}

  // Uniform in [0, bound) by rejection; bound > 0.
  std::uint64_t below(std::uint64_t bound) {
    std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      std::uint64_t v = engine();
      if (v >= threshold) return v % bound;
    }
  }

  // Uniform in [lo, hi], inclusive.
  int range(int lo, int hi) {
    return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }
};

// Uniformly random tour: node 1 followed by a Fisher-Yates shuffle of 2..n.
inline Tour random_tour(int n, Rng& rng) {
  std::vector<int> rest;
  for (int v = 2; v <= n; ++v) rest.push_back(v);
  for (std::size_t i = rest.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(rng.below(i));
    std::swap(rest[i - 1], rest[j]);
  }
  Tour t;
  t.order.push_back(1);
  t.order.insert(t.order.end(), rest.begin(), rest.end());
  return t;
}

// Random point of the weight simplex with small integer numerators, keeping
// rational arithmetic cheap downstream.
template <class S = Rational>
std::vector<S> random_simplex_weights(int k, Rng& rng) {
  std::vector<int> raw(static_cast<std::size_t>(k));
  int total = 0;
  for (int& v : raw) {
    v = rng.range(1, 100);
    total += v;
  }
  std::vector<S> weights;
  weights.reserve(raw.size());
  for (int v : raw) weights.push_back(S(v) / S(total));
  return weights;
}

// Convex combination of k uniformly random tours. Lies in the DFJ polytope
// by convexity; reproducible for a fixed (n, k, seed).
template <class S = Rational>
FractionalPoint<S> random_dfj_point(int n, int k, std::uint64_t seed) {
  if (n < 3) throw std::invalid_argument("random_dfj_point needs n >= 3");
  if (k < 1) throw std::invalid_argument("random_dfj_point needs k >= 1");
  Rng rng(splitmix64(seed));
  std::vector<FractionalPoint<S>> points;
  points.reserve(static_cast<std::size_t>(k));
  for (int t = 0; t < k; ++t) points.push_back(point_from_tour<S>(random_tour(n, rng)));
  std::vector<S> weights = random_simplex_weights<S>(k, rng);
  return convex_combination(points, weights);
}

// Instance with integer costs uniform in [cost_lo, cost_hi].
template <class S = Rational>
AtspInstance<S> random_instance(int n, Rng& rng, int cost_lo = 1, int cost_hi = 100) {
  AtspInstance<S> inst{n, make_square_matrix<S>(n)};
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      if (i != j) inst.costs[i][j] = S(rng.range(cost_lo, cost_hi));
  return inst;
}

}  // namespace atsp
