// ATSP instances, fractional points of the relaxations, tours, and the
// TSPLIB (EXPLICIT / FULL_MATRIX) subset used for instance files.
//
// Nodes are labeled 1..n throughout. Matrices are stored (n+1)x(n+1) with
// row/column 0 unused so code indexes by node label directly.
#pragma once

#include <algorithm>
#include <istream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "atsp/rational.hpp"

namespace atsp {

template <class S>
std::vector<std::vector<S>> make_square_matrix(int n) {
  return std::vector<std::vector<S>>(static_cast<std::size_t>(n) + 1,
                                     std::vector<S>(static_cast<std::size_t>(n) + 1, S(0)));
}

template <class S = Rational>
struct AtspInstance {
  int n = 0;
  // Arc costs c_ij. The diagonal is carried verbatim for round-tripping
  // instance files but never read by any algorithm.
  std::vector<std::vector<S>> costs;

  const S& cost(int i, int j) const { return costs[i][j]; }

  friend bool operator==(const AtspInstance&, const AtspInstance&) = default;
};

template <class S = Rational>
struct FractionalPoint {
  int n = 0;
  std::vector<std::vector<S>> x;  // x_ij, diagonal fixed to 0

  const S& value(int i, int j) const { return x[i][j]; }

  friend bool operator==(const FractionalPoint&, const FractionalPoint&) = default;
};

// A tour is a permutation of 1..n starting at node 1.
struct Tour {
  std::vector<int> order;

  int n() const { return static_cast<int>(order.size()); }

  friend bool operator==(const Tour&, const Tour&) = default;
};

template <class S>
void validate_instance(const AtspInstance<S>& inst) {
  if (inst.n < 3) throw std::invalid_argument("instance needs n >= 3");
  if (inst.costs.size() != static_cast<std::size_t>(inst.n) + 1)
    throw std::invalid_argument("cost matrix has wrong number of rows");
  for (const auto& row : inst.costs)
    if (row.size() != static_cast<std::size_t>(inst.n) + 1)
      throw std::invalid_argument("cost matrix has wrong number of columns");
}

inline void validate_tour(const Tour& t, int n) {
  if (t.n() != n) throw std::invalid_argument("tour length does not match n");
  if (n < 3) throw std::invalid_argument("tour needs n >= 3");
  if (t.order.front() != 1) throw std::invalid_argument("tour must start at node 1");
  std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
  for (int v : t.order) {
    if (v < 1 || v > n || seen[static_cast<std::size_t>(v)])
      throw std::invalid_argument("tour is not a permutation of 1..n");
    seen[static_cast<std::size_t>(v)] = true;
  }
}

template <class S>
void validate_point(const FractionalPoint<S>& p) {
  if (p.n < 3) throw std::invalid_argument("point needs n >= 3");
  if (p.x.size() != static_cast<std::size_t>(p.n) + 1)
    throw std::invalid_argument("point matrix has wrong number of rows");
  for (const auto& row : p.x)
    if (row.size() != static_cast<std::size_t>(p.n) + 1)
      throw std::invalid_argument("point matrix has wrong number of columns");
  for (int i = 1; i <= p.n; ++i) {
    if (p.x[i][i] != S(0)) throw std::invalid_argument("diagonal entries must be 0");
    for (int j = 1; j <= p.n; ++j) {
      if (i == j) continue;
      if (p.x[i][j] < S(0) || p.x[i][j] > S(1))
        throw std::invalid_argument("arc values must lie in [0, 1]");
    }
  }
}

// Incidence point of a tour: x_ij = 1 exactly on consecutive arcs, wrapping
// back to node 1.
template <class S = Rational>
FractionalPoint<S> point_from_tour(const Tour& t) {
  int n = t.n();
  validate_tour(t, n);
  FractionalPoint<S> p{n, make_square_matrix<S>(n)};
  for (int k = 0; k < n; ++k) {
    int from = t.order[static_cast<std::size_t>(k)];
    int to = t.order[static_cast<std::size_t>((k + 1) % n)];
    p.x[from][to] = S(1);
  }
  return p;
}

// Entrywise weighted sum. Weights must be nonnegative and sum to 1 (exactly
// in rational mode, within tolerance in float mode).
template <class S>
FractionalPoint<S> convex_combination(const std::vector<FractionalPoint<S>>& points,
                                      const std::vector<S>& weights) {
  if (points.empty()) throw std::invalid_argument("convex combination of no points");
  if (points.size() != weights.size())
    throw std::invalid_argument("points and weights differ in length");
  int n = points.front().n;
  S total(0);
  for (const S& w : weights) {
    if (w < S(0)) throw std::invalid_argument("negative weight in convex combination");
    total += w;
  }
  if (abs_value(S(total - S(1))) > scalar_traits<S>::feasibility_tolerance())
    throw std::invalid_argument("weights must sum to 1");
  FractionalPoint<S> out{n, make_square_matrix<S>(n)};
  for (std::size_t k = 0; k < points.size(); ++k) {
    if (points[k].n != n) throw std::invalid_argument("points disagree on n");
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j) out.x[i][j] += weights[k] * points[k].x[i][j];
  }
  return out;
}

// True iff every row sum and column sum of x equals 1.
template <class S>
bool check_degrees(const FractionalPoint<S>& p) {
  const S tol = scalar_traits<S>::feasibility_tolerance();
  for (int i = 1; i <= p.n; ++i) {
    S row(0), col(0);
    for (int j = 1; j <= p.n; ++j) {
      row += p.x[i][j];
      col += p.x[j][i];
    }
    if (abs_value(S(row - S(1))) > tol || abs_value(S(col - S(1))) > tol) return false;
  }
  return true;
}

// Lexicographic index of arc (i,j), i != j, in the n*(n-1)-dimensional
// variable space used by the LP formulations.
inline int arc_index(int n, int i, int j) {
  return (i - 1) * (n - 1) + (j - 1) - (j > i ? 1 : 0);
}

inline std::pair<int, int> arc_from_index(int n, int idx) {
  int i = idx / (n - 1) + 1;
  int r = idx % (n - 1);
  int j = r + 1 + (r + 1 >= i ? 1 : 0);
  return {i, j};
}

// TSPLIB parsing below. Only the subset needed for explicit ATSP matrices is
// accepted; anything else is a ParseError naming the offending line.
struct ParseError : std::runtime_error {
  int line;
  ParseError(int line_, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

namespace detail {

inline std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace detail

template <class S = Rational>
AtspInstance<S> parse_tsplib(std::istream& in) {
  std::string line;
  int lineno = 0;
  std::optional<int> dimension;
  bool type_ok = false, ewt_ok = false, ewf_ok = false;
  bool in_matrix = false, done = false;
  std::vector<S> weights;

  auto header_value = [](const std::string& s) {
    auto colon = s.find(':');
    return colon == std::string::npos ? std::string() : detail::trim(s.substr(colon + 1));
  };

  while (std::getline(in, line)) {
    ++lineno;
    std::string t = detail::trim(line);
    if (t.empty()) continue;
    if (done) throw ParseError(lineno, "content after EOF");
    if (t == "EOF") {
      done = true;
      continue;
    }
    if (in_matrix) {
      std::istringstream toks(t);
      std::string tok;
      while (toks >> tok) {
        if (weights.size() >= static_cast<std::size_t>(*dimension) * static_cast<std::size_t>(*dimension))
          throw ParseError(lineno, "more weights than DIMENSION^2");
        try {
          weights.push_back(parse_scalar<S>(tok));
        } catch (const std::invalid_argument&) {
          throw ParseError(lineno, "non-numeric weight '" + tok + "'");
        }
      }
      continue;
    }
    std::string key = t.substr(0, t.find_first_of(" \t:"));
    if (key == "NAME" || key == "COMMENT") {
      continue;
    } else if (key == "TYPE") {
      if (header_value(t) != "ATSP") throw ParseError(lineno, "TYPE must be ATSP");
      type_ok = true;
    } else if (key == "DIMENSION") {
      try {
        dimension = std::stoi(header_value(t));
      } catch (const std::exception&) {
        throw ParseError(lineno, "DIMENSION is not an integer");
      }
      if (*dimension < 3) throw ParseError(lineno, "DIMENSION must be at least 3");
    } else if (key == "EDGE_WEIGHT_TYPE") {
      if (header_value(t) != "EXPLICIT")
        throw ParseError(lineno, "EDGE_WEIGHT_TYPE must be EXPLICIT");
      ewt_ok = true;
    } else if (key == "EDGE_WEIGHT_FORMAT") {
      if (header_value(t) != "FULL_MATRIX")
        throw ParseError(lineno, "EDGE_WEIGHT_FORMAT must be FULL_MATRIX");
      ewf_ok = true;
    } else if (key == "EDGE_WEIGHT_SECTION") {
      if (!dimension) throw ParseError(lineno, "EDGE_WEIGHT_SECTION before DIMENSION");
      if (!type_ok) throw ParseError(lineno, "missing TYPE: ATSP");
      if (!ewt_ok) throw ParseError(lineno, "missing EDGE_WEIGHT_TYPE: EXPLICIT");
      if (!ewf_ok) throw ParseError(lineno, "missing EDGE_WEIGHT_FORMAT: FULL_MATRIX");
      in_matrix = true;
    } else {
      throw ParseError(lineno, "unknown keyword '" + key + "'");
    }
  }
  if (!in_matrix) throw ParseError(lineno, "missing EDGE_WEIGHT_SECTION");
  std::size_t want = static_cast<std::size_t>(*dimension) * static_cast<std::size_t>(*dimension);
  if (weights.size() != want)
    throw ParseError(lineno, "EDGE_WEIGHT_SECTION has " + std::to_string(weights.size()) +
                                 " entries, expected " + std::to_string(want));

  AtspInstance<S> inst{*dimension, make_square_matrix<S>(*dimension)};
  std::size_t k = 0;
  for (int i = 1; i <= inst.n; ++i)
    for (int j = 1; j <= inst.n; ++j) inst.costs[i][j] = weights[k++];
  return inst;
}

template <class S = Rational>
AtspInstance<S> parse_tsplib(const std::string& text) {
  std::istringstream in(text);
  return parse_tsplib<S>(in);
}

template <class S>
std::string serialize_tsplib(const AtspInstance<S>& inst, const std::string& name = "instance") {
  validate_instance(inst);
  std::ostringstream os;
  os << "NAME: " << name << "\n";
  os << "TYPE: ATSP\n";
  os << "DIMENSION: " << inst.n << "\n";
  os << "EDGE_WEIGHT_TYPE: EXPLICIT\n";
  os << "EDGE_WEIGHT_FORMAT: FULL_MATRIX\n";
  os << "EDGE_WEIGHT_SECTION\n";
  for (int i = 1; i <= inst.n; ++i) {
    for (int j = 1; j <= inst.n; ++j) os << (j > 1 ? " " : "") << format_scalar<S>(inst.costs[i][j]);
    os << "\n";
  }
  os << "EOF\n";
  return os.str();
}

}  // namespace atsp
