// JSON interchange for points, potentials, certificates, and experiment
// reports. Rationals travel as canonical "p/q" strings so nothing is lost to
// floating point on the way through a file.
#pragma once

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

#include "atsp/dfj.hpp"
#include "atsp/instance.hpp"
#include "atsp/lift.hpp"
#include "atsp/mtz.hpp"

namespace atsp {

using Json = nlohmann::json;

inline Json rational_to_json(const Rational& v) { return Json(format_rational(v)); }

inline Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw std::invalid_argument("expected a rational as \"p/q\" string or integer");
}

// {"n": int, "x": [[...]]} with an n-by-n matrix (row k = node k+1).
inline Json point_to_json(const FractionalPoint<Rational>& p) {
  Json rows = Json::array();
  for (int i = 1; i <= p.n; ++i) {
    Json row = Json::array();
    for (int j = 1; j <= p.n; ++j) row.push_back(rational_to_json(p.x[i][j]));
    rows.push_back(std::move(row));
  }
  return Json{{"n", p.n}, {"x", std::move(rows)}};
}

inline FractionalPoint<Rational> point_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("x"))
    throw std::invalid_argument("point JSON needs fields \"n\" and \"x\"");
  int n = j.at("n").get<int>();
  const Json& rows = j.at("x");
  if (!rows.is_array() || static_cast<int>(rows.size()) != n)
    throw std::invalid_argument("point JSON: \"x\" must have n rows");
  FractionalPoint<Rational> p{n, make_square_matrix<Rational>(n)};
  for (int i = 1; i <= n; ++i) {
    const Json& row = rows.at(static_cast<std::size_t>(i - 1));
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      throw std::invalid_argument("point JSON: row " + std::to_string(i) + " must have n entries");
    for (int jcol = 1; jcol <= n; ++jcol)
      p.x[i][jcol] = rational_from_json(row.at(static_cast<std::size_t>(jcol - 1)));
  }
  validate_point(p);
  return p;
}

// {"u": ["p/q", ...]} with entry k = u_{k+1}.
inline Json potentials_to_json(const Potentials<Rational>& pot) {
  Json u = Json::array();
  for (int i = 1; i <= pot.n; ++i) u.push_back(rational_to_json(pot.u[i]));
  return Json{{"u", std::move(u)}};
}

inline Potentials<Rational> potentials_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("u") || !j.at("u").is_array())
    throw std::invalid_argument("potentials JSON needs an array field \"u\"");
  const Json& u = j.at("u");
  Potentials<Rational> pot{static_cast<int>(u.size()),
                           std::vector<Rational>(u.size() + 1, Rational(0))};
  for (std::size_t k = 0; k < u.size(); ++k) pot.u[k + 1] = rational_from_json(u.at(k));
  return pot;
}

inline Json cut_to_json(const CutCertificate<Rational>& cut) {
  return Json{{"q", cut.q},
              {"lhs", rational_to_json(cut.lhs)},
              {"violation", rational_to_json(cut.violation)}};
}

inline CutCertificate<Rational> cut_from_json(const Json& j) {
  CutCertificate<Rational> cut;
  cut.q = j.at("q").get<std::vector<int>>();
  cut.lhs = rational_from_json(j.at("lhs"));
  cut.violation = rational_from_json(j.at("violation"));
  return cut;
}

inline Json cycle_to_json(const NegativeCycle<Rational>& cycle) {
  return Json{{"nodes", cycle.nodes}, {"weight", rational_to_json(cycle.weight)}};
}

inline NegativeCycle<Rational> cycle_from_json(const Json& j) {
  return NegativeCycle<Rational>{j.at("nodes").get<std::vector<int>>(),
                                 rational_from_json(j.at("weight"))};
}

}  // namespace atsp
