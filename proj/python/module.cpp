// Python bindings for the rational-mode operations. Exact rationals cross
// the boundary as fractions.Fraction in both directions; nothing is ever
// rounded through a double.
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "atsp/dfj.hpp"
#include "atsp/experiments.hpp"
#include "atsp/instance.hpp"
#include "atsp/json_io.hpp"
#include "atsp/lift.hpp"
#include "atsp/mtz.hpp"
#include "atsp/random.hpp"

namespace py = pybind11;

using atsp::Rational;

namespace pybind11::detail {

// Rational <-> fractions.Fraction. Loading also accepts int and "p/q" str.
template <>
struct type_caster<Rational> {
  PYBIND11_TYPE_CASTER(Rational, const_name("Fraction"));

  bool load(handle src, bool) {
    if (src.is_none()) return false;
    try {
      if (py::isinstance<py::float_>(src)) return false;  // refuse silent rounding
      std::string text = py::str(src);
      value = atsp::parse_rational(text);
      return true;
    } catch (const std::exception&) {
      return false;
    }
  }

  static handle cast(const Rational& v, return_value_policy, handle) {
    py::object fraction = py::module_::import("fractions").attr("Fraction");
    return fraction(atsp::format_rational(v)).release();
  }
};

}  // namespace pybind11::detail

namespace {

using Instance = atsp::AtspInstance<Rational>;
using Point = atsp::FractionalPoint<Rational>;
using Pot = atsp::Potentials<Rational>;

using Matrix = std::vector<std::vector<Rational>>;

// External matrices are n x n with row k describing node k+1; internally we
// pad row/column 0.
Matrix to_external(int n, const std::vector<std::vector<Rational>>& m) {
  Matrix out(static_cast<std::size_t>(n), std::vector<Rational>(static_cast<std::size_t>(n)));
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) out[i - 1][j - 1] = m[i][j];
  return out;
}

std::vector<std::vector<Rational>> to_internal(int n, const Matrix& m) {
  if (static_cast<int>(m.size()) != n) throw std::invalid_argument("matrix must have n rows");
  auto out = atsp::make_square_matrix<Rational>(n);
  for (int i = 1; i <= n; ++i) {
    if (static_cast<int>(m[i - 1].size()) != n)
      throw std::invalid_argument("matrix row " + std::to_string(i) + " must have n entries");
    for (int j = 1; j <= n; ++j) out[i][j] = m[i - 1][j - 1];
  }
  return out;
}

Instance make_instance(int n, const Matrix& costs) {
  Instance inst{n, to_internal(n, costs)};
  atsp::validate_instance(inst);
  return inst;
}

Point make_point(int n, const Matrix& x) {
  Point p{n, to_internal(n, x)};
  atsp::validate_point(p);
  return p;
}

Pot make_potentials(const std::vector<Rational>& u) {
  Pot pot{static_cast<int>(u.size()), std::vector<Rational>(u.size() + 1, Rational(0))};
  for (std::size_t k = 0; k < u.size(); ++k) pot.u[k + 1] = u[k];
  return pot;
}

std::vector<Rational> potentials_list(const Pot& pot) {
  return {pot.u.begin() + 1, pot.u.end()};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Subtour (DFJ) and order-variable (MTZ) relaxations of the asymmetric TSP: "
            "exact LP bounds, separation oracles, and shortest-path lifts between them.";
  m.attr("__version__") = "0.1.0";

  py::class_<Instance>(m, "AtspInstance")
      .def(py::init(&make_instance), py::arg("n"), py::arg("costs"))
      .def_readonly("n", &Instance::n)
      .def_property_readonly("costs", [](const Instance& s) { return to_external(s.n, s.costs); })
      .def("cost", &Instance::cost, py::arg("i"), py::arg("j"), "Arc cost, 1-indexed nodes")
      .def(py::self == py::self)
      .def("__repr__", [](const Instance& s) {
        return "AtspInstance(n=" + std::to_string(s.n) + ")";
      });

  py::class_<atsp::Tour>(m, "Tour")
      .def(py::init([](std::vector<int> order) {
             atsp::Tour t{std::move(order)};
             atsp::validate_tour(t, t.n());
             return t;
           }),
           py::arg("order"))
      .def_readonly("order", &atsp::Tour::order)
      .def(py::self == py::self)
      .def("__repr__", [](const atsp::Tour& t) {
        std::string s = "Tour([";
        for (std::size_t k = 0; k < t.order.size(); ++k)
          s += (k ? "," : "") + std::to_string(t.order[k]);
        return s + "])";
      });

  py::class_<Point>(m, "FractionalPoint")
      .def(py::init(&make_point), py::arg("n"), py::arg("x"))
      .def_readonly("n", &Point::n)
      .def_property_readonly("x", [](const Point& p) { return to_external(p.n, p.x); })
      .def("value", &Point::value, py::arg("i"), py::arg("j"), "Arc value, 1-indexed nodes")
      .def("to_json", [](const Point& p) { return atsp::point_to_json(p).dump(); })
      .def_static("from_json",
                  [](const std::string& text) { return atsp::point_from_json(atsp::Json::parse(text)); },
                  py::arg("text"))
      .def(py::self == py::self)
      .def("__repr__", [](const Point& p) {
        return "FractionalPoint(n=" + std::to_string(p.n) + ")";
      });

  py::class_<Pot>(m, "Potentials")
      .def(py::init(&make_potentials), py::arg("u"))
      .def_readonly("n", &Pot::n)
      .def_property_readonly("u", &potentials_list)
      .def("to_json", [](const Pot& pot) { return atsp::potentials_to_json(pot).dump(); })
      .def_static("from_json",
                  [](const std::string& text) {
                    return atsp::potentials_from_json(atsp::Json::parse(text));
                  },
                  py::arg("text"))
      .def(py::self == py::self)
      .def("__repr__", [](const Pot& pot) { return "Potentials(n=" + std::to_string(pot.n) + ")"; });

  py::class_<atsp::CutCertificate<Rational>>(m, "CutCertificate")
      .def_readonly("q", &atsp::CutCertificate<Rational>::q)
      .def_readonly("lhs", &atsp::CutCertificate<Rational>::lhs)
      .def_readonly("violation", &atsp::CutCertificate<Rational>::violation)
      .def("__repr__", [](const atsp::CutCertificate<Rational>& c) {
        std::string s = "CutCertificate(q=[";
        for (std::size_t k = 0; k < c.q.size(); ++k) s += (k ? "," : "") + std::to_string(c.q[k]);
        return s + "], violation=" + atsp::format_rational(c.violation) + ")";
      });

  py::class_<atsp::NegativeCycle<Rational>>(m, "NegativeCycle")
      .def_readonly("nodes", &atsp::NegativeCycle<Rational>::nodes)
      .def_readonly("weight", &atsp::NegativeCycle<Rational>::weight);

  py::class_<atsp::MtzViolation<Rational>>(m, "MtzViolation")
      .def_readonly("i", &atsp::MtzViolation<Rational>::i)
      .def_readonly("j", &atsp::MtzViolation<Rational>::j)
      .def_readonly("slack", &atsp::MtzViolation<Rational>::slack);

  py::class_<atsp::LiftResult<Rational>>(m, "LiftResult")
      .def_property_readonly("lifted", &atsp::LiftResult<Rational>::lifted)
      .def_property_readonly("potentials",
                             [](const atsp::LiftResult<Rational>& r) -> py::object {
                               if (!r.lifted()) return py::none();
                               return py::cast(r.potentials());
                             })
      .def_property_readonly("cycle", [](const atsp::LiftResult<Rational>& r) -> py::object {
        if (r.lifted()) return py::none();
        return py::cast(r.cycle());
      });

  py::class_<atsp::DfjBound<Rational>>(m, "DfjBound")
      .def_readonly("value", &atsp::DfjBound<Rational>::value)
      .def_readonly("point", &atsp::DfjBound<Rational>::point)
      .def_readonly("cuts", &atsp::DfjBound<Rational>::cuts);

  py::class_<atsp::MtzBound<Rational>>(m, "MtzBound")
      .def_readonly("value", &atsp::MtzBound<Rational>::value)
      .def_readonly("point", &atsp::MtzBound<Rational>::point)
      .def_readonly("potentials", &atsp::MtzBound<Rational>::potentials);

  py::class_<atsp::BruteForceResult<Rational>>(m, "BruteForceResult")
      .def_readonly("cost", &atsp::BruteForceResult<Rational>::cost)
      .def_readonly("tour", &atsp::BruteForceResult<Rational>::tour);

  m.def("parse_tsplib",
        [](const std::string& text) { return atsp::parse_tsplib<Rational>(text); },
        py::arg("text"), "Parse an explicit full-matrix ATSP instance");
  m.def("serialize_tsplib", &atsp::serialize_tsplib<Rational>, py::arg("instance"),
        py::arg("name") = "instance");
  m.def("point_from_tour", &atsp::point_from_tour<Rational>, py::arg("tour"),
        "Incidence point of a tour");
  m.def("convex_combination", &atsp::convex_combination<Rational>, py::arg("points"),
        py::arg("weights"));
  m.def("check_degrees", &atsp::check_degrees<Rational>, py::arg("point"));
  m.def("random_dfj_point", &atsp::random_dfj_point<Rational>, py::arg("n"), py::arg("tours"),
        py::arg("seed"), "Random convex combination of tours; reproducible per seed");
  m.def("dfj_lhs", &atsp::dfj_lhs<Rational>, py::arg("point"), py::arg("q"));
  m.def("dfj_check_enumerate", &atsp::dfj_check_enumerate<Rational>, py::arg("point"));
  m.def("separation_mincut", &atsp::separation_mincut<Rational>, py::arg("point"));
  m.def("dfj_lp_bound", &atsp::dfj_lp_bound<Rational>, py::arg("instance"),
        "Subtour-relaxation LP value and optimizer via cutting planes");
  m.def("brute_force_optimum", &atsp::brute_force_optimum<Rational>, py::arg("instance"));
  m.def("mtz_slack", &atsp::mtz_slack<Rational>, py::arg("point"), py::arg("potentials"),
        py::arg("i"), py::arg("j"));
  m.def("mtz_check", &atsp::mtz_check<Rational>, py::arg("point"), py::arg("potentials"));
  m.def("mtz_lp_bound", &atsp::mtz_lp_bound<Rational>, py::arg("instance"));
  m.def("visit_order_potentials", &atsp::visit_order_potentials<Rational>, py::arg("tour"));
  m.def("lift_point", &atsp::lift_point<Rational>, py::arg("point"),
        "Potentials from shortest paths in the reweighted graph, or the blocking negative cycle");
  m.def("cycle_to_cut", &atsp::cycle_to_cut<Rational>, py::arg("point"), py::arg("cycle_nodes"));
}
