// atsplift: command-line front end. Subcommands mirror the library: lift a
// point, check a formulation, compute relaxation bounds, compare them, run
// batch suites, and generate random points of the subtour polytope.
//
// Exit codes: 0 success/feasible, 2 violated or negative cycle, 1 file or
// input errors, 64 usage errors.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "atsp/experiments.hpp"
#include "atsp/json_io.hpp"

namespace {

using atsp::Json;
using atsp::Rational;

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

atsp::FractionalPoint<Rational> load_point(const std::string& path) {
  return atsp::point_from_json(Json::parse(read_text(path)));
}

atsp::AtspInstance<Rational> load_instance(const std::string& path) {
  return atsp::parse_tsplib<Rational>(read_text(path));
}

std::string fmt(const Rational& v) { return atsp::format_rational(v); }

void print_cut(const atsp::CutCertificate<Rational>& cut) {
  std::cout << "violated cut: Q={";
  for (std::size_t k = 0; k < cut.q.size(); ++k) std::cout << (k ? "," : "") << cut.q[k];
  std::cout << "} lhs=" << fmt(cut.lhs) << " violation=" << fmt(cut.violation) << "\n";
}

int cmd_lift(const std::string& point_file, bool as_json) {
  auto p = load_point(point_file);
  auto result = atsp::lift_point(p);
  if (result.lifted()) {
    const auto& u = result.potentials();
    if (as_json) {
      std::cout << atsp::potentials_to_json(u).dump(2) << "\n";
    } else {
      std::cout << "u = [";
      for (int i = 1; i <= u.n; ++i) std::cout << (i > 1 ? ", " : "") << fmt(u.u[i]);
      std::cout << "]\n";
    }
    return 0;
  }
  const auto& cycle = result.cycle();
  auto cut = atsp::cycle_to_cut(p, cycle.nodes);
  if (as_json) {
    Json j{{"cycle", atsp::cycle_to_json(cycle)}, {"cut", atsp::cut_to_json(cut)}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "negative cycle:";
    for (int v : cycle.nodes) std::cout << " " << v << " ->";
    std::cout << " " << cycle.nodes.front() << " (weight " << fmt(cycle.weight) << ")\n";
    print_cut(cut);
  }
  return 2;
}

int cmd_check(const std::string& point_file, const std::string& formulation,
              const std::string& u_file) {
  auto p = load_point(point_file);
  if (formulation == "dfj") {
    std::optional<atsp::CutCertificate<Rational>> cert;
    if (p.n <= 20)
      cert = atsp::dfj_check_enumerate(p);
    else
      cert = atsp::separation_mincut(p);
    if (!cert) {
      std::cout << "feasible\n";
      return 0;
    }
    print_cut(*cert);
    return 2;
  }
  auto u = atsp::potentials_from_json(Json::parse(read_text(u_file)));
  auto violation = atsp::mtz_check(p, u);
  if (!violation) {
    std::cout << "feasible\n";
    return 0;
  }
  std::cout << "violated arc (" << violation->i << "," << violation->j
            << ") slack=" << fmt(violation->slack) << "\n";
  return 2;
}

int cmd_bound(const std::string& instance_file, const std::string& formulation) {
  auto inst = load_instance(instance_file);
  if (formulation == "dfj") {
    auto bound = atsp::dfj_lp_bound(inst);
    std::cout << "value = " << fmt(bound.value) << "\n"
              << atsp::point_to_json(bound.point).dump(2) << "\n";
  } else if (formulation == "mtz") {
    auto bound = atsp::mtz_lp_bound(inst);
    Json j{{"point", atsp::point_to_json(bound.point)},
           {"u", atsp::potentials_to_json(bound.potentials).at("u")}};
    std::cout << "value = " << fmt(bound.value) << "\n" << j.dump(2) << "\n";
  } else {
    auto best = atsp::brute_force_optimum(inst);
    Json j{{"tour", best.tour.order}};
    std::cout << "value = " << fmt(best.cost) << "\n" << j.dump(2) << "\n";
  }
  return 0;
}

int cmd_compare(const std::string& instance_file) {
  auto inst = load_instance(instance_file);
  auto mtz = atsp::mtz_lp_bound(inst);
  auto dfj = atsp::dfj_lp_bound(inst);
  std::cout << "mtz = " << fmt(mtz.value) << "\n";
  std::cout << "dfj = " << fmt(dfj.value) << "\n";
  bool ordered = mtz.value <= dfj.value;
  if (inst.n <= 10) {
    auto ip = atsp::brute_force_optimum(inst);
    std::cout << "ip = " << fmt(ip.cost) << "\n";
    ordered = ordered && dfj.value <= ip.cost;
    std::cout << "verdict: mtz <= dfj <= ip " << (ordered ? "holds" : "VIOLATED") << "\n";
  } else {
    std::cout << "verdict: mtz <= dfj " << (ordered ? "holds" : "VIOLATED") << "\n";
  }
  return ordered ? 0 : 2;
}

int cmd_suite(const std::string& mode, const std::string& range, int trials,
              std::uint64_t seed, const std::string& out_file) {
  auto dots = range.find("..");
  atsp::NRange nr;
  if (dots == std::string::npos) {
    nr.lo = nr.hi = std::stoi(range);
  } else {
    nr.lo = std::stoi(range.substr(0, dots));
    nr.hi = std::stoi(range.substr(dots + 2));
  }
  std::vector<atsp::ExperimentReport> reports;
  if (mode == "containment") {
    reports = atsp::run_containment_suite(nr, trials, seed);
  } else {
    for (int n = nr.lo; n <= nr.hi; ++n) {
      auto part = atsp::run_gap_search(n, trials, seed);
      reports.insert(reports.end(), part.begin(), part.end());
    }
  }
  std::ofstream out(out_file);
  if (!out) throw std::runtime_error("cannot write '" + out_file + "'");
  out << atsp::reports_to_json(reports).dump(2) << "\n";
  int flagged = 0, failures = 0;
  for (const auto& r : reports) {
    flagged += r.flagged_strict ? 1 : 0;
    failures += r.lift_failures;
  }
  std::cout << "rows: " << reports.size() << "\nflagged_strict: " << flagged
            << "\nlift_failures: " << failures << "\n";
  return 0;
}

int cmd_gen(int n, int tours, std::uint64_t seed) {
  auto p = atsp::random_dfj_point<Rational>(n, tours, seed);
  std::cout << atsp::point_to_json(p).dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"DFJ/MTZ relaxation toolbox for asymmetric TSP instances"};
  app.require_subcommand(1);

  std::string point_file, u_file, instance_file, formulation, mode, range, out_file;
  bool as_json = false;
  int trials = 0, n = 0, tours = 1;
  std::uint64_t seed = 0;

  auto* lift = app.add_subcommand("lift", "Lift a point to order potentials or report a cut");
  lift->add_option("--point", point_file, "FractionalPoint JSON file")->required();
  lift->add_flag("--json", as_json, "Emit JSON instead of text");

  auto* check = app.add_subcommand("check", "Check a point against one formulation");
  check->add_option("--point", point_file, "FractionalPoint JSON file")->required();
  check->add_option("--formulation", formulation, "dfj or mtz")
      ->required()
      ->check(CLI::IsMember({"dfj", "mtz"}));
  check->add_option("--u", u_file, "Potentials JSON file (mtz only)");

  auto* bound = app.add_subcommand("bound", "Optimal value and optimizer of a relaxation");
  bound->add_option("--instance", instance_file, "TSPLIB ATSP file")->required();
  bound->add_option("--formulation", formulation, "dfj, mtz or ip")
      ->required()
      ->check(CLI::IsMember({"dfj", "mtz", "ip"}));

  auto* compare = app.add_subcommand("compare", "Compare both bounds (and IP when n <= 10)");
  compare->add_option("--instance", instance_file, "TSPLIB ATSP file")->required();

  auto* suite = app.add_subcommand("suite", "Run a batch suite and write a JSON report");
  suite->add_option("--mode", mode, "containment or gap")
      ->required()
      ->check(CLI::IsMember({"containment", "gap"}));
  suite->add_option("--n", range, "Node-count range A..B")->required();
  suite->add_option("--trials", trials, "Trials per node count")->required();
  suite->add_option("--seed", seed, "Base seed")->required();
  suite->add_option("--out", out_file, "Report file")->required();

  auto* gen = app.add_subcommand("gen", "Generate a random point of the subtour polytope");
  gen->add_option("--n", n, "Node count")->required();
  gen->add_option("--tours", tours, "Number of tours to combine")->required();
  gen->add_option("--seed", seed, "Seed")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n" << app.help();
    return 64;
  }

  if (check->parsed() && formulation == "mtz" && u_file.empty()) {
    std::cerr << "check --formulation mtz requires --u FILE\n" << app.help();
    return 64;
  }

  try {
    if (lift->parsed()) return cmd_lift(point_file, as_json);
    if (check->parsed()) return cmd_check(point_file, formulation, u_file);
    if (bound->parsed()) return cmd_bound(instance_file, formulation);
    if (compare->parsed()) return cmd_compare(instance_file);
    if (suite->parsed()) return cmd_suite(mode, range, trials, seed, out_file);
    if (gen->parsed()) return cmd_gen(n, tours, seed);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 64;
}
