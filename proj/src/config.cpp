#include "orliczmp/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <map>

namespace orliczmp {

namespace pt = boost::property_tree;

namespace {

using Setter = std::function<void(const std::string&)>;

double to_number(const std::string& text) {
  const auto xs = parse_double_list(text);
  if (xs.size() != 1) throw std::invalid_argument("expected a single number, got '" + text + "'");
  return xs[0];
}

template <class Int>
Int to_integer(const std::string& text) {
  const double v = to_number(text);
  if (!(std::floor(v) == v) || std::abs(v) > 9.0e15) throw std::invalid_argument("expected an integer, got '" + text + "'");
  if (std::is_unsigned_v<Int> && v < 0.0) throw std::invalid_argument("expected a nonnegative integer, got '" + text + "'");
  return static_cast<Int>(v);
}

Setter number(double& target) {
  return [&target](const std::string& s) { target = to_number(s); };
}

template <class Int>
Setter integer(Int& target) {
  return [&target](const std::string& s) { target = to_integer<Int>(s); };
}

std::map<std::string, Setter> solver_keys(MountainPassConfig& c) {
  return {
      {"path_points", integer(c.path_points)},
      {"max_outer_iters", integer(c.max_outer_iters)},
      {"descent_step0", number(c.descent_step0)},
      {"armijo_c", number(c.armijo_c)},
      {"grad_tol", number(c.grad_tol)},
      {"switch_tol", number(c.switch_tol)},
      {"rim_samples", integer(c.rim_samples)},
      {"xi_growth", number(c.xi_growth)},
      {"seed", integer(c.seed)},
      {"newton_max_iter", integer(c.newton_max_iter)},
      {"norm_tol", number(c.norm_tol)},
      {"metric",
       [&c](const std::string& s) {
         if (s == "sobolev")
           c.metric = DescentMetric::sobolev;
         else if (s == "euclidean")
           c.metric = DescentMetric::euclidean;
         else
           throw std::invalid_argument("expected 'sobolev' or 'euclidean', got '" + s + "'");
       }},
      {"radial_directions", integer(c.radial.directions)},
      {"radial_radii", integer(c.radial.radii)},
      {"conjugate_angles", integer(c.conjugate.angles)},
      {"conjugate_radii", integer(c.conjugate.radii)},
  };
}

std::map<std::string, Setter> check_keys(HypothesisOptions& o) {
  return {
      {"directions", integer(o.directions)},
      {"time_nodes", integer(o.time_nodes)},
      {"near_radii", integer(o.near_radii)},
      {"shells", [&o](const std::string& s) { o.shells = parse_double_list(s); }},
      {"ar_r_min", number(o.ar_r_min)},
      {"ar_r_max", number(o.ar_r_max)},
      {"ar_radii", integer(o.ar_radii)},
      {"tol", number(o.tol)},
      {"seed", integer(o.plan.seed)},
      {"plan_directions", integer(o.plan.directions)},
      {"plan_radii", integer(o.plan.radii)},
      {"plan_r_min", number(o.plan.r_min)},
      {"plan_r_max", number(o.plan.r_max)},
      {"radial_directions", integer(o.radial.directions)},
      {"radial_radii", integer(o.radial.radii)},
      {"conjugate_angles", integer(o.conjugate.angles)},
      {"conjugate_radii", integer(o.conjugate.radii)},
  };
}

void apply_section(const pt::ptree& section, const std::string& name, std::map<std::string, Setter> keys) {
  for (const auto& [key, node] : section) {
    const auto it = keys.find(key);
    if (it == keys.end()) {
      std::string msg = "[" + name + "] " + key + ": unknown key; accepted:";
      for (const auto& [k, s] : keys) msg += " " + k;
      throw ConfigError(msg);
    }
    try {
      it->second(node.data());
    } catch (const std::invalid_argument& e) {
      throw ConfigError("[" + name + "] " + key + ": " + e.what());
    }
  }
}

}  // namespace

void rebuild_problem(Experiment& exp) {
  try {
    exp.problem = builtin_problem(exp.problem_name, exp.params);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("[problem] ") + e.what());
  }
}

Experiment builtin_experiment(const std::string& name, const ProblemParams& params) {
  Experiment exp{"builtin:" + name, name, params, Problem(make_builtin_gfunction("power", std::vector<double>{2.0})), {}, {}};
  rebuild_problem(exp);
  return exp;
}

Experiment parse_experiment(std::istream& is, const std::string& source) {
  pt::ptree tree;
  try {
    pt::read_ini(is, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(source + ": " + e.message() + " (line " + std::to_string(e.line()) + ")");
  }

  for (const auto& [name, section] : tree) {
    if (name != "problem" && name != "solver" && name != "check")
      throw ConfigError("[" + name + "]: unknown section; accepted: problem solver check");
    if (section.empty() && !section.data().empty())
      throw ConfigError(name + ": key outside any section");
  }

  const auto problem = tree.get_child_optional("problem");
  if (!problem) throw ConfigError(source + ": missing [problem] section");
  const auto name = problem->get_optional<std::string>("name");
  if (!name) throw ConfigError("[problem] name: missing");

  ProblemParams params;
  for (const auto& [key, node] : *problem)
    if (key != "name") params[key] = node.data();

  Experiment exp = builtin_experiment(*name, params);
  exp.source = source;
  if (const auto s = tree.get_child_optional("solver")) apply_section(*s, "solver", solver_keys(exp.solver));
  if (const auto s = tree.get_child_optional("check")) apply_section(*s, "check", check_keys(exp.check));
  try {
    exp.solver.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("[solver] ") + e.what());
  }
  try {
    exp.check.plan.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("[check] ") + e.what());
  }
  return exp;
}

Experiment load_experiment(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse_experiment(in, path);
}

}  // namespace orliczmp
