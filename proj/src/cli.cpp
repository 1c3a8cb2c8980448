#include "orliczmp/cli.hpp"

#include "orliczmp/config.hpp"
#include "orliczmp/report.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>

namespace orliczmp::cli {

namespace fs = std::filesystem;

namespace {

struct Options {
  std::string g = "power:2";
  int dim = 0;
  std::string y;
  std::optional<double> constant;
  std::string csv;
  double T = 1.0;
  int m = 256;
  double tol = 1e-10;

  std::string problem;
  std::vector<std::string> params;
  std::optional<int> m_override;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol_override;
  std::optional<double> f_scale;
  std::optional<double> rho;
  std::string residual;
  std::string out_dir;
  bool certify = false;
  SamplingPlan plan;
};

Experiment resolve_problem(const Options& o) {
  if (o.problem.empty()) throw ConfigError("--problem is required");
  ProblemParams extra;
  for (const auto& kv : o.params) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("--param expects key=value, got '" + kv + "'");
    extra[kv.substr(0, eq)] = kv.substr(eq + 1);
  }
  if (o.m_override) extra["m"] = std::to_string(*o.m_override);

  Experiment exp = [&] {
    if (fs::exists(o.problem)) return load_experiment(o.problem);
    const auto names = builtin_problem_names();
    if (std::find(names.begin(), names.end(), o.problem) != names.end()) return builtin_experiment(o.problem);
    std::string msg = "problem '" + o.problem + "' is neither a file nor a built-in; built-in:";
    for (const auto& n : names) msg += " " + n;
    throw ConfigError(msg);
  }();

  if (!extra.empty()) {
    for (const auto& [k, v] : extra) exp.params[k] = v;
    rebuild_problem(exp);
  }
  if (o.seed) {
    exp.solver.seed = *o.seed;
    exp.check.plan.seed = *o.seed;
  }
  if (o.tol_override) {
    exp.solver.grad_tol = *o.tol_override;
    exp.check.tol = *o.tol_override;
  }
  if (o.f_scale) exp.problem = exp.problem.with_forcing_scale(*o.f_scale);
  return exp;
}

fs::path output_dir(const Options& o) {
  if (!o.out_dir.empty()) return o.out_dir;
  if (const char* env = std::getenv("ORLICZMP_OUTPUT_DIR"); env && *env) return env;
  return fs::current_path();
}

void write_file(const fs::path& path, const std::function<void(std::ostream&)>& body) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write '" + path.string() + "'");
  body(f);
  if (!f) throw std::runtime_error("write failed for '" + path.string() + "'");
}

int cmd_indices(const Options& o, std::ostream& out) {
  const GFunction g = parse_gfunction(o.g, o.dim);
  out << "g = " << g.label() << "\n";
  out << "dim = " << g.dim() << "\n";
  write_report(out, simonenko_indices(g, o.plan));
  write_report(out, check_delta2(g, o.plan));
  write_report(out, check_nabla2(g, o.plan));
  return 0;
}

int cmd_conjugate(const Options& o, std::ostream& out) {
  const GFunction g = parse_gfunction(o.g, o.dim);
  const auto ys = parse_double_list(o.y);
  if (static_cast<int>(ys.size()) != g.dim())
    throw std::invalid_argument("--y has " + std::to_string(ys.size()) + " components, G has dimension " +
                                std::to_string(g.dim()));
  const Vec y = Eigen::Map<const Vec>(ys.data(), static_cast<Eigen::Index>(ys.size()));
  out << "g = " << g.label() << "\n";
  write_report(out, conjugate_point(g, y));
  return 0;
}

int cmd_norm(const Options& o, std::ostream& out) {
  const GFunction g = parse_gfunction(o.g, o.dim);
  std::optional<GridFunction> u;
  if (o.constant && !o.csv.empty()) throw std::invalid_argument("--const and --csv are exclusive");
  if (o.constant) {
    u = GridFunction::constant(o.T, o.m, Vec::Constant(g.dim(), *o.constant));
  } else if (!o.csv.empty()) {
    u = read_csv(o.csv);
  } else {
    throw std::invalid_argument("norm needs --const or --csv");
  }
  if (u->dim() != g.dim())
    throw std::invalid_argument("grid function has dimension " + std::to_string(u->dim()) + ", G has " +
                                std::to_string(g.dim()));
  const GridFunction du = derivative(*u);
  out << "g = " << g.label() << "\n";
  out << "T = " << format_double(u->half_period()) << "\n";
  out << "m = " << u->size() << "\n";
  out << "luxemburg_norm = " << format_double(luxemburg_norm(g, *u, o.tol)) << "\n";
  out << "modular = " << format_double(modular(g, *u)) << "\n";
  out << "luxemburg_norm_du = " << format_double(luxemburg_norm(g, du, o.tol)) << "\n";
  out << "modular_du = " << format_double(modular(g, du)) << "\n";
  out << "sobolev_norm = " << format_double(sobolev_norm(g, *u, o.tol)) << "\n";
  out << "joint_norm = " << format_double(joint_norm(g, *u, o.tol)) << "\n";
  return 0;
}

void write_problem_header(std::ostream& out, const Experiment& exp) {
  out << "problem = " << exp.problem.name << "\n";
  out << "source = " << exp.source << "\n";
  out << "T = " << format_double(exp.problem.T) << "\n";
  out << "m = " << exp.problem.m << "\n";
}

int cmd_check(const Options& o, std::ostream& out) {
  const Experiment exp = resolve_problem(o);
  write_problem_header(out, exp);
  if (!o.residual.empty()) {
    const GridFunction u = read_csv(o.residual);
    write_report(out, certify(exp.problem, u));
    return 0;
  }
  const HypothesisReport rep = check_hypotheses(exp.problem, exp.check);
  write_report(out, rep);
  const bool any_fail = std::any_of(rep.verdicts.begin(), rep.verdicts.end(),
                                    [](const Verdict& v) { return v.status == Status::fail; });
  const bool theorem = rep.at("theorem1").passed() || rep.at("theorem2").passed();
  out << "status = " << (any_fail || !theorem ? "hypothesis_failure" : "ok") << "\n";
  return any_fail || !theorem ? 2 : 0;
}

int cmd_rim(const Options& o, std::ostream& out) {
  const Experiment exp = resolve_problem(o);
  double r = 0.0;
  if (o.rho) {
    r = *o.rho;
  } else {
    r = rho(exp.problem.rho0, embedding_constant(exp.problem.G, exp.problem.T, exp.solver.radial));
  }
  write_problem_header(out, exp);
  write_report(out, verify_rim(exp.problem, r, exp.problem.m, exp.solver));
  return 0;
}

int cmd_solve(const Options& o, std::ostream& out, std::ostream& err) {
  const Experiment exp = resolve_problem(o);
  const SolveReport rep = solve(exp.problem, exp.solver);
  std::optional<CertReport> cert;
  if (o.certify) cert = certify(exp.problem, rep.u_star);

  const fs::path dir = output_dir(o);
  fs::create_directories(dir);
  write_file(dir / "solution.csv", [&](std::ostream& f) { write_csv(f, rep.u_star, true); });
  write_file(dir / "trace.csv", [&](std::ostream& f) { write_trace_csv(f, rep.trace); });
  auto body = [&](std::ostream& f) {
    write_problem_header(f, exp);
    write_report(f, rep);
    if (cert) {
      f << "# certificate\n";
      write_report(f, *cert);
    }
  };
  write_file(dir / "solve_report.txt", body);
  body(out);
  out << "output_dir = " << dir.string() << "\n";
  if (!rep.converged) {
    err << "error: solver did not reach grad_tol (grad_norm = " << format_double(rep.grad_norm) << ")\n";
    return 1;
  }
  return 0;
}

void add_plan_options(CLI::App* sub, Options& o) {
  sub->add_option("--directions", o.plan.directions, "sampled unit directions")->capture_default_str();
  sub->add_option("--radii", o.plan.radii, "log-spaced radii")->capture_default_str();
  sub->add_option("--r-min", o.plan.r_min, "smallest sampled radius")->capture_default_str();
  sub->add_option("--r-max", o.plan.r_max, "largest sampled radius")->capture_default_str();
  sub->add_option("--seed", o.plan.seed, "sampling seed")->capture_default_str();
}

void add_problem_options(CLI::App* sub, Options& o) {
  sub->add_option("--problem", o.problem, "config file or built-in problem name")->required();
  sub->add_option("--param", o.params, "problem parameter override key=value (repeatable)");
  sub->add_option("--m", o.m_override, "grid size override");
  sub->add_option("--seed", o.seed, "seed override");
  sub->add_option("--tol", o.tol_override, "tolerance override");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Orlicz-Sobolev variational toolkit", "orliczmp"};
  app.require_subcommand(1);
  Options o;

  auto* indices = app.add_subcommand("indices", "Simonenko indices and doubling constants of G");
  indices->add_option("--g", o.g, "G-function, e.g. power:2 or example1")->required();
  indices->add_option("--dim", o.dim, "dimension (0: natural dimension of G)");
  add_plan_options(indices, o);

  auto* conj = app.add_subcommand("conjugate", "Fenchel conjugate G*(y)");
  conj->add_option("--g", o.g, "G-function")->required();
  conj->add_option("--dim", o.dim, "dimension");
  conj->add_option("--y", o.y, "comma separated point")->required();

  auto* norm = app.add_subcommand("norm", "Luxemburg and Sobolev norms of a grid function");
  norm->add_option("--g", o.g, "G-function")->required();
  norm->add_option("--dim", o.dim, "dimension");
  norm->add_option("--const", o.constant, "constant function value (every component)");
  norm->add_option("--csv", o.csv, "grid function CSV (t,u1,..)");
  norm->add_option("--T", o.T, "half period for --const")->capture_default_str();
  norm->add_option("--m", o.m, "nodes for --const")->capture_default_str();
  norm->add_option("--tol", o.tol, "bisection tolerance")->capture_default_str();

  auto* check = app.add_subcommand("check", "hypotheses and theorem inequalities, or a solution residual");
  add_problem_options(check, o);
  check->add_option("--f-scale", o.f_scale, "multiply the forcing");
  check->add_option("--residual", o.residual, "solution CSV to certify instead");

  auto* rim = app.add_subcommand("rim", "sample J on the sphere of radius rho");
  add_problem_options(rim, o);
  rim->add_option("--rho", o.rho, "sphere radius (default rho0 / c)");

  auto* solve_cmd = app.add_subcommand("solve", "mountain pass solution");
  add_problem_options(solve_cmd, o);
  solve_cmd->add_option("--out", o.out_dir, "output directory (default $ORLICZMP_OUTPUT_DIR or .)");
  solve_cmd->add_flag("--certify", o.certify, "append the regularity certificate");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*indices) return cmd_indices(o, out);
    if (*conj) return cmd_conjugate(o, out);
    if (*norm) return cmd_norm(o, out);
    if (*check) return cmd_check(o, out);
    if (*rim) return cmd_rim(o, out);
    if (*solve_cmd) return cmd_solve(o, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace orliczmp::cli
