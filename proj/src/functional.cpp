#include "orliczmp/functional.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

namespace orliczmp {

Vec Potential::grad(double t, const Vec& x) const {
  if (gradient) return gradient(t, x);
  return fd_gradient([&](const Vec& z) { return value(t, z); }, x);
}

Potential Potential::zero() {
  return {[](double, const Vec&) { return 0.0; }, [](double, const Vec& x) -> Vec { return Vec::Zero(x.size()); }};
}

Vec Problem::force(double t) const { return f ? f(t) : Vec::Zero(dim()); }

Problem Problem::with_forcing_scale(double s) const {
  Problem out = *this;
  if (f) {
    auto base = f;
    out.f = [base, s](double t) -> Vec { return s * base(t); };
  }
  return out;
}

namespace {

void require_grid(const Problem& prob, const GridFunction& u) {
  if (u.dim() != prob.dim())
    throw std::invalid_argument("problem has N=" + std::to_string(prob.dim()) + ", grid function has N=" +
                                std::to_string(u.dim()));
  if (std::abs(u.half_period() - prob.T) > 1e-12 * prob.T)
    throw std::invalid_argument("grid function T differs from problem T");
}

[[noreturn]] void non_finite(const char* what, double t, const Vec& x) {
  std::ostringstream os;
  os << what << " is not finite at t = " << format_double(t) << ", u = (";
  for (Eigen::Index j = 0; j < x.size(); ++j) os << (j ? ", " : "") << format_double(x[j]);
  os << ")";
  throw NumericalError(os.str());
}

// Potential plus forcing at a node, with the node's time.
double nodal_density(const Problem& prob, double t, const Vec& x) {
  double v = prob.V(t, x);
  if (prob.f) v += prob.f(t).dot(x);
  if (!std::isfinite(v)) non_finite("potential", t, x);
  return v;
}

Vec nodal_force(const Problem& prob, double t, const Vec& x) {
  Vec g = prob.V_x(t, x);
  if (prob.f) g += prob.f(t);
  if (!g.allFinite()) non_finite("potential gradient", t, x);
  return g;
}

}  // namespace

double action(const Problem& prob, const GridFunction& u) {
  require_grid(prob, u);
  const int m = u.size();
  const double h = u.step();
  const double T = u.half_period();

  std::vector<double> terms;
  terms.reserve(2 * static_cast<std::size_t>(m) + 1);
  const GridFunction du = derivative(u);
  for (int i = 0; i < m; ++i) {
    const Vec d = du.at(i);
    const double gv = prob.G(d);
    if (!std::isfinite(gv)) non_finite("G(u')", du.time(i), d);
    terms.push_back(gv);
  }
  const Vec u0 = u.at(0);
  terms.push_back(0.5 * nodal_density(prob, -T, u0));
  terms.push_back(0.5 * nodal_density(prob, T, u0));
  for (int i = 1; i < m; ++i) terms.push_back(nodal_density(prob, u.time(i), u.at(i)));
  return h * pairwise_sum(terms);
}

GridFunction action_gradient(const Problem& prob, const GridFunction& u) {
  require_grid(prob, u);
  const int m = u.size();
  const double h = u.step();
  const double T = u.half_period();
  const GridFunction du = derivative(u);

  Values flux(m, u.dim());  // ∇G on each cell
  for (int i = 0; i < m; ++i) {
    const Vec gi = prob.G.gradient(du.at(i));
    if (!gi.allFinite()) non_finite("grad G(u')", du.time(i), du.at(i));
    flux.row(i) = gi.transpose();
  }
  Values out(m, u.dim());
  for (int j = 0; j < m; ++j) {
    const int prev = (j + m - 1) % m;
    Vec rhs;
    if (j == 0) {
      const Vec u0 = u.at(0);
      rhs = 0.5 * (nodal_force(prob, -T, u0) + nodal_force(prob, T, u0));
    } else {
      rhs = nodal_force(prob, u.time(j), u.at(j));
    }
    out.row(j) = flux.row(prev) - flux.row(j) + h * rhs.transpose();
  }
  return GridFunction(T, std::move(out));
}

double el_residual(const GridFunction& gradient) {
  double r = 0.0;
  for (int i = 0; i < gradient.size(); ++i) r = std::max(r, gradient.values().row(i).norm());
  return r / gradient.step();
}

double el_residual(const Problem& prob, const GridFunction& u) { return el_residual(action_gradient(prob, u)); }

GridFunction tent_function(double xi, const Vec& v, double T, int m) {
  if (!(xi > T + 1.0))
    throw std::invalid_argument("tent_function: xi must exceed T + 1 (xi = " + format_double(xi) +
                                ", T = " + format_double(T) + ")");
  const Vec w = v;
  return GridFunction::sample(T, m, static_cast<int>(v.size()),
                              [&](double t) -> Vec { return xi * (1.0 - std::abs(t) / (T + 1.0)) * w; });
}

// ---------------------------------------------------------------------------
// Problem library

namespace {

class Params {
 public:
  Params(std::string problem, const ProblemParams& p) : problem_(std::move(problem)), p_(p) {}

  double number(const std::string& key, double fallback) {
    used_.insert(key);
    auto it = p_.find(key);
    if (it == p_.end()) return fallback;
    std::vector<double> xs;
    try {
      xs = parse_double_list(it->second);
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(problem_ + ": parameter '" + key + "': " + e.what());
    }
    if (xs.size() != 1) throw std::invalid_argument(problem_ + ": parameter '" + key + "' must be a single number");
    return xs[0];
  }

  std::string text(const std::string& key, const std::string& fallback) {
    used_.insert(key);
    auto it = p_.find(key);
    return it == p_.end() ? fallback : it->second;
  }

  void finish() const {
    for (const auto& [k, v] : p_)
      if (!used_.count(k)) {
        std::string msg = problem_ + ": unknown parameter '" + k + "'; accepted:";
        for (const auto& u : used_) msg += " " + u;
        throw std::invalid_argument(msg);
      }
  }

 private:
  std::string problem_;
  const ProblemParams& p_;
  std::set<std::string> used_;
};

void common_numbers(Problem& pr, Params& ps) {
  pr.T = ps.number("T", pr.T);
  pr.m = static_cast<int>(ps.number("m", pr.m));
  pr.rho0 = ps.number("rho0", pr.rho0);
  pr.b = ps.number("b", pr.b);
  pr.b1 = ps.number("b1", pr.b1);
  pr.p = ps.number("p", pr.p);
  pr.mu = ps.number("mu", pr.mu);
  pr.nu = ps.number("nu", pr.nu);
  if (!(pr.T > 0.0)) throw std::invalid_argument(pr.name + ": T must be positive");
  if (pr.m < 4) throw std::invalid_argument(pr.name + ": m must be at least 4");
}

// G(x, y) = x^2 + (x - y)^4
// K = (2 + sin t) G + |x^2 + y^2|^2 cos^2 t
// W = |x^2 + y^2|^{5/2} (exp(t^2 (x^2 + y^2 - 1)) - 1) / (t^2 + 1) + sin t
Problem make_example1(const ProblemParams& params) {
  Params ps("example1", params);
  Problem pr(make_builtin_gfunction("example1", {}, 2));
  pr.name = "example1";
  pr.T = 1.0;
  pr.rho0 = 1.0;
  pr.b = 2.0;
  pr.b1 = 0.5;
  pr.p = 2.0;
  pr.mu = 5.0;
  pr.nu = 0.0;
  common_numbers(pr, ps);
  const double f_amp = ps.number("f_amp", 0.0);
  const std::string kappa = ps.text("kappa", "literal");
  ps.finish();

  const GFunction G = pr.G;
  pr.K.value = [G](double t, const Vec& x) {
    const double r2 = x.squaredNorm();
    const double c = std::cos(t);
    return (2.0 + std::sin(t)) * G(x) + r2 * r2 * c * c;
  };
  pr.K.gradient = [G](double t, const Vec& x) -> Vec {
    const double r2 = x.squaredNorm();
    const double c = std::cos(t);
    return (2.0 + std::sin(t)) * G.gradient(x) + (4.0 * r2 * c * c) * x;
  };
  pr.W.value = [](double t, const Vec& x) {
    const double r2 = x.squaredNorm();
    const double t2 = t * t;
    return std::pow(r2, 2.5) * std::expm1(t2 * (r2 - 1.0)) / (t2 + 1.0) + std::sin(t);
  };
  pr.W.gradient = [](double t, const Vec& x) -> Vec {
    const double r2 = x.squaredNorm();
    const double t2 = t * t;
    const double em1 = std::expm1(t2 * (r2 - 1.0));
    // d/dx of r^5 (e - 1) = (5 r^3 (e - 1) + 2 t^2 r^5 e) x
    const double s = (5.0 * std::pow(r2, 1.5) * em1 + 2.0 * t2 * std::pow(r2, 2.5) * (em1 + 1.0)) / (t2 + 1.0);
    return s * x;
  };
  pr.a = [](double t) { return std::sin(t); };
  if (kappa == "literal") {
    pr.kappa = [](double t) { return 5.0 * std::sin(t); };
  } else if (kappa == "positive_part") {
    pr.kappa = [](double t) { return std::max(0.0, 5.0 * std::sin(t)); };
  } else {
    throw std::invalid_argument("example1: kappa must be 'literal' or 'positive_part'");
  }
  if (f_amp != 0.0) pr.f = [f_amp](double t) -> Vec { return Vec{{f_amp * std::cos(t), f_amp * std::sin(t)}}; };
  pr.note = "kappa(t) = 5 sin t is the literal choice and is negative for t < 0";
  return pr;
}

// V = alpha(t) G(x) - lambda beta(t) F(x), alpha = 2 + tanh^2 t, beta = 1 + sech^2 t.
Problem make_example2(const ProblemParams& params) {
  Params ps("example2", params);
  const std::string gspec = ps.text("G", "power:2");
  const std::string fspec = ps.text("F", "power:4");
  const int dim = static_cast<int>(ps.number("N", 1));
  Problem pr(parse_gfunction(gspec, dim));
  const GFunction F = parse_gfunction(fspec, pr.G.dim());
  pr.name = "example2";
  const double lambda_default = 1.0;
  const double lambda = ps.number("lambda", lambda_default);
  if (!(lambda > 0.0)) throw std::invalid_argument("example2: lambda must be positive");
  pr.T = 1.0;
  pr.b = 1.5;
  pr.rho0 = 0.5 / std::sqrt(lambda);
  pr.b1 = 2.0;
  pr.p = 2.0;
  pr.mu = 4.0;
  pr.nu = 0.0;
  common_numbers(pr, ps);
  const double f_amp = ps.number("f_amp", 0.0);
  ps.finish();

  auto alpha = [](double t) {
    const double th = std::tanh(t);
    return 2.0 + th * th;
  };
  auto beta = [](double t) {
    const double s = 1.0 / std::cosh(t);
    return 1.0 + s * s;
  };
  const GFunction G = pr.G;
  pr.K.value = [G, alpha](double t, const Vec& x) { return alpha(t) * G(x); };
  pr.K.gradient = [G, alpha](double t, const Vec& x) -> Vec { return alpha(t) * G.gradient(x); };
  pr.W.value = [F, beta, lambda](double t, const Vec& x) { return lambda * beta(t) * F(x); };
  pr.W.gradient = [F, beta, lambda](double t, const Vec& x) -> Vec { return (lambda * beta(t)) * F.gradient(x); };
  if (f_amp != 0.0) {
    const double T = pr.T;
    const int n = pr.G.dim();
    pr.f = [f_amp, T, n](double t) -> Vec {
      Vec v = Vec::Zero(n);
      v[0] = f_amp * std::cos(std::numbers::pi * t / T);
      return v;
    };
  }
  if (gspec != "power:2" || fspec != "power:4")
    pr.note = "structural constants default to the G = |x|^2, F = |x|^4 case; override b, rho0, mu, nu, b1, p";
  return pr;
}

// G = |v|^2, K = (3 + cos(pi t / T)) x^2, W = w x^4 (N = 1).
Problem make_plaplacian_test(const ProblemParams& params) {
  Params ps("plaplacian_test", params);
  Problem pr(make_builtin_gfunction("power", std::vector<double>{2.0}, 1));
  pr.name = "plaplacian_test";
  const double w = ps.number("w", 1.0);
  if (!(w > 0.0)) throw std::invalid_argument("plaplacian_test: w must be positive");
  pr.T = 1.0;
  pr.b = 1.5;
  pr.rho0 = std::sqrt(0.5 / w);
  pr.b1 = 2.0;
  pr.p = 2.0;
  pr.mu = 4.0;
  pr.nu = 0.0;
  common_numbers(pr, ps);
  const double f_amp = ps.number("f_amp", 0.0);
  ps.finish();

  const double T = pr.T;
  auto k = [T](double t) { return 3.0 + std::cos(std::numbers::pi * t / T); };
  pr.K.value = [k](double t, const Vec& x) { return k(t) * x.squaredNorm(); };
  pr.K.gradient = [k](double t, const Vec& x) -> Vec { return (2.0 * k(t)) * x; };
  pr.W.value = [w](double, const Vec& x) {
    const double r2 = x.squaredNorm();
    return w * r2 * r2;
  };
  pr.W.gradient = [w](double, const Vec& x) -> Vec { return (4.0 * w * x.squaredNorm()) * x; };
  if (f_amp != 0.0)
    pr.f = [f_amp, T](double t) -> Vec { return Vec::Constant(1, f_amp * std::sin(std::numbers::pi * t / T)); };
  return pr;
}

}  // namespace

std::vector<std::string> builtin_problem_names() { return {"example1", "example2", "plaplacian_test"}; }

Problem builtin_problem(const std::string& name, const ProblemParams& params) {
  if (name == "example1") return make_example1(params);
  if (name == "example2") return make_example2(params);
  if (name == "plaplacian_test") return make_plaplacian_test(params);
  std::string msg = "unknown problem '" + name + "'; built-in:";
  for (const auto& n : builtin_problem_names()) msg += " " + n;
  throw std::invalid_argument(msg);
}

}  // namespace orliczmp
