#include "orliczmp/mountain_pass.hpp"

#include "orliczmp/hypothesis.hpp"
#include "orliczmp/orlicz_space.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace orliczmp {

void MountainPassConfig::validate() const {
  if (path_points < 8) throw std::invalid_argument("path_points must be at least 8");
  if (max_outer_iters < 0) throw std::invalid_argument("max_outer_iters must be nonnegative");
  if (!(descent_step0 > 0.0)) throw std::invalid_argument("descent_step0 must be positive");
  if (!(armijo_c > 0.0 && armijo_c < 1.0)) throw std::invalid_argument("armijo_c must lie in (0, 1)");
  if (!(grad_tol > 0.0 && grad_tol < 1.0)) throw std::invalid_argument("grad_tol must lie in (0, 1)");
  if (!(switch_tol > 0.0)) throw std::invalid_argument("switch_tol must be positive");
  if (rim_samples < 1) throw std::invalid_argument("rim_samples must be positive");
  if (!(xi_growth > 1.0)) throw std::invalid_argument("xi_growth must exceed 1");
  if (newton_max_iter < 0) throw std::invalid_argument("newton_max_iter must be nonnegative");
  if (!(norm_tol > 0.0)) throw std::invalid_argument("norm_tol must be positive");
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double frobenius(const GridFunction& g) { return g.values().norm(); }

double dot(const GridFunction& a, const GridFunction& b) { return a.values().cwiseProduct(b.values()).sum(); }

std::vector<Vec> endpoint_directions(int dim) {
  std::vector<Vec> dirs;
  for (int i = 0; i < dim; ++i) {
    dirs.push_back(Vec::Unit(dim, i));
    dirs.push_back(-Vec::Unit(dim, i));
  }
  if (dim == 2) {
    const double s = std::sqrt(0.5);
    for (double a : {1.0, -1.0})
      for (double b : {1.0, -1.0}) dirs.push_back(Vec{{a * s, b * s}});
  }
  return dirs;
}

// Riesz map of the discrete W^{1,2} inner product h Σ u_i v_i + h Σ u̇_i v̇_i:
// solves (h I + L/h) s = g per component, L the periodic second difference.
class SobolevPreconditioner {
 public:
  SobolevPreconditioner(int m, double h) {
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
      A(i, i) += h + 2.0 / h;
      A(i, (i + 1) % m) -= 1.0 / h;
      A(i, (i + m - 1) % m) -= 1.0 / h;
    }
    llt_.compute(A);
  }

  Values apply(const Values& g) const { return llt_.solve(g); }

 private:
  Eigen::LLT<Eigen::MatrixXd> llt_;
};

// Re-places the interior states at equal Sobolev arc length. With force
// unset, paths whose segments are within a factor 2 of the mean are kept.
std::vector<GridFunction> equidistribute(const std::vector<GridFunction>& path, const GFunction& G, double tol,
                                         bool force = true) {
  const std::size_t P = path.size();
  std::vector<double> s(P, 0.0);
  double longest = 0.0, shortest = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k < P; ++k) {
    const double len = sobolev_norm(G, path[k] - path[k - 1], tol);
    s[k] = s[k - 1] + len;
    longest = std::max(longest, len);
    shortest = std::min(shortest, len);
  }
  if (!(s.back() > 0.0)) return path;
  const double mean = s.back() / static_cast<double>(P - 1);
  if (!force && longest <= 2.0 * mean && shortest >= 0.5 * mean) return path;
  std::vector<GridFunction> out;
  out.reserve(P);
  out.push_back(path.front());
  std::size_t j = 0;
  for (std::size_t k = 1; k + 1 < P; ++k) {
    const double target = s.back() * static_cast<double>(k) / static_cast<double>(P - 1);
    while (j + 2 < P && s[j + 1] < target) ++j;
    const double len = s[j + 1] - s[j];
    const double w = len > 0.0 ? std::clamp((target - s[j]) / len, 0.0, 1.0) : 0.0;
    out.push_back(path[j] * (1.0 - w) + path[j + 1] * w);
  }
  out.push_back(path.back());
  return out;
}

// Golden-section maximization of J along the polyline p[i-1] -> p[i] -> p[i+1];
// the ridge of the mountain pass often falls between two states.
void lift_to_ridge(const Problem& prob, std::vector<GridFunction>& path, std::vector<double>& J, int i) {
  const GridFunction& a = path[static_cast<std::size_t>(i - 1)];
  const GridFunction& c = path[static_cast<std::size_t>(i + 1)];
  const GridFunction b = path[static_cast<std::size_t>(i)];
  auto point = [&](double tau) { return tau < 0.0 ? b + (a - b) * (-tau) : b + (c - b) * tau; };
  auto value = [&](double tau) {
    try {
      return action(prob, point(tau));
    } catch (const NumericalError&) {
      return -std::numeric_limits<double>::infinity();
    }
  };
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double lo = -1.0, hi = 1.0;
  double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
  double f1 = value(x1), f2 = value(x2);
  for (int k = 0; k < 40; ++k) {
    if (f1 >= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - phi * (hi - lo);
      f1 = value(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + phi * (hi - lo);
      f2 = value(x2);
    }
  }
  const double tau = f1 >= f2 ? x1 : x2;
  const double f = std::max(f1, f2);
  if (f > J[static_cast<std::size_t>(i)]) {
    path[static_cast<std::size_t>(i)] = point(tau);
    J[static_cast<std::size_t>(i)] = f;
  }
}

}  // namespace

// ---------------------------------------------------------------------------

Endpoint find_endpoint(const Problem& prob, double rho, int m, const MountainPassConfig& cfg) {
  cfg.validate();
  const double cap = std::ldexp(1.0, 30);
  const auto dirs = endpoint_directions(prob.dim());
  for (double xi = std::max(prob.T + 2.0, 2.0); xi <= cap; xi *= cfg.xi_growth) {
    for (const auto& v : dirs) {
      GridFunction e = tent_function(xi, v, prob.T, m);
      double J;
      try {
        J = action(prob, e);
      } catch (const NumericalError&) {
        continue;
      }
      if (!(J < 0.0)) continue;
      const double nrm = sobolev_norm(prob.G, e, cfg.norm_tol);
      if (!(nrm > rho)) continue;
      return {std::move(e), xi, v, J, nrm};
    }
  }
  throw NumericalError("no negative endpoint found up to xi = 2^30; the problem may violate the growth condition at infinity");
}

RimReport verify_rim(const Problem& prob, double rho, int m, const MountainPassConfig& cfg) {
  cfg.validate();
  if (!(rho > 0.0)) throw std::invalid_argument("verify_rim: rho must be positive");
  const int N = prob.dim();
  const double T = prob.T;
  const int modes = std::max(1, std::min(8, m / 4));

  RimReport rep{rho, std::numeric_limits<double>::infinity(), kNaN, kNaN, kNaN, 0.0, 0, 0,
                GridFunction::zeros(T, m, N)};

  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> normal;
  // Draw every coefficient before evaluating anything.
  std::vector<std::vector<Vec>> coef(static_cast<std::size_t>(cfg.rim_samples));
  for (auto& c : coef)
    for (int k = 0; k < 2 * modes + 1; ++k) {
      Vec z(N);
      for (int j = 0; j < N; ++j) z[j] = normal(rng);
      c.push_back(z);
    }

  for (const auto& c : coef) {
    GridFunction u = GridFunction::sample(T, m, N, [&](double t) -> Vec {
      Vec x = c[0];
      for (int k = 1; k <= modes; ++k) {
        const double w = std::numbers::pi * k * t / T;
        const double decay = 1.0 / ((1.0 + k) * (1.0 + k));
        x += decay * (std::cos(w) * c[2 * k - 1] + std::sin(w) * c[2 * k]);
      }
      return x;
    });
    ++rep.samples;
    try {
      const double n0 = sobolev_norm(prob.G, u, cfg.norm_tol);
      if (!(n0 > 0.0)) throw NumericalError("zero sample");
      // The Luxemburg norm is positively homogeneous; one rescale suffices,
      // a secant correction covers rounding in the bisection.
      u = u * (rho / n0);
      double n1 = sobolev_norm(prob.G, u, cfg.norm_tol);
      if (std::abs(n1 - rho) > 10.0 * cfg.norm_tol * rho) {
        u = u * (rho / n1);
        n1 = sobolev_norm(prob.G, u, cfg.norm_tol);
        if (std::abs(n1 - rho) > 10.0 * cfg.norm_tol * rho) throw NumericalError("rescaling did not reach the rim");
      }
      const double J = action(prob, u);
      if (J < rep.sampled_min) {
        rep.sampled_min = J;
        rep.worst = u;
      }
    } catch (const NumericalError&) {
      ++rep.skipped;
    }
  }

  const double shift = (prob.has_forcing() ? forcing_modular(prob, tabulated_conjugate(prob.G, cfg.conjugate)) : 0.0) +
                       (prob.a ? time_integral(T, m, prob.a) : 0.0);
  const double bmin = std::min(1.0, prob.b - 1.0);
  try {
    const bool regular = check_delta2(prob.G).holds_globally && check_nabla2(prob.G).holds_globally;
    if (regular) {
      const SimonenkoIndices ix = simonenko_indices(prob.G);
      rep.theorem1_bound = theorem1_rhs(prob.b, rho, ix.p_G, ix.q_G) - shift;
    }
  } catch (const std::domain_error&) {
  }
  if (rho >= 2.0) rep.theorem2_bound = bmin * 0.5 * rho - shift;
  for (double bnd : {rep.theorem1_bound, rep.theorem2_bound})
    if (std::isfinite(bnd) && !(bnd <= rep.analytic_bound)) rep.analytic_bound = bnd;
  rep.alpha = std::isfinite(rep.analytic_bound) && rep.analytic_bound > 0.0 ? rep.analytic_bound : rep.sampled_min;
  return rep;
}

NewtonResult newton_polish(const Problem& prob, const GridFunction& u0, double tol, int max_iter) {
  const int m = u0.size();
  const int N = u0.dim();
  const int n = m * N;
  const double T = u0.half_period();

  auto flat = [](const GridFunction& g) { return Eigen::Map<const Vec>(g.values().data(), g.values().size()); };
  auto unflat = [&](const Vec& x) {
    Values v(m, N);
    Eigen::Map<Vec>(v.data(), v.size()) = x;
    return GridFunction(T, std::move(v));
  };

  NewtonResult res{u0, 0.0, 0, false};
  Vec x = flat(u0);
  Vec g = flat(action_gradient(prob, u0));
  double gn = g.norm();
  Eigen::MatrixXd Jac(n, n);
  while (gn >= tol && res.iterations < max_iter) {
    for (int k = 0; k < n; ++k) {
      const double eps = 1e-6 * std::max(1.0, std::abs(x[k]));
      Vec xp = x, xm = x;
      xp[k] += eps;
      xm[k] -= eps;
      Jac.col(k) = (flat(action_gradient(prob, unflat(xp))) - flat(action_gradient(prob, unflat(xm)))) / (2.0 * eps);
    }
    Vec delta = Jac.partialPivLu().solve(-g);
    if (!delta.allFinite() || (Jac * delta + g).norm() > 1e-6 * gn)
      delta = Jac.completeOrthogonalDecomposition().solve(-g);
    double t = 1.0;
    bool accepted = false;
    while (t > 1e-10) {
      const Vec xt = x + t * delta;
      Vec gt;
      try {
        gt = flat(action_gradient(prob, unflat(xt)));
      } catch (const NumericalError&) {
        t *= 0.5;
        continue;
      }
      if (gt.norm() < gn) {
        x = xt;
        g = gt;
        gn = gt.norm();
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    ++res.iterations;
    if (!accepted) break;
  }
  res.u = unflat(x);
  res.grad_norm = gn;
  res.converged = gn < tol;
  return res;
}

// ---------------------------------------------------------------------------

SolveReport solve(const Problem& prob, const MountainPassConfig& cfg) {
  cfg.validate();
  const int m = prob.m;
  const int P = cfg.path_points;
  SolveReport rep{GridFunction::zeros(prob.T, m, prob.dim()), 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0, 0, false, false,
                  0.0, 0.0, 0.0, RimReport{0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0, 0, GridFunction::zeros(prob.T, m, prob.dim())},
                  {}, {}};
  std::ostringstream diag;

  rep.embedding_constant = embedding_constant(prob.G, prob.T, cfg.radial);
  rep.rho = rho(prob.rho0, rep.embedding_constant);
  const Endpoint ep = find_endpoint(prob, rep.rho, m, cfg);
  rep.endpoint_xi = ep.xi;
  rep.rim = verify_rim(prob, rep.rho, m, cfg);
  rep.alpha_rim = rep.rim.alpha;
  if (!(rep.alpha_rim > 0.0)) diag << "rim level alpha = " << format_double(rep.alpha_rim) << " is not positive; ";

  std::vector<GridFunction> path;
  path.reserve(static_cast<std::size_t>(P));
  for (int k = 0; k < P; ++k) path.push_back(ep.e * (static_cast<double>(k) / (P - 1)));
  path = equidistribute(path, prob.G, cfg.norm_tol);
  std::vector<double> J(static_cast<std::size_t>(P));
  for (int k = 0; k < P; ++k) J[static_cast<std::size_t>(k)] = action(prob, path[static_cast<std::size_t>(k)]);

  const SobolevPreconditioner precond(m, path.front().step());
  int imax = 1;
  for (int it = 0;; ++it) {
    imax = 1;
    for (int k = 2; k < P - 1; ++k)
      if (J[static_cast<std::size_t>(k)] > J[static_cast<std::size_t>(imax)]) imax = k;
    const double node_max = J[static_cast<std::size_t>(imax)];
    lift_to_ridge(prob, path, J, imax);
    GridFunction& u = path[static_cast<std::size_t>(imax)];
    const GridFunction g = action_gradient(prob, u);
    const double gn = frobenius(g);
    TraceRow row{it, imax, J[static_cast<std::size_t>(imax)], gn, 0.0, J[static_cast<std::size_t>(imax)] - node_max};
    rep.iterations = it;
    if (gn < std::max(cfg.grad_tol, cfg.switch_tol) || it >= cfg.max_outer_iters) {
      rep.trace.push_back(row);
      break;
    }
    const GridFunction d0 = cfg.metric == DescentMetric::euclidean
                               ? g * -1.0
                               : GridFunction(prob.T, precond.apply(g.values()) * -1.0);
    // Along the path the state already sits at the ridge maximum; descend
    // across the path only.
    const GridFunction tangent = path[static_cast<std::size_t>(imax + 1)] - path[static_cast<std::size_t>(imax - 1)];
    const double tt = dot(tangent, tangent);
    GridFunction d = tt > 0.0 ? d0 - tangent * (dot(d0, tangent) / tt) : d0;
    if (!(dot(g, d) < 0.0)) d = d0;
    const double slope = dot(g, d);
    const double J0 = J[static_cast<std::size_t>(imax)];
    double s = cfg.descent_step0;
    bool accepted = false;
    // A step is kept only if the re-equidistributed path has no state above
    // the current level; long steps otherwise drag interpolated states over
    // the ridge.
    while (s >= 1e-14) {
      try {
        const GridFunction trial = u + d * s;
        const double Jt = action(prob, trial);
        if (Jt <= J0 + cfg.armijo_c * s * slope) {
          std::vector<GridFunction> cand = path;
          cand[static_cast<std::size_t>(imax)] = trial;
          cand = equidistribute(cand, prob.G, cfg.norm_tol, false);
          std::vector<double> Jc(J.size());
          Jc.front() = J.front();
          Jc.back() = J.back();
          double top = -std::numeric_limits<double>::infinity();
          for (int k = 1; k < P - 1; ++k) {
            Jc[static_cast<std::size_t>(k)] = action(prob, cand[static_cast<std::size_t>(k)]);
            top = std::max(top, Jc[static_cast<std::size_t>(k)]);
          }
          if (top <= J0 + 1e-12 * std::abs(J0)) {
            path = std::move(cand);
            J = std::move(Jc);
            accepted = true;
            break;
          }
        }
      } catch (const NumericalError&) {
      }
      s *= 0.5;
    }
    row.step = accepted ? s : 0.0;
    rep.trace.push_back(row);
    if (!accepted) {
      rep.descent_stalled = true;
      diag << "path descent stalled at iteration " << it << " (step below 1e-14); ";
      break;
    }
  }
  rep.mp_level_c = J[static_cast<std::size_t>(imax)];

  // Polish two decades past the target so the reported norm is not a borderline pass.
  const NewtonResult nr =
      newton_polish(prob, path[static_cast<std::size_t>(imax)], 1e-2 * cfg.grad_tol, cfg.newton_max_iter);
  rep.newton_iterations = nr.iterations;
  rep.u_star = nr.u;
  rep.grad_norm = nr.grad_norm;
  rep.J_value = action(prob, rep.u_star);
  rep.el_residual = el_residual(prob, rep.u_star);
  rep.linf_bound_du = derivative(rep.u_star).max_abs();
  rep.converged = nr.grad_norm < cfg.grad_tol;
  if (!rep.converged)
    diag << "Newton polish stopped at gradient norm " << format_double(nr.grad_norm) << " after " << nr.iterations
         << " iterations; ";
  if (nr.converged && rep.J_value < rep.alpha_rim - 1e-6)
    diag << "polished point has J = " << format_double(rep.J_value) << " below the rim level; ";
  rep.diagnostics = diag.str();
  return rep;
}

CertReport certify(const Problem& prob, const GridFunction& u) {
  CertReport c;
  auto bounds = [&](const GridFunction& v, double& flux, double& du) {
    const GridFunction d = derivative(v);
    flux = 0.0;
    du = 0.0;
    for (int i = 0; i < d.size(); ++i) {
      const Vec s = d.at(i);
      du = std::max(du, s.norm());
      flux = std::max(flux, prob.G.gradient(s).norm());
    }
  };
  c.el_residual = el_residual(prob, u);
  c.J_value = action(prob, u);
  bounds(u, c.max_flux, c.max_du);
  if (c.el_residual < 1e-3) {
    const NewtonResult nr = newton_polish(prob, refine(u));
    c.refined = true;
    c.refined_el_residual = el_residual(prob, nr.u);
    c.refined_J = action(prob, nr.u);
    bounds(nr.u, c.refined_max_flux, c.refined_max_du);
    auto ratio = [](double a, double b) { return (a == 0.0 && b == 0.0) ? 1.0 : a / b; };
    c.du_ratio = ratio(c.refined_max_du, c.max_du);
    c.flux_ratio = ratio(c.refined_max_flux, c.max_flux);
    c.growth_flag = c.du_ratio > 1.05 || c.flux_ratio > 1.05;
  }
  return c;
}

}  // namespace orliczmp
