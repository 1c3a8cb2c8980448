#pragma once

#include "orliczmp/gfunction.hpp"
#include "orliczmp/grid_function.hpp"

#include <map>
#include <optional>
#include <string>

namespace orliczmp {

/// A time-dependent potential P(t, x) with an optional analytic x-gradient.
struct Potential {
  std::function<double(double, const Vec&)> value;
  std::function<Vec(double, const Vec&)> gradient;  // empty: central differences

  double operator()(double t, const Vec& x) const { return value(t, x); }
  Vec grad(double t, const Vec& x) const;

  static Potential zero();
};

/// Data of the periodic problem
///   d/dt ∇G(u̇) = V_x(t, u) + f(t),  u(-T) = u(T),  V = K - W,
/// together with the constants of the structural assumptions:
///   V >= b G - a on |x| <= rho0, liminf K/|x|^p >= b1, and
///   <V_x, x> <= (q_G^∞ + nu) K - mu W + kappa.
struct Problem {
  explicit Problem(GFunction g) : G(std::move(g)) {}

  std::string name = "custom";
  double T = 1.0;
  int m = 256;
  GFunction G;
  Potential K = Potential::zero();
  Potential W = Potential::zero();
  TimeVector f;       // empty means f ≡ 0
  TimeScalar a;       // empty means a ≡ 0
  double b = 2.0;
  double rho0 = 1.0;
  double b1 = 1.0;
  double p = 2.0;
  double mu = 0.0;
  double nu = 0.0;
  TimeScalar kappa;   // empty means kappa ≡ 0
  std::string note;   // free-form remarks attached by the problem library

  int dim() const { return G.dim(); }
  double V(double t, const Vec& x) const { return K(t, x) - W(t, x); }
  Vec V_x(double t, const Vec& x) const { return K.grad(t, x) - W.grad(t, x); }
  Vec force(double t) const;
  double a_at(double t) const { return a ? a(t) : 0.0; }
  double kappa_at(double t) const { return kappa ? kappa(t) : 0.0; }
  bool has_forcing() const { return static_cast<bool>(f); }

  /// Multiplies the forcing by s (f ≡ 0 stays zero).
  Problem with_forcing_scale(double s) const;
};

/// J(u) = ∫ G(u̇) + K(t, u) - W(t, u) + <f(t), u> dt. Cell slopes use the
/// midpoint rule; the potential and forcing use the trapezoid over [-T, T]
/// with u(T) = u(-T), so time-dependent data are sampled at both ends.
double action(const Problem& prob, const GridFunction& u);

/// Exact gradient of the discrete action with respect to the nodal values.
GridFunction action_gradient(const Problem& prob, const GridFunction& u);

/// max_i |J'(u)_i| / w_i with w_i the nodal quadrature weight: the discrete
/// strong-form residual of d/dt ∇G(u̇) - V_x(t, u) - f(t).
double el_residual(const Problem& prob, const GridFunction& u);
double el_residual(const GridFunction& gradient);

/// e(t) = xi (1 - |t|/(T + 1)) v sampled on m nodes. Requires xi > T + 1.
GridFunction tent_function(double xi, const Vec& v, double T, int m);

using ProblemParams = std::map<std::string, std::string>;

/// example1, example2, plaplacian_test. Unknown keys in params are rejected.
Problem builtin_problem(const std::string& name, const ProblemParams& params = {});
std::vector<std::string> builtin_problem_names();

}  // namespace orliczmp
