#pragma once

#include "orliczmp/conjugate.hpp"
#include "orliczmp/gfunction.hpp"
#include "orliczmp/grid_function.hpp"

namespace orliczmp {

/// R_G(u) = ∫ G(u) dt. Nodal functions use the periodic trapezoid rule,
/// cell functions the midpoint rule; both reduce to h * Σ G(u_i).
double modular(const GFunction& g, const GridFunction& u);

/// inf{λ > 0 : F(λ) <= 1} for a non-increasing continuous F, by bisection.
/// The bracket starts at λ = 1 and doubles or halves (capped at 2^60 and
/// 2^-1000); bisection stops once the bracket is narrower than tol * λ.
/// Returns the upper end of the final bracket.
double luxemburg_bisection(const std::function<double(double)>& modular_at, double tol = 1e-10);

double luxemburg_norm(const GFunction& g, const GridFunction& u, double tol = 1e-10);

/// ‖u‖_G + ‖u̇‖_G.
double sobolev_norm(const GFunction& g, const GridFunction& u, double tol = 1e-10);

/// inf{λ : R_G(u/λ) + R_G(u̇/λ) <= 1}.
double joint_norm(const GFunction& g, const GridFunction& u, double tol = 1e-10);

/// A_G^{-1}(1/(2T)) * max{1, 2T}, the constant in ‖u‖_∞ <= c ‖u‖_W.
double embedding_constant(const GFunction& g, double T, const RadialOpts& opts = {});

double rho(double rho0, double c);

/// ∫ <u, v> dt on a common grid.
double holder_pairing(const GridFunction& u, const GridFunction& v);

/// Trapezoid over the closed interval [-T, T] with m cells; the integrand is
/// evaluated at both t = -T and t = T. Used for time-dependent data that need
/// not be periodic.
double time_integral(double T, int m, const TimeScalar& f);

/// ∫ G(f(t)) dt for a time-dependent vector field, same quadrature as
/// time_integral.
double time_modular(const GFunction& g, double T, int m, const TimeVector& f);

double time_luxemburg_norm(const GFunction& g, double T, int m, const TimeVector& f, double tol = 1e-10);

struct SpaceReport {
  double modular_u = 0.0;
  double modular_du = 0.0;
  double norm_u = 0.0;
  double norm_du = 0.0;
  double sobolev_norm = 0.0;
  double joint_norm = 0.0;
  double embedding_constant = 0.0;
  double rho = 0.0;
};

SpaceReport space_report(const GFunction& g, const GridFunction& u, double rho0, double tol = 1e-10,
                         const RadialOpts& radial = {});

/// Modular lower bounds on the sphere ‖u‖_W = ρ, split by which partial
/// norms exceed one.
struct RimEstimate {
  double rho = 0.0;
  double rho1 = 0.0;  // ‖u̇‖_G
  double rho2 = 0.0;  // ‖u‖_G
  double modular_sum = 0.0;
  double joint = 0.0;
  int regime = 0;              // 1: both <= 1, 2: rho1 <= 1 < rho2, 3: rho2 <= 1 < rho1, 4: both > 1
  double index_bound = 0.0;    // rho1^e1 + rho2^e2 with e = q_G below one, p_G above
  double power_bound = 0.0;    // (rho/2)^{q_G} in regime 1, (rho/2)^{p_G} otherwise
  double joint_bound = 0.0;    // rho/2 when rho > 2 (via the joint norm), else 0
};

RimEstimate rim_estimate(const GFunction& g, const GridFunction& u, double p_G, double q_G, double tol = 1e-10);

}  // namespace orliczmp
