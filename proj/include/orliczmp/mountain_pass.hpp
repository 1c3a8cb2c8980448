#pragma once

#include "orliczmp/conjugate.hpp"
#include "orliczmp/functional.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace orliczmp {

enum class DescentMetric { euclidean, sobolev };

struct MountainPassConfig {
  int path_points = 32;
  int max_outer_iters = 400;
  double descent_step0 = 1.0;
  double armijo_c = 1e-4;
  double grad_tol = 1e-8;     // Newton polish target on the nodal gradient norm
  double switch_tol = 1e-3;   // path descent hands over to Newton below this gradient norm
  int rim_samples = 200;
  double xi_growth = 1.5;
  std::uint64_t seed = 42;
  DescentMetric metric = DescentMetric::sobolev;
  int newton_max_iter = 60;
  double norm_tol = 1e-8;     // Luxemburg tolerance for path and rim norms
  RadialOpts radial;
  ConjugateTableOpts conjugate;

  void validate() const;
};

struct Endpoint {
  GridFunction e;
  double xi = 0.0;
  Vec direction;
  double action = 0.0;
  double sobolev_norm = 0.0;
};

/// Grows xi from max(T + 2, 2) by cfg.xi_growth over the directions ±e_i
/// (and the diagonals when N = 2) until the tent has ‖e‖_W > rho and
/// J(e) < 0. Throws NumericalError("no negative endpoint found") past 2^30.
Endpoint find_endpoint(const Problem& prob, double rho, int m, const MountainPassConfig& cfg = {});

struct RimReport {
  double rho = 0.0;
  double sampled_min = 0.0;      // min of J over the sampled rim functions
  double theorem1_bound = 0.0;   // min{1,b-1}(rho/2)^{q_G or p_G} - R_G*(f) - int a; NaN if not applicable
  double theorem2_bound = 0.0;   // min{1,b-1} rho/2 - R_G*(f) - int a; NaN unless rho >= 2
  double analytic_bound = 0.0;   // the larger applicable bound, NaN if none applies
  double alpha = 0.0;            // analytic_bound when positive, else sampled_min
  int samples = 0;
  int skipped = 0;
  GridFunction worst;            // rim sample attaining sampled_min
};

/// Samples cfg.rim_samples random trigonometric polynomials (mode k scaled
/// by (1 + k)^-2), rescaled to ‖u‖_W = rho, and compares min J with the
/// analytic rim bounds.
RimReport verify_rim(const Problem& prob, double rho, int m, const MountainPassConfig& cfg = {});

struct NewtonResult {
  GridFunction u;
  double grad_norm = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Damped Newton on J'(u) = 0. The Jacobian is assembled column by column
/// from central differences of action_gradient; steps are halved until the
/// gradient norm decreases.
NewtonResult newton_polish(const Problem& prob, const GridFunction& u0, double tol = 1e-8, int max_iter = 60);

struct TraceRow {
  int iter = 0;
  int max_index = 0;
  double J_max = 0.0;
  double grad_norm = 0.0;
  double step = 0.0;
  // J_max minus the largest state value before the ridge lift; the gap
  // between the polyline and its vertices.
  double ridge_gain = 0.0;
};

struct SolveReport {
  GridFunction u_star;
  double J_value = 0.0;
  double grad_norm = 0.0;
  double el_residual = 0.0;
  double alpha_rim = 0.0;
  double mp_level_c = 0.0;
  double endpoint_xi = 0.0;
  int iterations = 0;
  int newton_iterations = 0;
  bool converged = false;
  bool descent_stalled = false;
  double linf_bound_du = 0.0;
  double rho = 0.0;
  double embedding_constant = 0.0;
  RimReport rim;
  std::vector<TraceRow> trace;
  std::string diagnostics;
};

SolveReport solve(const Problem& prob, const MountainPassConfig& cfg = {});

struct CertReport {
  double el_residual = 0.0;
  double max_flux = 0.0;   // max_t |∇G(u̇(t))|
  double max_du = 0.0;     // max_t |u̇(t)|
  double J_value = 0.0;
  bool refined = false;    // the 2m comparison was run
  double refined_el_residual = 0.0;
  double refined_max_flux = 0.0;
  double refined_max_du = 0.0;
  double refined_J = 0.0;
  double du_ratio = 1.0;   // refined / original, 0/0 counted as 1
  double flux_ratio = 1.0;
  bool growth_flag = false;  // either ratio exceeds 1.05
};

/// Residual and W^{1,∞} bounds of a candidate solution. When u is nearly
/// critical (residual < 1e-3) it is prolonged to 2m nodes, re-polished and
/// the bounds are compared.
CertReport certify(const Problem& prob, const GridFunction& u);

}  // namespace orliczmp
