#pragma once

#include "orliczmp/conjugate.hpp"
#include "orliczmp/functional.hpp"
#include "orliczmp/gfunction.hpp"

#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace orliczmp {

enum class Status { pass, fail, inconclusive, not_applicable };

std::string to_string(Status s);

/// Outcome of one sampled check. margin >= 0 means the inequality held on
/// every sample; witness is the worst sample (t is NaN when time plays no
/// role).
struct Verdict {
  std::string name;
  Status status = Status::inconclusive;
  double margin = std::numeric_limits<double>::quiet_NaN();
  double witness_t = std::numeric_limits<double>::quiet_NaN();
  Vec witness_x;
  std::string note;
  std::vector<std::string> details;  // e.g. the liminf shell table

  bool passed() const { return status == Status::pass; }
};

struct HypothesisOptions {
  SamplingPlan plan;             // G-function sampling (A1, indices, doubling conditions)
  int directions = 64;           // x-directions for the potential checks
  int time_nodes = 0;            // 0: use prob.m
  int near_radii = 32;           // radii in (0, rho0] for A3
  std::vector<double> shells{10.0, 100.0, 1000.0};  // A4
  double ar_r_min = 1e-3;        // A5 radius range; larger radii overflow exp-type potentials
  double ar_r_max = 10.0;
  int ar_radii = 40;
  double tol = 1e-9;
  ConjugateTableOpts conjugate;
  RadialOpts radial;
};

Verdict check_A1(const Problem& prob, const HypothesisOptions& opts = {});
/// K, W finite and their gradients consistent with central differences.
Verdict check_A2(const Problem& prob, const HypothesisOptions& opts = {});
/// min of V - bG + a over |x| <= rho0 and the time grid.
Verdict check_A3(const Problem& prob, const HypothesisOptions& opts = {});
/// Per-shell infima of K/|x|^p and W/max{K, G}; pass needs every shell to
/// clear b1 and 3, and |x|^p ≺ G.
Verdict check_A4(const Problem& prob, const HypothesisOptions& opts = {});
/// max of <V_x, x> - (q_G^∞ + nu) K + mu W - kappa. Throws
/// std::invalid_argument when mu <= q_G^∞ + nu. A negative kappa with the
/// inequality satisfied is reported as inconclusive.
Verdict check_A5(const Problem& prob, double q_G_inf, const HypothesisOptions& opts = {});
Verdict check_A6(const Problem& prob, const HypothesisOptions& opts = {});
/// ‖f‖ in the Orlicz space of G* is finite.
Verdict check_A7(const Problem& prob, const GFunction& g_star, const HypothesisOptions& opts = {});

/// min{1, b-1} (rho/2)^{q_G} for rho <= 2, (rho/2)^{p_G} otherwise.
double theorem1_rhs(double b, double rho, double p_G, double q_G);
double theorem2_rhs(double b, double rho);

/// Strict inequality lhs < rhs with margin 1e-9 * max(1, |lhs|, |rhs|).
Verdict evaluate_theorem1(double lhs, double b, double rho, double p_G, double q_G, bool regular_globally);
Verdict evaluate_theorem2(double lhs, double b, double rho);

/// R_{G*}(f) with the time trapezoid including both endpoints.
double forcing_modular(const Problem& prob, const GFunction& g_star);

struct HypothesisReport {
  std::vector<Verdict> verdicts;  // A1..A7, theorem1, theorem2
  SimonenkoIndices indices;
  Delta2Report delta2;
  Nabla2Report nabla2;
  double R_Gstar_f = 0.0;
  double integral_a = 0.0;
  double embedding_constant = 0.0;
  double rho = 0.0;
  double rhs_theorem1 = 0.0;
  double rhs_theorem2 = 0.0;
  bool theorem1_applicable = false;
  bool theorem2_applicable = false;

  const Verdict& at(const std::string& name) const;
};

HypothesisReport check_hypotheses(const Problem& prob, const HypothesisOptions& opts = {});

/// Shared pieces of the theorem checks, computed once per problem.
struct TheoremInputs {
  double R_Gstar_f = 0.0;
  double integral_a = 0.0;
  double embedding_constant = 0.0;
  double rho = 0.0;
  SimonenkoIndices indices;
  bool regular_globally = false;  // Δ₂ and ∇₂ both global
};

TheoremInputs theorem_inputs(const Problem& prob, const GFunction& g_star, const HypothesisOptions& opts = {});
Verdict check_theorem1(const TheoremInputs& in, double b);
Verdict check_theorem2(const TheoremInputs& in, double b);

}  // namespace orliczmp
