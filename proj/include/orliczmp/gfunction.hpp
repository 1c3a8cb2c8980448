#pragma once

#include "orliczmp/common.hpp"
#include "orliczmp/sampling.hpp"

#include <limits>
#include <span>
#include <string>
#include <vector>

namespace orliczmp {

/// An even convex function G: R^N -> [0, inf) with G(0) = 0 and superlinear
/// growth. The gradient is analytic when supplied, otherwise a central
/// finite difference with step 1e-6 * max(1, |x|).
class GFunction {
 public:
  using Eval = std::function<double(const Vec&)>;
  using Grad = std::function<Vec(const Vec&)>;

  GFunction(int dim, std::string name, std::vector<double> params, Eval eval, Grad grad = {});

  int dim() const { return dim_; }
  const std::string& name() const { return name_; }
  const std::vector<double>& params() const { return params_; }
  bool has_analytic_gradient() const { return static_cast<bool>(grad_); }

  double operator()(const Vec& x) const { return eval_(x); }
  Vec gradient(const Vec& x) const;

  /// "name:p1,p2" form accepted by parse_gfunction.
  std::string label() const;

 private:
  int dim_;
  std::string name_;
  std::vector<double> params_;
  Eval eval_;
  Grad grad_;
};

/// Built-in registry:
///   power(p[, c])          c |x|^p
///   double_power(p1, p2)   |x|^p1 + |x|^p2
///   example1               x^2 + (x - y)^4        (N = 2)
///   exp_degenerate         |x|^2 exp(-1/|x|), 0 at the origin
GFunction make_builtin_gfunction(const std::string& name, std::span<const double> params, int dim = 1);

/// Parses "name" or "name:p1,p2,...". A dim of 0 picks the natural dimension
/// (2 for example1, 1 otherwise).
GFunction parse_gfunction(const std::string& spec, int dim = 0);

std::vector<std::string> builtin_gfunction_names();

// ---------------------------------------------------------------------------
// Axioms

struct AxiomCheck {
  std::string name;
  bool pass = true;
  double worst_violation = 0.0;
  Vec witness;
  std::string note;
};

struct AxiomReport {
  std::vector<AxiomCheck> checks;

  bool all_pass() const;
  const AxiomCheck& at(const std::string& name) const;
};

/// Checks G(0) = 0, finiteness, nonnegativity, evenness, midpoint convexity,
/// the gradient bracket G(x) - G(x - y) <= <grad G(x), y> <= G(x + y) - G(x),
/// and superlinear growth along the sampled rays.
AxiomReport check_axioms(const GFunction& g, const SamplingPlan& plan = {});

// ---------------------------------------------------------------------------
// Doubling conditions

struct Delta2Report {
  double K1 = std::numeric_limits<double>::infinity();
  double M1 = 0.0;
  bool holds = false;
  bool holds_globally = false;
  int sample_count = 0;
  double max_radius = 0.0;
  std::vector<double> radius_ratio;  // max over directions of G(2x)/G(x), per radius
};

/// Δ₂: G(2x) <= K1 G(x) for |x| >= M1. K1 carries a 1% margin over the
/// sampled supremum. Global means the ratio stays finite and levels off over
/// the innermost shells.
Delta2Report check_delta2(const GFunction& g, const SamplingPlan& plan = {});

struct Nabla2Report {
  double K2 = std::numeric_limits<double>::infinity();
  double M2 = 0.0;
  bool holds = false;
  bool holds_globally = false;
  int sample_count = 0;
  double max_radius = 0.0;
  double K2_max = 1024.0;
};

/// ∇₂: G(x) <= G(K2 x) / (2 K2) for |x| >= M2; K2 is the smallest value on
/// the grid 2^(j/16) that works, times a 1% margin.
Nabla2Report check_nabla2(const GFunction& g, const SamplingPlan& plan = {}, double K2_max = 1024.0);

// ---------------------------------------------------------------------------
// Simonenko indices

struct IndexShell {
  double radius = 0.0;
  double inf_ratio = 0.0;
  double sup_ratio = 0.0;
};

struct SimonenkoIndices {
  double p_G = 0.0;
  double q_G = 0.0;
  double q_G_inf = 0.0;
  std::vector<IndexShell> shells;
  bool stabilized = true;
  std::string warning;
};

/// inf / sup / limsup of <x, grad G(x)> / G(x). The limsup is the supremum
/// over the outermost plan.shells radii. Throws std::domain_error when G
/// vanishes away from the origin.
SimonenkoIndices simonenko_indices(const GFunction& g, const SamplingPlan& plan = {});

// ---------------------------------------------------------------------------
// Growth comparison G1 ≺ G2

struct GrowthReport {
  bool holds = false;
  double K = 0.0;
  double M = 0.0;
  double worst_ratio = 0.0;  // max G1(x) / G2(K_max x) on the outer shells when it fails
};

/// Searches K on 2^(j/8) up to K_max for G1(x) <= G2(K x) on |x| >= M. The
/// relation must hold at least on the outermost plan.shells radii.
GrowthReport compare_growth(const GFunction& g1, const GFunction& g2, const SamplingPlan& plan = {},
                            double K_max = 1024.0);

}  // namespace orliczmp
