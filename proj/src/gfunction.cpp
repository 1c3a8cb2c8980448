#include "orliczmp/gfunction.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <sstream>

namespace orliczmp {

GFunction::GFunction(int dim, std::string name, std::vector<double> params, Eval eval, Grad grad)
    : dim_(dim), name_(std::move(name)), params_(std::move(params)), eval_(std::move(eval)), grad_(std::move(grad)) {
  if (dim_ < 1) throw std::invalid_argument("GFunction: dimension must be positive");
  if (!eval_) throw std::invalid_argument("GFunction: missing evaluation");
}

Vec GFunction::gradient(const Vec& x) const {
  if (grad_) return grad_(x);
  return fd_gradient(eval_, x);
}

std::string GFunction::label() const {
  std::string s = name_;
  for (std::size_t i = 0; i < params_.size(); ++i) s += (i == 0 ? ":" : ",") + format_double(params_[i]);
  return s;
}

// ---------------------------------------------------------------------------

namespace {

void require_params(const std::string& name, std::span<const double> params, std::size_t lo, std::size_t hi) {
  if (params.size() < lo || params.size() > hi) {
    std::ostringstream os;
    os << "G-function '" << name << "' expects " << lo;
    if (hi != lo) os << ".." << hi;
    os << " parameter(s), got " << params.size();
    throw std::invalid_argument(os.str());
  }
}

GFunction make_power(std::span<const double> params, int dim) {
  require_params("power", params, 1, 2);
  const double p = params[0];
  const double c = params.size() > 1 ? params[1] : 1.0;
  if (!(p > 1.0)) throw std::invalid_argument("power: exponent must exceed 1");
  if (!(c > 0.0)) throw std::invalid_argument("power: coefficient must be positive");
  return GFunction(
      dim, "power", {params.begin(), params.end()},
      [p, c](const Vec& x) { return c * std::pow(x.norm(), p); },
      [p, c](const Vec& x) -> Vec {
        const double r = x.norm();
        if (r == 0.0) return Vec::Zero(x.size());
        return (c * p * std::pow(r, p - 2.0)) * x;
      });
}

GFunction make_double_power(std::span<const double> params, int dim) {
  require_params("double_power", params, 2, 2);
  const double p1 = params[0], p2 = params[1];
  if (!(p1 > 1.0) || !(p2 > 1.0)) throw std::invalid_argument("double_power: exponents must exceed 1");
  return GFunction(
      dim, "double_power", {params.begin(), params.end()},
      [p1, p2](const Vec& x) {
        const double r = x.norm();
        return std::pow(r, p1) + std::pow(r, p2);
      },
      [p1, p2](const Vec& x) -> Vec {
        const double r = x.norm();
        if (r == 0.0) return Vec::Zero(x.size());
        return (p1 * std::pow(r, p1 - 2.0) + p2 * std::pow(r, p2 - 2.0)) * x;
      });
}

GFunction make_example1(std::span<const double> params, int dim) {
  require_params("example1", params, 0, 0);
  if (dim != 2) throw std::invalid_argument("example1 is two-dimensional");
  return GFunction(
      2, "example1", {},
      [](const Vec& z) {
        const double d = z[0] - z[1];
        const double d2 = d * d;
        return z[0] * z[0] + d2 * d2;
      },
      [](const Vec& z) -> Vec {
        const double d = z[0] - z[1];
        const double d3 = 4.0 * d * d * d;
        Vec g(2);
        g << 2.0 * z[0] + d3, -d3;
        return g;
      });
}

GFunction make_exp_degenerate(std::span<const double> params, int dim) {
  require_params("exp_degenerate", params, 0, 0);
  return GFunction(
      dim, "exp_degenerate", {},
      [](const Vec& x) {
        const double r = x.norm();
        if (r == 0.0) return 0.0;
        return r * r * std::exp(-1.0 / r);
      },
      [](const Vec& x) -> Vec {
        const double r = x.norm();
        if (r == 0.0) return Vec::Zero(x.size());
        return ((2.0 + 1.0 / r) * std::exp(-1.0 / r)) * x;
      });
}

using Factory = GFunction (*)(std::span<const double>, int);

const std::map<std::string, Factory>& registry() {
  static const std::map<std::string, Factory> r = {
      {"power", &make_power},
      {"double_power", &make_double_power},
      {"example1", &make_example1},
      {"exp_degenerate", &make_exp_degenerate},
  };
  return r;
}

}  // namespace

std::vector<std::string> builtin_gfunction_names() {
  std::vector<std::string> names;
  for (const auto& [k, v] : registry()) names.push_back(k);
  return names;
}

GFunction make_builtin_gfunction(const std::string& name, std::span<const double> params, int dim) {
  const auto it = registry().find(name);
  if (it == registry().end()) {
    std::string msg = "unknown G-function '" + name + "'; registered:";
    for (const auto& n : builtin_gfunction_names()) msg += " " + n;
    throw std::invalid_argument(msg);
  }
  return it->second(params, dim);
}

GFunction parse_gfunction(const std::string& spec, int dim) {
  const auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  std::vector<double> params;
  if (colon != std::string::npos) params = parse_double_list(spec.substr(colon + 1));
  if (dim == 0) dim = (name == "example1") ? 2 : 1;
  return make_builtin_gfunction(name, params, dim);
}

// ---------------------------------------------------------------------------
// Axioms

bool AxiomReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const AxiomCheck& c) { return c.pass; });
}

const AxiomCheck& AxiomReport::at(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return c;
  throw std::out_of_range("no axiom check named " + name);
}

namespace {

constexpr double kRelSlack = 1e-10;

// Records lhs <= rhs with a relative slack; violation is normalized by scale.
void record(AxiomCheck& check, double lhs, double rhs, double scale, const Vec& at) {
  const double excess = lhs - rhs;
  if (!std::isfinite(lhs) || !std::isfinite(rhs)) return;
  const double rel = excess / std::max(scale, 1e-300);
  if (excess > kRelSlack * scale + 1e-300 && rel > check.worst_violation) {
    check.pass = false;
    check.worst_violation = rel;
    check.witness = at;
  }
}

}  // namespace

AxiomReport check_axioms(const GFunction& g, const SamplingPlan& plan) {
  plan.validate();
  if (plan.r_min > 1e-3 || plan.r_max < 1e3)
    throw std::invalid_argument("check_axioms: sampling must span radii [1e-3, 1e3]");

  const int dim = g.dim();
  const auto dirs = plan.sphere_directions(dim);
  const auto radii = plan.radius_grid();

  auto named = [](const char* n) {
    AxiomCheck c;
    c.name = n;
    return c;
  };
  AxiomCheck zero = named("zero_at_origin"), finite = named("finite"), nonneg = named("nonnegative"),
             even = named("even"), midpoint = named("midpoint_convexity"), bracket = named("gradient_bracket"),
             superlinear = named("superlinear");

  const double g0 = g(Vec::Zero(dim));
  if (g0 != 0.0) {
    zero.pass = false;
    zero.worst_violation = std::abs(g0);
    zero.witness = Vec::Zero(dim);
  }

  auto mark_nonfinite = [&](const Vec& x, const char* what) {
    if (finite.pass) {
      finite.pass = false;
      finite.witness = x;
      finite.note = std::string("non-finite ") + what;
      finite.worst_violation = std::numeric_limits<double>::infinity();
    }
  };

  // Ray scans: finiteness, sign, evenness, growth.
  for (const auto& w : dirs) {
    std::vector<double> slope;
    slope.reserve(radii.size());
    for (double r : radii) {
      const Vec x = r * w;
      const double gx = g(x);
      const double gm = g(Vec(-x));
      if (!std::isfinite(gx) || !std::isfinite(gm)) {
        mark_nonfinite(x, "value");
        slope.push_back(std::numeric_limits<double>::quiet_NaN());
        continue;
      }
      if (!g.gradient(x).allFinite()) mark_nonfinite(x, "gradient");
      if (gx < 0.0 && -gx > nonneg.worst_violation) {
        nonneg.pass = false;
        nonneg.worst_violation = -gx;
        nonneg.witness = x;
      }
      record(even, std::abs(gx - gm), 0.0, std::max(std::abs(gx), std::abs(gm)), x);
      slope.push_back(gx / r);
    }
    // G(r w) / r must be nondecreasing and keep growing over the upper half.
    const std::size_t mid = slope.size() / 2;
    for (std::size_t k = 0; k + 1 < slope.size(); ++k) {
      if (std::isnan(slope[k]) || std::isnan(slope[k + 1])) continue;
      if (slope[k + 1] < slope[k] * (1.0 - 1e-12)) {
        const double v = (slope[k] - slope[k + 1]) / std::max(slope[k], 1e-300);
        if (v > superlinear.worst_violation) {
          superlinear.pass = false;
          superlinear.worst_violation = v;
          superlinear.witness = radii[k + 1] * w;
          superlinear.note = "G(x)/|x| decreases along a ray";
        }
      }
    }
    if (!std::isnan(slope.back()) && !std::isnan(slope[mid]) && !(slope.back() > 2.0 * slope[mid])) {
      superlinear.pass = false;
      if (superlinear.note.empty()) {
        superlinear.note = "G(x)/|x| does not grow over the outer half of the radii";
        superlinear.witness = radii.back() * w;
        superlinear.worst_violation = std::max(superlinear.worst_violation, 1.0);
      }
    }
  }

  // Random pairs for the convexity tests.
  std::mt19937_64 rng(plan.seed);
  std::uniform_int_distribution<std::size_t> pick_dir(0, dirs.size() - 1);
  std::uniform_int_distribution<std::size_t> pick_rad(0, radii.size() - 1);
  const std::size_t pairs = dirs.size() * radii.size();
  for (std::size_t k = 0; k < pairs; ++k) {
    const Vec x = radii[pick_rad(rng)] * dirs[pick_dir(rng)];
    const Vec y = radii[pick_rad(rng)] * dirs[pick_dir(rng)];
    const double gx = g(x), gy = g(y);
    const double gmid = g(Vec(0.5 * (x + y)));
    if (!std::isfinite(gx) || !std::isfinite(gy) || !std::isfinite(gmid)) {
      mark_nonfinite(x, "value at convexity sample");
      continue;
    }
    const double avg = 0.5 * (gx + gy);
    record(midpoint, gmid, avg, std::abs(avg), x);

    const double gxy = g(Vec(x + y));
    const double gx_y = g(Vec(x - y));
    const double inner = g.gradient(x).dot(y);
    const double scale = std::abs(gx) + std::abs(gxy) + std::abs(gx_y);
    record(bracket, gx - gx_y, inner, scale, x);
    record(bracket, inner, gxy - gx, scale, x);
  }

  AxiomReport report;
  report.checks = {zero, finite, nonneg, even, midpoint, bracket, superlinear};
  return report;
}

// ---------------------------------------------------------------------------
// Δ₂ and ∇₂

namespace {

bool levels_off(std::span<const double> xs, double rel) {
  const auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
  if (!std::isfinite(*hi)) return false;
  return (*hi - *lo) <= rel * std::max(std::abs(*hi), 1e-300);
}

}  // namespace

Delta2Report check_delta2(const GFunction& g, const SamplingPlan& plan) {
  constexpr double kMargin = 1.01;
  constexpr double kRatioCap = 1e6;
  constexpr double kTailFactor = 2.0;

  const auto dirs = plan.sphere_directions(g.dim());
  const auto radii = plan.radius_grid();
  const int n = static_cast<int>(radii.size());
  const int shells = plan.shells;

  Delta2Report rep;
  rep.max_radius = radii.back();
  rep.sample_count = static_cast<int>(dirs.size() * radii.size());
  rep.radius_ratio.resize(radii.size());

  for (int k = 0; k < n; ++k) {
    double worst = 0.0;
    for (const auto& w : dirs) {
      const Vec x = radii[k] * w;
      const double gx = g(x);
      const double g2x = g(Vec(2.0 * x));
      double ratio = g2x / gx;
      // G(x) = 0 away from the origin only happens through underflow; the
      // ratio is then treated as unbounded at that radius.
      if (!(gx > 0.0) || !std::isfinite(ratio)) ratio = std::numeric_limits<double>::infinity();
      worst = std::max(worst, ratio);
    }
    rep.radius_ratio[k] = worst;
  }

  const auto& R = rep.radius_ratio;
  const double sup_all = *std::max_element(R.begin(), R.end());
  const std::span<const double> inner(R.data(), static_cast<std::size_t>(shells));
  if (std::isfinite(sup_all) && sup_all <= kRatioCap && levels_off(inner, 1e-3)) {
    rep.holds = rep.holds_globally = true;
    rep.M1 = 0.0;
    rep.K1 = std::max(kMargin * sup_all, 2.0 * kMargin);
    return rep;
  }

  // Not global: the outer tail must level off, then M1 is the smallest radius
  // above which the ratio stays within kTailFactor of its tail value.
  const std::span<const double> outer(R.data() + (n - shells), static_cast<std::size_t>(shells));
  if (!levels_off(outer, 1e-3)) return rep;
  const double tail = R.back();
  int j = n;
  while (j > 0 && std::isfinite(R[j - 1]) && R[j - 1] <= kTailFactor * tail) --j;
  if (j > n - shells) return rep;
  double sup_tail = 0.0;
  for (int k = j; k < n; ++k) sup_tail = std::max(sup_tail, R[k]);
  rep.holds = true;
  rep.holds_globally = false;
  rep.M1 = radii[j];
  rep.K1 = std::max(kMargin * sup_tail, 2.0 * kMargin);
  return rep;
}

Nabla2Report check_nabla2(const GFunction& g, const SamplingPlan& plan, double K2_max) {
  constexpr double kMargin = 1.01;
  const auto dirs = plan.sphere_directions(g.dim());
  const auto radii = plan.radius_grid();
  const int n = static_cast<int>(radii.size());

  Nabla2Report rep;
  rep.K2_max = K2_max;
  rep.max_radius = radii.back();
  rep.sample_count = static_cast<int>(dirs.size() * radii.size());

  // Values on the base points are reused for every K2.
  std::vector<std::vector<double>> base(radii.size(), std::vector<double>(dirs.size()));
  for (int k = 0; k < n; ++k)
    for (std::size_t d = 0; d < dirs.size(); ++d) base[k][d] = g(Vec(radii[k] * dirs[d]));

  double tail_K = 0.0;
  int tail_j = n;
  for (int step = 1;; ++step) {
    const double K = std::exp2(step / 16.0);
    if (K > K2_max * (1.0 + 1e-12)) break;
    // tail index: smallest j with the inequality holding for all k >= j
    int j = n;
    while (j > 0) {
      const int k = j - 1;
      bool ok = true;
      for (std::size_t d = 0; d < dirs.size() && ok; ++d) {
        const double lhs = 2.0 * K * base[k][d];
        const double rhs = g(Vec(K * radii[k] * dirs[d]));
        ok = std::isfinite(lhs) && lhs <= rhs * (1.0 + 1e-12);
      }
      if (!ok) break;
      --j;
    }
    if (j == 0) {
      rep.holds = rep.holds_globally = true;
      rep.K2 = kMargin * K;
      rep.M2 = 0.0;
      return rep;
    }
    if (j <= n - plan.shells && tail_K == 0.0) {
      tail_K = K;
      tail_j = j;
    }
  }
  if (tail_K > 0.0) {
    rep.holds = true;
    rep.K2 = kMargin * tail_K;
    rep.M2 = radii[tail_j];
  } else {
    rep.K2 = K2_max;
  }
  return rep;
}

// ---------------------------------------------------------------------------

SimonenkoIndices simonenko_indices(const GFunction& g, const SamplingPlan& plan) {
  const auto dirs = plan.sphere_directions(g.dim());
  const auto radii = plan.radius_grid();
  const int n = static_cast<int>(radii.size());

  SimonenkoIndices out;
  out.p_G = std::numeric_limits<double>::infinity();
  out.q_G = -std::numeric_limits<double>::infinity();

  for (int k = 0; k < n; ++k) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const auto& w : dirs) {
      const Vec x = radii[k] * w;
      const double gx = g(x);
      if (!(gx > 0.0)) {
        std::ostringstream os;
        os << "simonenko_indices: G vanishes at |x| = " << radii[k] << " along direction (" << w.transpose()
           << "); not a G-function at this resolution";
        throw std::domain_error(os.str());
      }
      const double ratio = x.dot(g.gradient(x)) / gx;
      if (!std::isfinite(ratio)) {
        std::ostringstream os;
        os << "simonenko_indices: non-finite ratio at |x| = " << radii[k] << " along (" << w.transpose() << ")";
        throw std::domain_error(os.str());
      }
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
    }
    out.p_G = std::min(out.p_G, lo);
    out.q_G = std::max(out.q_G, hi);
    if (k >= n - plan.shells) out.shells.push_back({radii[k], lo, hi});
  }

  double smin = std::numeric_limits<double>::infinity(), smax = -smin;
  for (const auto& s : out.shells) {
    smin = std::min(smin, s.sup_ratio);
    smax = std::max(smax, s.sup_ratio);
  }
  out.q_G_inf = smax;
  if (smax - smin > 1e-3 * std::abs(smax)) {
    out.stabilized = false;
    out.warning = "outer shell suprema vary by more than 1e-3 relative; q_G_inf estimate not stabilized";
  }
  return out;
}

// ---------------------------------------------------------------------------

GrowthReport compare_growth(const GFunction& g1, const GFunction& g2, const SamplingPlan& plan, double K_max) {
  if (g1.dim() != g2.dim()) throw std::invalid_argument("compare_growth: dimension mismatch");
  const auto dirs = plan.sphere_directions(g1.dim());
  const auto radii = plan.radius_grid();
  const int n = static_cast<int>(radii.size());

  std::vector<std::vector<double>> lhs(radii.size(), std::vector<double>(dirs.size()));
  for (int k = 0; k < n; ++k)
    for (std::size_t d = 0; d < dirs.size(); ++d) lhs[k][d] = g1(Vec(radii[k] * dirs[d]));

  GrowthReport rep;
  for (int step = 0;; ++step) {
    const double K = std::exp2(step / 8.0);
    if (K > K_max * (1.0 + 1e-12)) break;
    int j = n;
    while (j > 0) {
      const int k = j - 1;
      bool ok = true;
      for (std::size_t d = 0; d < dirs.size() && ok; ++d) {
        const double rhs = g2(Vec(K * radii[k] * dirs[d]));
        ok = std::isfinite(lhs[k][d]) && lhs[k][d] <= rhs * (1.0 + 1e-12);
      }
      if (!ok) break;
      --j;
    }
    if (j <= n - plan.shells) {
      rep.holds = true;
      rep.K = K;
      rep.M = (j == 0) ? 0.0 : radii[j];
      return rep;
    }
  }
  for (int k = n - plan.shells; k < n; ++k)
    for (std::size_t d = 0; d < dirs.size(); ++d) {
      const double rhs = g2(Vec(K_max * radii[k] * dirs[d]));
      rep.worst_ratio = std::max(rep.worst_ratio, lhs[k][d] / rhs);
    }
  rep.K = K_max;
  return rep;
}

}  // namespace orliczmp
