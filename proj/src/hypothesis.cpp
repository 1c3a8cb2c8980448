#include "orliczmp/hypothesis.hpp"

#include "orliczmp/orlicz_space.hpp"

#include <cmath>
#include <sstream>

namespace orliczmp {

std::string to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::inconclusive: return "inconclusive";
    case Status::not_applicable: return "not_applicable";
  }
  return "?";
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

int time_count(const Problem& prob, const HypothesisOptions& opts) {
  return opts.time_nodes > 0 ? opts.time_nodes : prob.m;
}

// Closed grid t_0 = -T, ..., t_n = T.
std::vector<double> time_samples(const Problem& prob, const HypothesisOptions& opts) {
  const int n = time_count(prob, opts);
  std::vector<double> ts(static_cast<std::size_t>(n) + 1);
  const double h = 2.0 * prob.T / n;
  for (int i = 0; i <= n; ++i) ts[static_cast<std::size_t>(i)] = i == n ? prob.T : -prob.T + i * h;
  return ts;
}

std::vector<Vec> directions(const Problem& prob, const HypothesisOptions& opts) {
  SamplingPlan plan = opts.plan;
  plan.directions = opts.directions;
  return plan.sphere_directions(prob.dim());
}

// Tracks the sample with the most negative normalized margin.
struct Worst {
  double normalized = std::numeric_limits<double>::infinity();
  double raw = std::numeric_limits<double>::infinity();
  double t = kNaN;
  Vec x;
  long samples = 0;
  long skipped = 0;

  void add(double margin, double scale, double t_, const Vec& x_) {
    ++samples;
    if (!std::isfinite(margin)) {
      ++skipped;
      return;
    }
    const double nm = margin / std::max(1.0, scale);
    if (nm < normalized) {
      normalized = nm;
      raw = margin;
      t = t_;
      x = x_;
    }
  }

  void fill(Verdict& v) const {
    v.margin = raw;
    v.witness_t = t;
    v.witness_x = x;
  }
};

std::string describe_point(double t, const Vec& x) {
  std::ostringstream os;
  os << "t = " << format_double(t) << ", x = (";
  for (Eigen::Index j = 0; j < x.size(); ++j) os << (j ? ", " : "") << format_double(x[j]);
  os << ")";
  return os.str();
}

}  // namespace

Verdict check_A1(const Problem& prob, const HypothesisOptions& opts) {
  Verdict v;
  v.name = "A1";
  const AxiomReport rep = check_axioms(prob.G, opts.plan);
  double worst = 0.0;
  std::string failed;
  for (const auto& c : rep.checks) {
    v.details.push_back(c.name + " " + (c.pass ? "pass" : "fail") + " worst_violation " +
                        format_double(c.worst_violation));
    if (!c.pass) {
      failed += (failed.empty() ? "" : ", ") + c.name;
      if (c.worst_violation > worst) {
        worst = c.worst_violation;
        v.witness_x = c.witness;
      }
    }
  }
  v.margin = -worst;
  v.status = rep.all_pass() ? Status::pass : Status::fail;
  v.note = rep.all_pass() ? "G-function axioms hold on the sampling plan" : "failed: " + failed;
  return v;
}

Verdict check_A2(const Problem& prob, const HypothesisOptions& opts) {
  Verdict v;
  v.name = "A2";
  const auto ts = time_samples(prob, opts);
  const auto dirs = directions(prob, opts);
  const auto radii = log_space(1e-2, 10.0, 12);
  Worst worst;
  long nonfinite = 0;
  for (double t : ts)
    for (double r : radii)
      for (const auto& w : dirs) {
        const Vec x = r * w;
        for (const Potential* P : {&prob.K, &prob.W}) {
          const double val = (*P)(t, x);
          const Vec g = P->grad(t, x);
          const Vec fd = fd_gradient([&](const Vec& z) { return (*P)(t, z); }, x);
          if (!std::isfinite(val) || !g.allFinite() || !fd.allFinite()) {
            ++nonfinite;
            if (nonfinite == 1) {
              v.witness_t = t;
              v.witness_x = x;
            }
            continue;
          }
          const double scale = std::max(1.0, std::max(g.norm(), fd.norm()));
          worst.add(1e-5 * scale - (g - fd).norm(), scale, t, x);
        }
      }
  if (nonfinite > 0) {
    v.status = Status::fail;
    v.margin = -std::numeric_limits<double>::infinity();
    v.note = std::to_string(nonfinite) + " non-finite potential or gradient values, first at " +
             describe_point(v.witness_t, v.witness_x);
    return v;
  }
  worst.fill(v);
  v.status = worst.normalized >= 0.0 ? Status::pass : Status::fail;
  v.note = v.passed() ? "K, W finite; gradients agree with central differences to 1e-5 relative"
                      : "gradient inconsistent with central differences at " + describe_point(worst.t, worst.x);
  return v;
}

Verdict check_A3(const Problem& prob, const HypothesisOptions& opts) {
  Verdict v;
  v.name = "A3";
  if (!(prob.b > 1.0)) {
    v.status = Status::fail;
    v.margin = prob.b - 1.0;
    v.note = "b must exceed 1";
    return v;
  }
  const auto ts = time_samples(prob, opts);
  const auto dirs = directions(prob, opts);
  std::vector<double> radii{0.0};
  for (double r : log_space(prob.rho0 * 1e-4, prob.rho0, opts.near_radii)) radii.push_back(r);
  Worst worst;
  for (double t : ts) {
    const double a = prob.a_at(t);
    for (double r : radii)
      for (const auto& w : dirs) {
        const Vec x = r * w;
        const double V = prob.V(t, x);
        const double bG = prob.b * prob.G(x);
        const double scale = std::max({std::abs(V), std::abs(bG), std::abs(a)});
        worst.add(V - bG + a, scale, t, x);
        if (r == 0.0) break;
      }
  }
  worst.fill(v);
  v.status = worst.normalized >= -opts.tol ? Status::pass : Status::fail;
  std::ostringstream os;
  os << "min of V - bG + a over |x| <= rho0 = " << format_double(prob.rho0) << " with b = " << format_double(prob.b);
  if (!v.passed()) os << "; violated at " << describe_point(worst.t, worst.x);
  if (worst.skipped) os << "; " << worst.skipped << " non-finite samples skipped";
  v.note = os.str();
  return v;
}

Verdict check_A4(const Problem& prob, const HypothesisOptions& opts) {
  Verdict v;
  v.name = "A4";
  if (!(prob.p > 1.0) || !(prob.b1 > 0.0)) {
    v.status = Status::fail;
    v.note = "need p > 1 and b1 > 0";
    return v;
  }
  const GFunction power = make_builtin_gfunction("power", std::vector<double>{prob.p}, prob.dim());
  const GrowthReport growth = compare_growth(power, prob.G, opts.plan);
  v.details.push_back("|x|^p < G: " + std::string(growth.holds ? "holds" : "fails") + " K = " +
                      format_double(growth.K) + " M = " + format_double(growth.M));

  const auto ts = time_samples(prob, opts);
  const auto dirs = directions(prob, opts);
  struct Shell {
    double radius, inf_k, inf_w;
    double t_k, t_w;
    Vec x_k, x_w;
    long skipped = 0;
  };
  std::vector<Shell> shells;
  for (double R : opts.shells) {
    Shell s{R, std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(), kNaN, kNaN, {}, {}};
    const double rp = std::pow(R, prob.p);
    for (double t : ts)
      for (const auto& w : dirs) {
        const Vec x = R * w;
        const double K = prob.K(t, x);
        const double W = prob.W(t, x);
        const double G = prob.G(x);
        const double rk = K / rp;
        const double rw = W / std::max(K, G);
        if (std::isnan(rk) || std::isnan(rw)) {
          ++s.skipped;
          continue;
        }
        if (rk < s.inf_k) {
          s.inf_k = rk;
          s.t_k = t;
          s.x_k = x;
        }
        if (rw < s.inf_w) {
          s.inf_w = rw;
          s.t_w = t;
          s.x_w = x;
        }
      }
    std::ostringstream os;
    os << "shell |x| = " << format_double(R) << ": inf K/|x|^p = " << format_double(s.inf_k)
       << ", inf W/max{K,G} = " << format_double(s.inf_w);
    if (s.skipped) os << " (" << s.skipped << " undefined samples)";
    v.details.push_back(os.str());
    shells.push_back(std::move(s));
  }

  auto clears_k = [&](const Shell& s) { return s.inf_k >= prob.b1 * (1.0 - opts.tol); };
  auto clears_w = [&](const Shell& s) { return s.inf_w > 3.0 * (1.0 + opts.tol); };
  const Shell& outer = shells.back();
  v.margin = std::min(outer.inf_k - prob.b1, outer.inf_w - 3.0);
  const bool k_outer_worse = outer.inf_k - prob.b1 <= outer.inf_w - 3.0;
  v.witness_t = k_outer_worse ? outer.t_k : outer.t_w;
  v.witness_x = k_outer_worse ? outer.x_k : outer.x_w;

  bool all_clear = growth.holds;
  for (const auto& s : shells) all_clear = all_clear && clears_k(s) && clears_w(s);
  if (all_clear) {
    v.status = Status::pass;
    v.note = "both liminf ratios clear their bounds on every shell";
    return v;
  }
  if (!growth.holds) {
    v.status = Status::fail;
    v.note = "|x|^p is not dominated by G on the sampled radii";
    return v;
  }
  // The outermost shell fails. Call it a failure when the offending
  // infimum is not growing with the radius, otherwise leave it open.
  auto not_growing = [&](auto member) {
    if (shells.size() < 2) return true;
    const Shell& inner = shells[shells.size() - 2];
    return outer.*member <= inner.*member * (1.0 + 1e-6) + 1e-300;
  };
  bool fail = false;
  std::string which;
  if (!clears_k(outer)) {
    which = "K/|x|^p";
    fail = fail || not_growing(&Shell::inf_k);
  }
  if (!clears_w(outer)) {
    which += which.empty() ? "W/max{K,G}" : " and W/max{K,G}";
    fail = fail || not_growing(&Shell::inf_w);
  }
  if (which.empty()) {
    v.status = Status::inconclusive;
    v.note = "an inner shell falls short while the outermost clears; shells have not stabilized";
    return v;
  }
  v.status = fail ? Status::fail : Status::inconclusive;
  v.note = (fail ? "liminf of " + which + " does not clear its bound and is not increasing across shells"
                 : "liminf of " + which + " below its bound on the outermost shell but still increasing") +
           "; worst at " + describe_point(v.witness_t, v.witness_x);
  return v;
}

Verdict check_A5(const Problem& prob, double q_G_inf, const HypothesisOptions& opts) {
  if (!(prob.mu > q_G_inf + prob.nu))
    throw std::invalid_argument("A5 precondition violated: mu = " + format_double(prob.mu) +
                                " must exceed q_G_inf + nu = " + format_double(q_G_inf + prob.nu));
  Verdict v;
  v.name = "A5";
  const auto ts = time_samples(prob, opts);
  const auto dirs = directions(prob, opts);
  std::vector<double> radii{0.0};
  for (double r : log_space(opts.ar_r_min, opts.ar_r_max, opts.ar_radii)) radii.push_back(r);
  const double qn = q_G_inf + prob.nu;
  Worst worst;
  double kappa_min = std::numeric_limits<double>::infinity();
  double kappa_min_t = kNaN;
  for (double t : ts) {
    const double kap = prob.kappa_at(t);
    if (kap < kappa_min) {
      kappa_min = kap;
      kappa_min_t = t;
    }
    for (double r : radii)
      for (const auto& w : dirs) {
        const Vec x = r * w;
        const double lhs = prob.V_x(t, x).dot(x);
        const double K = prob.K(t, x);
        const double W = prob.W(t, x);
        const double rhs = qn * K - prob.mu * W + kap;
        const double scale = std::max({std::abs(lhs), std::abs(qn * K), std::abs(prob.mu * W), std::abs(kap)});
        worst.add(rhs - lhs, scale, t, x);
        if (r == 0.0) break;
      }
  }
  worst.fill(v);
  const bool holds = worst.normalized >= -opts.tol;
  std::ostringstream os;
  os << "max of <V_x,x> - (q_G_inf + nu) K + mu W - kappa with q_G_inf = " << format_double(q_G_inf)
     << ", nu = " << format_double(prob.nu) << ", mu = " << format_double(prob.mu);
  if (worst.skipped) os << "; " << worst.skipped << " non-finite samples skipped";
  if (!holds) {
    v.status = Status::fail;
    os << "; violated at " << describe_point(worst.t, worst.x);
  } else if (kappa_min < 0.0) {
    v.status = Status::inconclusive;
    os << "; kappa caveat: the inequality holds with the given kappa, but kappa must be nonnegative and kappa("
       << format_double(kappa_min_t) << ") = " << format_double(kappa_min)
       << "; its positive part max(kappa, 0) also satisfies the inequality";
  } else {
    v.status = Status::pass;
  }
  v.note = os.str();
  return v;
}

Verdict check_A6(const Problem& prob, const HypothesisOptions& opts) {
  Verdict v;
  v.name = "A6";
  const int n = time_count(prob, opts);
  const Vec zero = Vec::Zero(prob.dim());
  const double I = time_integral(prob.T, n, [&](double t) { return prob.V(t, zero); });
  const double A = time_integral(prob.T, n, [&](double t) { return std::abs(prob.V(t, zero)); });
  const double allowed = opts.tol * std::max(1.0, A);
  v.margin = allowed - std::abs(I);
  v.status = std::abs(I) <= allowed ? Status::pass : Status::fail;
  v.note = "integral of V(t,0) = " + format_double(I);
  return v;
}

Verdict check_A7(const Problem& prob, const GFunction& g_star, const HypothesisOptions& opts) {
  Verdict v;
  v.name = "A7";
  if (!prob.has_forcing()) {
    v.status = Status::pass;
    v.margin = 0.0;
    v.note = "f = 0";
    return v;
  }
  try {
    const double norm = time_luxemburg_norm(g_star, prob.T, time_count(prob, opts),
                                            [&](double t) { return prob.force(t); }, 1e-8);
    v.status = Status::pass;
    v.margin = 0.0;
    v.note = "Luxemburg norm of f under G* = " + format_double(norm);
  } catch (const std::exception& e) {
    v.status = Status::fail;
    v.note = std::string("norm of f under G* did not converge: ") + e.what();
  }
  return v;
}

// ---------------------------------------------------------------------------

double theorem1_rhs(double b, double rho, double p_G, double q_G) {
  return std::min(1.0, b - 1.0) * std::pow(0.5 * rho, rho <= 2.0 ? q_G : p_G);
}

double theorem2_rhs(double b, double rho) { return std::min(1.0, b - 1.0) * 0.5 * rho; }

namespace {

Verdict strict_less(std::string name, double lhs, double rhs) {
  Verdict v;
  v.name = std::move(name);
  v.margin = rhs - lhs;
  const double slack = 1e-9 * std::max({1.0, std::abs(lhs), std::abs(rhs)});
  v.status = v.margin > slack ? Status::pass : Status::fail;
  v.note = "R_G*(f) + int a = " + format_double(lhs) + " vs " + format_double(rhs);
  return v;
}

}  // namespace

Verdict evaluate_theorem1(double lhs, double b, double rho, double p_G, double q_G, bool regular_globally) {
  if (!regular_globally) {
    Verdict v;
    v.name = "theorem1";
    v.status = Status::not_applicable;
    v.note = "G does not satisfy both doubling conditions globally on the sampled radii";
    return v;
  }
  Verdict v = strict_less("theorem1", lhs, theorem1_rhs(b, rho, p_G, q_G));
  v.note += rho <= 2.0 ? " (exponent q_G)" : " (exponent p_G)";
  return v;
}

Verdict evaluate_theorem2(double lhs, double b, double rho) {
  if (!(rho >= 2.0)) {
    Verdict v;
    v.name = "theorem2";
    v.status = Status::not_applicable;
    v.note = "needs rho >= 2, rho = " + format_double(rho);
    return v;
  }
  return strict_less("theorem2", lhs, theorem2_rhs(b, rho));
}

double forcing_modular(const Problem& prob, const GFunction& g_star) {
  if (!prob.has_forcing()) return 0.0;
  return time_modular(g_star, prob.T, prob.m, [&](double t) { return prob.force(t); });
}

TheoremInputs theorem_inputs(const Problem& prob, const GFunction& g_star, const HypothesisOptions& opts) {
  TheoremInputs in;
  const int n = time_count(prob, opts);
  in.R_Gstar_f =
      prob.has_forcing() ? time_modular(g_star, prob.T, n, [&](double t) { return prob.force(t); }) : 0.0;
  in.integral_a = prob.a ? time_integral(prob.T, n, prob.a) : 0.0;
  in.embedding_constant = embedding_constant(prob.G, prob.T, opts.radial);
  in.rho = rho(prob.rho0, in.embedding_constant);
  in.indices = simonenko_indices(prob.G, opts.plan);
  in.regular_globally = check_delta2(prob.G, opts.plan).holds_globally && check_nabla2(prob.G, opts.plan).holds_globally;
  return in;
}

Verdict check_theorem1(const TheoremInputs& in, double b) {
  return evaluate_theorem1(in.R_Gstar_f + in.integral_a, b, in.rho, in.indices.p_G, in.indices.q_G,
                           in.regular_globally);
}

Verdict check_theorem2(const TheoremInputs& in, double b) {
  return evaluate_theorem2(in.R_Gstar_f + in.integral_a, b, in.rho);
}

const Verdict& HypothesisReport::at(const std::string& name) const {
  for (const auto& v : verdicts)
    if (v.name == name) return v;
  throw std::out_of_range("no verdict named " + name);
}

HypothesisReport check_hypotheses(const Problem& prob, const HypothesisOptions& opts) {
  HypothesisReport rep;
  const GFunction g_star = tabulated_conjugate(prob.G, opts.conjugate);

  rep.delta2 = check_delta2(prob.G, opts.plan);
  rep.nabla2 = check_nabla2(prob.G, opts.plan);
  const TheoremInputs in = theorem_inputs(prob, g_star, opts);

  rep.indices = in.indices;
  rep.R_Gstar_f = in.R_Gstar_f;
  rep.integral_a = in.integral_a;
  rep.embedding_constant = in.embedding_constant;
  rep.rho = in.rho;
  rep.rhs_theorem1 = theorem1_rhs(prob.b, in.rho, in.indices.p_G, in.indices.q_G);
  rep.rhs_theorem2 = theorem2_rhs(prob.b, in.rho);
  rep.theorem1_applicable = in.regular_globally;
  rep.theorem2_applicable = in.rho >= 2.0;

  rep.verdicts.push_back(check_A1(prob, opts));
  rep.verdicts.push_back(check_A2(prob, opts));
  rep.verdicts.push_back(check_A3(prob, opts));
  rep.verdicts.push_back(check_A4(prob, opts));
  try {
    rep.verdicts.push_back(check_A5(prob, in.indices.q_G_inf, opts));
  } catch (const std::invalid_argument& e) {
    Verdict v;
    v.name = "A5";
    v.status = Status::fail;
    v.note = e.what();
    rep.verdicts.push_back(v);
  }
  rep.verdicts.push_back(check_A6(prob, opts));
  rep.verdicts.push_back(check_A7(prob, g_star, opts));
  rep.verdicts.push_back(check_theorem1(in, prob.b));
  rep.verdicts.push_back(check_theorem2(in, prob.b));
  return rep;
}

}  // namespace orliczmp
