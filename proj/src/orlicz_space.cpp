#include "orliczmp/orlicz_space.hpp"

#include <cmath>
#include <string>

namespace orliczmp {

namespace {

double modular_scaled(const GFunction& g, const Values& v, double h, double scale) {
  std::vector<double> terms(static_cast<std::size_t>(v.rows()));
  Vec x(v.cols());
  for (Eigen::Index i = 0; i < v.rows(); ++i) {
    x = v.row(i).transpose() * scale;
    terms[static_cast<std::size_t>(i)] = g(x);
  }
  return h * pairwise_sum(terms);
}

void require_dim(const GFunction& g, int dim) {
  if (g.dim() != dim)
    throw std::invalid_argument("dimension mismatch: G has N=" + std::to_string(g.dim()) +
                                ", function has N=" + std::to_string(dim));
}

}  // namespace

double modular(const GFunction& g, const GridFunction& u) {
  require_dim(g, u.dim());
  return modular_scaled(g, u.values(), u.step(), 1.0);
}

double luxemburg_bisection(const std::function<double(double)>& modular_at, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("luxemburg: tol must be positive");
  auto probe = [&](double lambda) {
    const double v = modular_at(lambda);
    if (!std::isfinite(v))
      throw NumericalError("luxemburg: non-finite modular at lambda = " + format_double(lambda));
    return v;
  };
  const double cap = std::ldexp(1.0, 60);
  const double floor = std::ldexp(1.0, -1000);
  double lo, hi;
  if (probe(1.0) > 1.0) {
    lo = 1.0;
    hi = 2.0;
    while (probe(hi) > 1.0) {
      lo = hi;
      hi *= 2.0;
      if (hi > cap) throw NumericalError("luxemburg: bracket exceeded 2^60");
    }
  } else {
    hi = 1.0;
    lo = 0.5;
    while (probe(lo) <= 1.0) {
      hi = lo;
      lo *= 0.5;
      if (lo < floor) return 0.0;
    }
  }
  // invariant: F(lo) > 1 >= F(hi)
  while (hi - lo > tol * hi) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (probe(mid) > 1.0)
      lo = mid;
    else
      hi = mid;
  }
  return hi;
}

double luxemburg_norm(const GFunction& g, const GridFunction& u, double tol) {
  require_dim(g, u.dim());
  if (u.is_zero()) return 0.0;
  const double h = u.step();
  return luxemburg_bisection([&](double lambda) { return modular_scaled(g, u.values(), h, 1.0 / lambda); }, tol);
}

double sobolev_norm(const GFunction& g, const GridFunction& u, double tol) {
  return luxemburg_norm(g, u, tol) + luxemburg_norm(g, derivative(u), tol);
}

double joint_norm(const GFunction& g, const GridFunction& u, double tol) {
  require_dim(g, u.dim());
  if (u.is_zero()) return 0.0;
  const GridFunction du = derivative(u);
  const double h = u.step();
  return luxemburg_bisection(
      [&](double lambda) {
        return modular_scaled(g, u.values(), h, 1.0 / lambda) + modular_scaled(g, du.values(), h, 1.0 / lambda);
      },
      tol);
}

double embedding_constant(const GFunction& g, double T, const RadialOpts& opts) {
  if (!(T > 0.0)) throw std::invalid_argument("embedding_constant: T must be positive");
  return radial_minorant_inverse(g, 1.0 / (2.0 * T), opts) * std::max(1.0, 2.0 * T);
}

double rho(double rho0, double c) {
  if (!(rho0 > 0.0) || !(c > 0.0)) throw std::invalid_argument("rho: rho0 and c must be positive");
  return rho0 / c;
}

double holder_pairing(const GridFunction& u, const GridFunction& v) {
  if (u.size() != v.size() || u.dim() != v.dim() || u.half_period() != v.half_period())
    throw std::invalid_argument("holder_pairing: grids differ");
  std::vector<double> terms(static_cast<std::size_t>(u.size()));
  for (int i = 0; i < u.size(); ++i) terms[static_cast<std::size_t>(i)] = u.values().row(i).dot(v.values().row(i));
  return u.step() * pairwise_sum(terms);
}

double time_integral(double T, int m, const TimeScalar& f) {
  if (!(T > 0.0) || m < 1) throw std::invalid_argument("time_integral: need T > 0 and m >= 1");
  const double h = 2.0 * T / m;
  std::vector<double> terms(static_cast<std::size_t>(m) + 1);
  for (int i = 0; i <= m; ++i) {
    const double t = i == m ? T : -T + i * h;
    const double w = (i == 0 || i == m) ? 0.5 : 1.0;
    terms[static_cast<std::size_t>(i)] = w * f(t);
  }
  return h * pairwise_sum(terms);
}

double time_modular(const GFunction& g, double T, int m, const TimeVector& f) {
  return time_integral(T, m, [&](double t) { return g(f(t)); });
}

double time_luxemburg_norm(const GFunction& g, double T, int m, const TimeVector& f, double tol) {
  const double h = 2.0 * T / m;
  std::vector<Vec> samples;
  bool zero = true;
  for (int i = 0; i <= m; ++i) {
    samples.push_back(f(i == m ? T : -T + i * h));
    if (samples.back().size() != g.dim()) throw std::invalid_argument("time_luxemburg_norm: dimension mismatch");
    if (!samples.back().isZero(0.0)) zero = false;
  }
  if (zero) return 0.0;
  return luxemburg_bisection(
      [&](double lambda) {
        std::vector<double> terms(samples.size());
        for (std::size_t i = 0; i < samples.size(); ++i) {
          const double w = (i == 0 || i + 1 == samples.size()) ? 0.5 : 1.0;
          terms[i] = w * g(samples[i] / lambda);
        }
        return h * pairwise_sum(terms);
      },
      tol);
}

SpaceReport space_report(const GFunction& g, const GridFunction& u, double rho0, double tol, const RadialOpts& radial) {
  SpaceReport r;
  const GridFunction du = derivative(u);
  r.modular_u = modular(g, u);
  r.modular_du = modular(g, du);
  r.norm_u = luxemburg_norm(g, u, tol);
  r.norm_du = luxemburg_norm(g, du, tol);
  r.sobolev_norm = r.norm_u + r.norm_du;
  r.joint_norm = joint_norm(g, u, tol);
  r.embedding_constant = embedding_constant(g, u.half_period(), radial);
  r.rho = rho(rho0, r.embedding_constant);
  return r;
}

RimEstimate rim_estimate(const GFunction& g, const GridFunction& u, double p_G, double q_G, double tol) {
  RimEstimate e;
  const GridFunction du = derivative(u);
  e.rho1 = luxemburg_norm(g, du, tol);
  e.rho2 = luxemburg_norm(g, u, tol);
  e.rho = e.rho1 + e.rho2;
  e.modular_sum = modular(g, u) + modular(g, du);
  e.joint = joint_norm(g, u, tol);
  const bool big1 = e.rho1 > 1.0;
  const bool big2 = e.rho2 > 1.0;
  e.regime = !big1 && !big2 ? 1 : (!big1 ? 2 : (!big2 ? 3 : 4));
  e.index_bound = std::pow(e.rho1, big1 ? p_G : q_G) + std::pow(e.rho2, big2 ? p_G : q_G);
  e.power_bound = std::pow(0.5 * e.rho, e.regime == 1 ? q_G : p_G);
  e.joint_bound = e.rho > 2.0 ? 0.5 * e.rho : 0.0;
  return e;
}

}  // namespace orliczmp
