#include "orliczmp/conjugate.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

namespace orliczmp {

namespace {

double objective(const GFunction& g, const Vec& x, const Vec& y) { return x.dot(y) - g(x); }

struct Localized {
  double radius;
  Vec best;
  double best_value;
};

Localized localize(const GFunction& g, const Vec& y, const ConjugateOpts& opts) {
  SamplingPlan plan;
  plan.directions = opts.localize_directions;
  auto dirs = plan.sphere_directions(g.dim());
  dirs.push_back(y.normalized());

  Vec best = Vec::Zero(g.dim());
  double best_value = 0.0;
  for (double R = 1.0;; R *= opts.growth) {
    if (R > opts.radius_cap) throw NumericalError("conjugate not localized (superlinearity violated numerically)");
    double boundary = -std::numeric_limits<double>::infinity();
    Vec arg = best;
    for (const auto& w : dirs) {
      const Vec x = R * w;
      const double v = objective(g, x, y);
      if (std::isnan(v)) throw NumericalError("conjugate: objective is NaN during localization");
      if (v > boundary) {
        boundary = v;
        arg = x;
      }
    }
    if (boundary < best_value) return {R, best, best_value};
    best = arg;
    best_value = boundary;
  }
}

ConjugateResult refine_1d(const GFunction& g, const Vec& y, double R, const ConjugateOpts& opts) {
  const double s = std::abs(y[0]);
  const double sign = y[0] < 0.0 ? -1.0 : 1.0;
  auto slope = [&](double x) { return g.gradient(Vec::Constant(1, x))[0]; };
  auto phi = [&](double x) { return x * s - g(Vec::Constant(1, x)); };

  double hi = R;
  while (slope(hi) < s) {
    hi *= opts.growth;
    if (hi > opts.radius_cap) throw NumericalError("conjugate not localized (superlinearity violated numerically)");
  }
  double lo = 0.0;
  for (int it = 0; it < 400 && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (slope(mid) < s)
      lo = mid;
    else
      hi = mid;
  }
  const double flo = phi(lo), fhi = phi(hi);
  ConjugateResult res;
  res.radius = R;
  const double xbest = flo >= fhi ? lo : hi;
  res.value = std::max(flo, fhi);
  res.argmax = Vec::Constant(1, sign * xbest);
  // phi is concave with phi'(lo) >= 0 and its maximizer in [lo, hi]
  res.upper_bound = flo + std::max(0.0, s - slope(lo)) * (hi - lo);
  res.upper_bound = std::max(res.upper_bound, res.value);
  const double gap = res.upper_bound - res.value;
  res.certified = gap <= opts.tol * std::abs(res.value) + 1e-14 * xbest * s + 1e-300;
  return res;
}

Eigen::MatrixXd fd_hessian(const GFunction& g, const Vec& x) {
  const Eigen::Index n = x.size();
  Eigen::MatrixXd H(n, n);
  const double h = 1e-5 * std::max(x.norm(), 1e-6);
  Vec xp = x;
  for (Eigen::Index j = 0; j < n; ++j) {
    xp[j] = x[j] + h;
    const Vec gp = g.gradient(xp);
    xp[j] = x[j] - h;
    const Vec gm = g.gradient(xp);
    xp[j] = x[j];
    H.col(j) = (gp - gm) / (2.0 * h);
  }
  return 0.5 * (H + H.transpose());
}

// Damped Newton ascent on phi(x) = <x, y> - G(x).
Vec newton_ascent(const GFunction& g, const Vec& y, Vec x, const ConjugateOpts& opts) {
  const Eigen::Index n = x.size();
  double fx = objective(g, x, y);
  for (int it = 0; it < opts.max_iter; ++it) {
    const Vec gradG = g.gradient(x);
    const Vec grad = y - gradG;
    const double gnorm = grad.norm();
    if (gnorm <= 1e-15 * (y.norm() + gradG.norm()) + 1e-300) break;

    const Eigen::MatrixXd H = fd_hessian(g, x);
    double tau = 0.0;
    Vec d;
    for (int attempt = 0; attempt < 60; ++attempt) {
      Eigen::LLT<Eigen::MatrixXd> llt(H + tau * Eigen::MatrixXd::Identity(n, n));
      if (llt.info() == Eigen::Success) {
        d = llt.solve(grad);
        if (d.allFinite() && d.dot(grad) > 0.0) break;
      }
      tau = tau == 0.0 ? 1e-12 * (1.0 + H.norm()) : 4.0 * tau;
      d.resize(0);
    }
    if (d.size() == 0) d = grad;

    auto line_search = [&](const Vec& dir, double t) -> double {
      const double slope = grad.dot(dir);
      for (; t > 1e-14; t *= 0.5) {
        const double ft = objective(g, Vec(x + t * dir), y);
        if (std::isfinite(ft) && ft >= fx + 1e-4 * t * slope) return t;
      }
      return 0.0;
    };
    double t = line_search(d, 1.0);
    if (t == 0.0) {
      d = grad;
      t = line_search(d, 1.0 / std::max(1.0, H.norm()));
    }
    if (t == 0.0) break;
    const Vec step = t * d;
    x += step;
    const double fnew = objective(g, x, y);
    const bool stalled = step.norm() <= 1e-16 * (1.0 + x.norm());
    fx = fnew;
    if (stalled) break;
  }
  return x;
}

// Golden-section maximization of the concave function t -> phi(t w) on [0, R].
double ray_maximizer(const GFunction& g, const Vec& y, const Vec& w, double R) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = 0.0, b = R;
  double c = b - invphi * (b - a), d = a + invphi * (b - a);
  double fc = objective(g, Vec(c * w), y), fd = objective(g, Vec(d * w), y);
  for (int it = 0; it < 200 && b - a > 1e-15 * R; ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = objective(g, Vec(c * w), y);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = objective(g, Vec(d * w), y);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

ConjugateResult conjugate_point(const GFunction& g, const Vec& y, const ConjugateOpts& opts) {
  if (y.size() != g.dim()) throw std::invalid_argument("conjugate_point: dimension mismatch");
  if (!y.allFinite()) throw std::invalid_argument("conjugate_point: non-finite argument");
  ConjugateResult res;
  if (y.norm() == 0.0) {
    res.argmax = Vec::Zero(g.dim());
    res.certified = true;
    return res;
  }
  const Localized loc = localize(g, y, opts);
  if (g.dim() == 1) return refine_1d(g, y, loc.radius, opts);

  const Vec w = y.normalized();
  std::vector<Vec> starts;
  starts.push_back(loc.best);
  starts.push_back(ray_maximizer(g, y, w, loc.radius) * w);

  Vec best;
  double best_value = -std::numeric_limits<double>::infinity();
  for (const auto& s0 : starts) {
    const Vec x = newton_ascent(g, y, s0, opts);
    const double v = objective(g, x, y);
    if (v > best_value) {
      best_value = v;
      best = x;
    }
  }
  const Vec grad = y - g.gradient(best);
  res.value = best_value;
  res.argmax = best;
  res.radius = std::max(loc.radius, best.norm());
  res.upper_bound = best_value + std::max(0.0, grad.norm() * res.radius - grad.dot(best));
  const double gap = res.upper_bound - res.value;
  res.certified = gap <= opts.tol * std::abs(res.value) + 1e-14 * best.norm() * y.norm() + 1e-300;
  return res;
}

double fenchel_conjugate(const GFunction& g, const Vec& y, const ConjugateOpts& opts) {
  return conjugate_point(g, y, opts).value;
}

GFunction numerical_conjugate(const GFunction& g, const ConjugateOpts& opts) {
  return GFunction(
      g.dim(), g.name() + "*", g.params(), [g, opts](const Vec& y) { return conjugate_point(g, y, opts).value; },
      [g, opts](const Vec& y) -> Vec { return conjugate_point(g, y, opts).argmax; });
}

// ---------------------------------------------------------------------------

namespace {

class ConjugateTable {
 public:
  ConjugateTable(GFunction g, ConjugateTableOpts opts) : g_(std::move(g)), opts_(opts) {
    if (g_.dim() > 2) return;
    log_r_.resize(static_cast<std::size_t>(opts_.radii));
    const auto r = log_space(opts_.r_min, opts_.r_max, opts_.radii);
    for (std::size_t k = 0; k < r.size(); ++k) log_r_[k] = std::log(r[k]);
    rays_.resize(g_.dim() == 1 ? 1 : static_cast<std::size_t>(opts_.angles));
  }

  double operator()(const Vec& y) const {
    const double r = y.norm();
    if (r == 0.0) return 0.0;
    if (g_.dim() > 2 || r < opts_.r_min || r > opts_.r_max) return fenchel_conjugate(g_, y, opts_.conjugate);

    const double lr = std::log(r);
    const double step = (log_r_.back() - log_r_.front()) / (opts_.radii - 1);
    std::size_t k = static_cast<std::size_t>(std::clamp((lr - log_r_.front()) / step, 0.0, opts_.radii - 2.0));
    const double wr = std::clamp((lr - log_r_[k]) / (log_r_[k + 1] - log_r_[k]), 0.0, 1.0);

    auto ray_at = [&](std::size_t a) {
      const auto& vals = ray(a);
      return (1.0 - wr) * vals[k] + wr * vals[k + 1];
    };

    double lg;
    if (g_.dim() == 1) {
      lg = ray_at(0);
    } else {
      double th = std::atan2(y[1], y[0]);
      if (th < 0.0) th += std::numbers::pi;
      if (th >= std::numbers::pi) th -= std::numbers::pi;
      const double dth = std::numbers::pi / opts_.angles;
      const std::size_t a = std::min(static_cast<std::size_t>(th / dth), static_cast<std::size_t>(opts_.angles - 1));
      const double wa = (th - a * dth) / dth;
      const std::size_t b = (a + 1) % static_cast<std::size_t>(opts_.angles);
      lg = (1.0 - wa) * ray_at(a) + wa * ray_at(b);
    }
    if (!std::isfinite(lg)) return fenchel_conjugate(g_, y, opts_.conjugate);
    return std::exp(lg);
  }

 private:
  const std::vector<double>& ray(std::size_t a) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto& cell = rays_[a];
    if (cell.empty()) {
      Vec w(g_.dim());
      if (g_.dim() == 1) {
        w[0] = 1.0;
      } else {
        const double th = std::numbers::pi * a / opts_.angles;
        w << std::cos(th), std::sin(th);
      }
      // Radii whose maximizer cannot be localized stay NaN; lookups there
      // fall through to direct conjugation, which reports the failure.
      cell.assign(log_r_.size(), std::numeric_limits<double>::quiet_NaN());
      for (std::size_t k = 0; k < log_r_.size(); ++k) {
        double v = 0.0;
        try {
          v = fenchel_conjugate(g_, Vec(std::exp(log_r_[k]) * w), opts_.conjugate);
        } catch (const NumericalError&) {
          break;
        }
        cell[k] = v > 0.0 ? std::log(v) : -std::numeric_limits<double>::infinity();
      }
    }
    return cell;
  }

  GFunction g_;
  ConjugateTableOpts opts_;
  std::vector<double> log_r_;
  mutable std::mutex mu_;
  mutable std::vector<std::vector<double>> rays_;
};

}  // namespace

GFunction tabulated_conjugate(const GFunction& g, const ConjugateTableOpts& opts) {
  auto table = std::make_shared<const ConjugateTable>(g, opts);
  return GFunction(g.dim(), g.name() + "*", g.params(), [table](const Vec& y) { return (*table)(y); });
}

// ---------------------------------------------------------------------------

RadialMinorant::RadialMinorant(const GFunction& g, const RadialOpts& opts) : g_(g) {
  if (!(opts.r_min > 0.0) || !(opts.r_max > opts.r_min) || opts.radii < 2)
    throw std::invalid_argument("RadialMinorant: bad radius grid");
  const int dim = g.dim();
  if (dim == 1) {
    dirs_.push_back(Vec::Constant(1, 1.0));
    dirs_.push_back(Vec::Constant(1, -1.0));
  } else if (dim == 2) {
    // G is even, so half a circle covers every direction.
    for (int k = 0; k < opts.directions; ++k) {
      const double th = std::numbers::pi * k / opts.directions;
      Vec w(2);
      w << std::cos(th), std::sin(th);
      dirs_.push_back(w);
    }
  } else {
    SamplingPlan plan;
    plan.directions = opts.directions;
    dirs_ = plan.sphere_directions(dim);
  }

  radius_.push_back(0.0);
  for (double r : log_space(opts.r_min, opts.r_max, opts.radii)) radius_.push_back(r);
  minimum_.reserve(radius_.size());
  minimum_.push_back(0.0);
  for (std::size_t k = 1; k < radius_.size(); ++k) minimum_.push_back(directional_min(radius_[k]));

  // Lower convex hull (monotone chain; radii are already sorted).
  auto cross = [&](std::size_t o, std::size_t a, std::size_t b) {
    return (radius_[a] - radius_[o]) * (minimum_[b] - minimum_[o]) -
           (minimum_[a] - minimum_[o]) * (radius_[b] - radius_[o]);
  };
  for (std::size_t k = 0; k < radius_.size(); ++k) {
    if (!std::isfinite(minimum_[k])) break;
    while (hull_.size() >= 2 && cross(hull_[hull_.size() - 2], hull_.back(), k) <= 0.0) hull_.pop_back();
    hull_.push_back(k);
  }
}

double RadialMinorant::directional_min(double r) const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& w : dirs_) m = std::min(m, g_(Vec(r * w)));
  return m;
}

double RadialMinorant::envelope(double r) const {
  if (r <= 0.0) return 0.0;
  const double r_last = radius_[hull_.back()];
  if (r > r_last) return std::numeric_limits<double>::infinity();
  auto it = std::lower_bound(hull_.begin(), hull_.end(), r,
                             [&](std::size_t idx, double v) { return radius_[idx] < v; });
  if (it == hull_.begin()) return minimum_[*it];
  const std::size_t b = *it, a = *(it - 1);
  const double w = (r - radius_[a]) / (radius_[b] - radius_[a]);
  const double chord = (1.0 - w) * minimum_[a] + w * minimum_[b];
  // Between adjacent grid radii the envelope follows the directional minimum.
  if (b == a + 1) return std::min(chord, directional_min(r));
  return chord;
}

double RadialMinorant::inverse(double s) const {
  if (s <= 0.0) return 0.0;
  const std::size_t last = hull_.back();
  if (s > minimum_[last])
    throw NumericalError("radial minorant: level " + format_double(s) + " above the envelope at the largest radius");
  auto it = std::lower_bound(hull_.begin(), hull_.end(), s,
                             [&](std::size_t idx, double v) { return minimum_[idx] < v; });
  if (it == hull_.begin()) return radius_[*it];
  double lo = radius_[*(it - 1)], hi = radius_[*it];
  for (int iter = 0; iter < 200 && hi - lo > 2.0 * std::numeric_limits<double>::epsilon() * hi; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (envelope(mid) < s)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double radial_minorant_inverse(const GFunction& g, double s, const RadialOpts& opts) {
  if (!(s >= 0.0)) throw std::invalid_argument("radial_minorant_inverse: level must be nonnegative");
  if (s == 0.0) return 0.0;
  RadialOpts o = opts;
  for (;;) {
    const RadialMinorant rm(g, o);
    const double top = rm.envelope(rm.max_radius());
    if (s <= top) return rm.inverse(s);
    o.r_max *= 1e3;
    o.radii += 120;
    if (o.r_max > o.radius_cap) throw NumericalError("radial minorant: radius cap reached before level " + format_double(s));
  }
}

}  // namespace orliczmp
