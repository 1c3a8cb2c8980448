#pragma once

// Reference computations that do not go through the library code paths
// they check.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

using Vec = Eigen::VectorXd;

// sup_x <x, y> - g(x) on a uniform grid over [-R, R]^dim, then a finer grid
// around the best point.
inline double grid_conjugate(const std::function<double(const Vec&)>& g, const Vec& y, double R, int n) {
  const int dim = static_cast<int>(y.size());
  Vec best_x = Vec::Zero(dim);
  double best = -g(best_x);
  double lo = -R, step = 2.0 * R / (n - 1);
  Vec centre = Vec::Zero(dim);
  for (int pass = 0; pass < 4; ++pass) {
    Vec x(dim);
    if (dim == 1) {
      for (int i = 0; i < n; ++i) {
        x[0] = centre[0] + lo + i * step;
        const double v = x.dot(y) - g(x);
        if (v > best) best = v, best_x = x;
      }
    } else {
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          x[0] = centre[0] + lo + i * step;
          x[1] = centre[1] + lo + j * step;
          const double v = x.dot(y) - g(x);
          if (v > best) best = v, best_x = x;
        }
    }
    centre = best_x;
    lo = -2.0 * step;
    step = 4.0 * step / (n - 1);
  }
  return best;
}

// Conjugate of x^2 + (x - y)^4: with a = x, d = x - y the objective
// separates, G*(z) = (z1 + z2)^2 / 4 + (3/4) |z2| (|z2| / 4)^(1/3).
inline double example1_conjugate(double z1, double z2) {
  const double c = std::abs(z2);
  return 0.25 * (z1 + z2) * (z1 + z2) + 0.75 * c * std::cbrt(c / 4.0);
}

// Lower convex hull of points (r_i, m_i) with r increasing; returns the
// inverse of the piecewise-linear hull at s.
inline double convex_envelope_inverse(const std::vector<double>& r, const std::vector<double>& m, double s) {
  std::vector<std::size_t> hull;
  for (std::size_t i = 0; i < r.size(); ++i) {
    while (hull.size() >= 2) {
      const auto a = hull[hull.size() - 2], b = hull.back();
      const double cross = (r[b] - r[a]) * (m[i] - m[a]) - (m[b] - m[a]) * (r[i] - r[a]);
      if (cross <= 0.0)
        hull.pop_back();
      else
        break;
    }
    hull.push_back(i);
  }
  for (std::size_t k = 1; k < hull.size(); ++k) {
    const auto a = hull[k - 1], b = hull[k];
    if (m[b] >= s) return r[a] + (s - m[a]) * (r[b] - r[a]) / (m[b] - m[a]);
  }
  return std::numeric_limits<double>::quiet_NaN();
}

// A_G^{-1}(s) for a two-dimensional G from `directions` equally spaced
// angles and `radii` log-spaced radii in [r_lo, r_hi] (plus r = 0).
inline double dense_radial_inverse(const std::function<double(const Vec&)>& g, double s, int directions, int radii,
                                   double r_lo, double r_hi) {
  std::vector<double> r{0.0}, m{0.0};
  for (int k = 0; k < radii; ++k) {
    const double rk = r_lo * std::pow(r_hi / r_lo, double(k) / (radii - 1));
    double lo = std::numeric_limits<double>::infinity();
    for (int d = 0; d < directions; ++d) {
      const double th = std::numbers::pi * d / directions;  // G is even
      Vec x(2);
      x << rk * std::cos(th), rk * std::sin(th);
      lo = std::min(lo, g(x));
    }
    r.push_back(rk);
    m.push_back(lo);
  }
  return convex_envelope_inverse(r, m, s);
}

// Richardson-extrapolated central differences, step h = 1e-3 |x| per
// component, O(h^4).
inline Vec richardson_gradient(const std::function<double(const Vec&)>& f, const Vec& x) {
  Vec g(x.size());
  const double h = 1e-3 * std::max(x.norm(), 1e-300);
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    auto d = [&](double s) {
      Vec a = x, b = x;
      a[k] += s;
      b[k] -= s;
      return (f(a) - f(b)) / (2 * s);
    };
    g[k] = (4 * d(h / 2) - d(h)) / 3;
  }
  return g;
}

// Dense midpoint quadrature of f over [a, b].
inline double quadrature(const std::function<double(double)>& f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = 0.0, c = 0.0;  // Kahan
  for (int i = 0; i < n; ++i) {
    const double y = f(a + (i + 0.5) * h) * h - c;
    const double t = s + y;
    c = (t - s) - y;
    s = t;
  }
  return s;
}

// Discrete model of u'' = k(t) u - 2 w u^3 with G = v^2, K = k x^2,
// W = w x^4 on m periodic nodes over [-T, T], k(t) = 3 + cos(pi t / T).
// Gradient and Hessian written out by hand.
struct PLaplacian {
  double T = 1.0;
  int m = 256;
  double w = 1.0;

  double h() const { return 2.0 * T / m; }
  double k(int i) const { return 3.0 + std::cos(std::numbers::pi * (-T + i * h()) / T); }

  double action(const Vec& u) const {
    double s = 0.0;
    for (int i = 0; i < m; ++i) {
      const double d = (u[(i + 1) % m] - u[i]) / h();
      s += h() * (d * d + k(i) * u[i] * u[i] - w * std::pow(u[i], 4));
    }
    return s;
  }

  Vec gradient(const Vec& u) const {
    Vec g(m);
    for (int i = 0; i < m; ++i) {
      const double um = u[(i + m - 1) % m], up = u[(i + 1) % m];
      g[i] = 2.0 * (2.0 * u[i] - um - up) / h() + h() * (2.0 * k(i) * u[i] - 4.0 * w * std::pow(u[i], 3));
    }
    return g;
  }

  Eigen::MatrixXd hessian(const Vec& u) const {
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
      H(i, i) = 4.0 / h() + h() * (2.0 * k(i) - 12.0 * w * u[i] * u[i]);
      H(i, (i + 1) % m) -= 2.0 / h();
      H(i, (i + m - 1) % m) -= 2.0 / h();
    }
    return H;
  }

  // Damped Newton; returns the final iterate.
  Vec newton(Vec u, double tol = 1e-12, int max_iter = 100) const {
    for (int it = 0; it < max_iter; ++it) {
      const Vec g = gradient(u);
      const double gn = g.norm();
      if (gn < tol) break;
      const Vec step = hessian(u).fullPivLu().solve(g);
      double lambda = 1.0;
      while (lambda > 1e-8 && gradient(u - lambda * step).norm() >= gn) lambda *= 0.5;
      u -= lambda * step;
    }
    return u;
  }

  // L^2 + derivative L^2 norms for G = v^2 on the grid: ||u||_G + ||u'||_G
  // with ||v||_G = sqrt(h sum v^2).
  double sobolev_norm(const Vec& u) const {
    double a = 0.0, b = 0.0;
    for (int i = 0; i < m; ++i) {
      a += h() * u[i] * u[i];
      const double d = (u[(i + 1) % m] - u[i]) / h();
      b += h() * d * d;
    }
    return std::sqrt(a) + std::sqrt(b);
  }
};

// Luxemburg norm of nodal values under c|x|^p with trapezoid weight h:
// (c h sum |u_i|^p)^(1/p).
inline double power_norm(const std::vector<double>& u, double h, double p, double c = 1.0) {
  double s = 0.0;
  for (double v : u) s += c * h * std::pow(std::abs(v), p);
  return std::pow(s, 1.0 / p);
}

}  // namespace oracle
