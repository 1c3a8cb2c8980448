#include "orliczmp/sampling.hpp"

#include <boost/math/special_functions/erf.hpp>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace orliczmp {

namespace {

double radical_inverse(int index, int base) {
  double f = 1.0, r = 0.0;
  while (index > 0) {
    f /= base;
    r += f * (index % base);
    index /= base;
  }
  return r;
}

double normal_quantile(double p) { return std::sqrt(2.0) * boost::math::erf_inv(2.0 * p - 1.0); }

}  // namespace

std::vector<double> log_space(double lo, double hi, int n) {
  std::vector<double> out(static_cast<std::size_t>(n));
  if (n == 1) {
    out[0] = lo;
    return out;
  }
  const double a = std::log10(lo), b = std::log10(hi);
  for (int k = 0; k < n; ++k) out[k] = std::pow(10.0, a + (b - a) * k / (n - 1));
  out.front() = lo;
  out.back() = hi;
  return out;
}

void SamplingPlan::validate() const {
  if (directions < 1 || radii < 2) throw std::invalid_argument("sampling plan: need >= 1 direction and >= 2 radii");
  if (!(r_min > 0.0) || !(r_max > r_min)) throw std::invalid_argument("sampling plan: need 0 < r_min < r_max");
  if (shells < 1 || shells > radii) throw std::invalid_argument("sampling plan: shells out of range");
}

std::vector<double> SamplingPlan::radius_grid() const {
  validate();
  return log_space(r_min, r_max, radii);
}

std::vector<Vec> SamplingPlan::sphere_directions(int dim) const {
  validate();
  if (dim < 1) throw std::invalid_argument("sphere_directions: dim must be positive");
  std::vector<Vec> out;
  if (dim == 1) {
    out.push_back(Vec::Constant(1, 1.0));
    out.push_back(Vec::Constant(1, -1.0));
    return out;
  }
  const int n = directions;
  out.reserve(static_cast<std::size_t>(n));
  if (dim == 2) {
    for (int k = 0; k < n; ++k) {
      const double th = 2.0 * std::numbers::pi * k / n;
      Vec v(2);
      v << std::cos(th), std::sin(th);
      out.push_back(v);
    }
  } else if (dim == 3) {
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int k = 0; k < n; ++k) {
      const double z = 1.0 - 2.0 * (k + 0.5) / n;
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      Vec v(3);
      v << r * std::cos(golden * k), r * std::sin(golden * k), z;
      out.push_back(v);
    }
  } else if (dim == 4) {
    constexpr int bases[4] = {2, 3, 5, 7};
    for (int k = 0; k < n; ++k) {
      Vec v(4);
      for (int j = 0; j < 4; ++j) v[j] = normal_quantile(radical_inverse(k + 1, bases[j]));
      out.push_back(v.normalized());
    }
  } else {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    for (int k = 0; k < n; ++k) {
      Vec v(dim);
      do {
        for (int j = 0; j < dim; ++j) v[j] = nd(rng);
      } while (v.norm() < 1e-12);
      out.push_back(v.normalized());
    }
  }
  return out;
}

}  // namespace orliczmp
