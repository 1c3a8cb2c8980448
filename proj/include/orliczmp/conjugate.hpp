#pragma once

#include "orliczmp/gfunction.hpp"

#include <memory>

namespace orliczmp {

struct ConjugateOpts {
  double growth = 2.0;       // search radius expansion factor
  double radius_cap = 1e12;  // give up localizing beyond this radius
  double tol = 1e-9;         // relative gap between lower and upper bound
  int max_iter = 200;
  int localize_directions = 32;
};

struct ConjugateResult {
  double value = 0.0;        // <x*, y> - G(x*), a lower bound for G*(y)
  double upper_bound = 0.0;  // supporting-plane bound over the localization ball
  Vec argmax;
  double radius = 0.0;  // localization radius
  bool certified = false;
};

/// G*(y) = sup_x <x, y> - G(x) for convex superlinear G.
///
/// The maximizer is first localized by expanding a ball until its sampled
/// boundary values fall below an interior value; concavity of the objective
/// then confines the supremum to the ball. N = 1 refines by bisection on
/// G'(x) = |y|, higher dimensions by damped Newton ascent from several
/// starts. Throws NumericalError("conjugate not localized") when the ball
/// hits opts.radius_cap.
ConjugateResult conjugate_point(const GFunction& g, const Vec& y, const ConjugateOpts& opts = {});

double fenchel_conjugate(const GFunction& g, const Vec& y, const ConjugateOpts& opts = {});

/// G* as a GFunction; its gradient is the maximizer (Danskin).
GFunction numerical_conjugate(const GFunction& g, const ConjugateOpts& opts = {});

struct ConjugateTableOpts {
  int angles = 180;  // over [0, pi); N = 2 only
  int radii = 481;
  double r_min = 1e-6;
  double r_max = 1e6;
  ConjugateOpts conjugate;
};

/// G* tabulated along rays and interpolated linearly in (angle, log r, log G*).
/// Rays are filled lazily on first use. N = 1 and N = 2 are tabulated;
/// higher dimensions and radii outside the table fall through to direct
/// conjugation. The returned GFunction shares the cache.
GFunction tabulated_conjugate(const GFunction& g, const ConjugateTableOpts& opts = {});

// ---------------------------------------------------------------------------

struct RadialOpts {
  int directions = 2048;  // N >= 2
  int radii = 801;
  double r_min = 1e-6;
  double r_max = 1e6;
  double radius_cap = 1e15;
};

/// Lower convex envelope of r -> min over sampled unit directions of G(r w):
/// the greatest convex radial function below G at grid resolution.
class RadialMinorant {
 public:
  RadialMinorant(const GFunction& g, const RadialOpts& opts = {});

  double directional_min(double r) const;
  double envelope(double r) const;
  double max_radius() const { return radius_[hull_.back()]; }
  /// Inverse of the envelope; 0 maps to 0. Throws when s lies above the
  /// envelope at the largest grid radius.
  double inverse(double s) const;

 private:
  GFunction g_;
  std::vector<Vec> dirs_;
  std::vector<double> radius_;  // radius_[0] == 0
  std::vector<double> minimum_;
  std::vector<std::size_t> hull_;  // indices into radius_
};

/// A_G^{-1}(s), extending the radius grid by decades up to opts.radius_cap.
double radial_minorant_inverse(const GFunction& g, double s, const RadialOpts& opts = {});

}  // namespace orliczmp
