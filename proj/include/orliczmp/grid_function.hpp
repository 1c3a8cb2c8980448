#pragma once

#include "orliczmp/common.hpp"

#include <iosfwd>
#include <string>

namespace orliczmp {

enum class Location { nodes, cells };

/// u: [-T, T] -> R^N sampled at t_i = -T + i * 2T/m, i = 0..m-1. Node m is
/// node 0, so u(-T) = u(T) holds by construction. Cell-located functions
/// (derivatives) live at the midpoints t_i + h/2.
class GridFunction {
 public:
  GridFunction(double T, Values values, Location loc = Location::nodes);

  static GridFunction zeros(double T, int m, int dim);
  static GridFunction constant(double T, int m, const Vec& c);
  static GridFunction sample(double T, int m, int dim, const TimeVector& f);

  double half_period() const { return T_; }
  int size() const { return static_cast<int>(values_.rows()); }
  int dim() const { return static_cast<int>(values_.cols()); }
  double step() const { return 2.0 * T_ / size(); }
  Location location() const { return loc_; }
  double time(int i) const;

  Vec at(int i) const { return values_.row(i).transpose(); }
  const Values& values() const { return values_; }
  bool is_zero() const { return values_.isZero(0.0); }
  double max_abs() const;  // max_i |u_i|

  GridFunction operator+(const GridFunction& o) const;
  GridFunction operator-(const GridFunction& o) const;
  GridFunction operator*(double s) const;
  friend GridFunction operator*(double s, const GridFunction& u) { return u * s; }

 private:
  void require_compatible(const GridFunction& o) const;

  double T_;
  Values values_;
  Location loc_;
};

/// Cell slopes (u_{i+1} - u_i)/h with periodic wrap. Each component sums to
/// zero over a period.
GridFunction derivative(const GridFunction& u);

/// Piecewise-linear prolongation to 2m nodes.
GridFunction refine(const GridFunction& u);

// CSV with header "t,u1,..,uN" and optionally "du1,..,duN" (forward cell
// slopes). Numbers use the shortest round-trip representation.
void write_csv(std::ostream& os, const GridFunction& u, bool with_derivative = false);
void write_csv(const std::string& path, const GridFunction& u, bool with_derivative = false);

/// Reads the "t" and "u*" columns; other columns are ignored. T is recovered
/// from the first time stamp (-T) and checked against the spacing.
GridFunction read_csv(std::istream& is);
GridFunction read_csv(const std::string& path);

}  // namespace orliczmp
