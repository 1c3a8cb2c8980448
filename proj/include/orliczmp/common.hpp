#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace orliczmp {

using Vec = Eigen::VectorXd;

// Row-major m x N storage so that each grid node is a contiguous point.
using Values = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using TimeScalar = std::function<double(double)>;
using TimeVector = std::function<Vec(double)>;

class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Pairwise (cascade) summation. The split points depend only on the length,
// so the result is reproducible bit-for-bit for a given input order.
double pairwise_sum(std::span<const double> xs);

// Central finite-difference gradient with step h = 1e-6 * max(1, |x|).
Vec fd_gradient(const std::function<double(const Vec&)>& f, const Vec& x);

// Shortest round-trip decimal representation, locale independent.
std::string format_double(double v);

// Parses a comma separated list of doubles ("1,0.5,-2").
std::vector<double> parse_double_list(const std::string& text);

}  // namespace orliczmp
