#include "orliczmp/grid_function.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace orliczmp {

GridFunction::GridFunction(double T, Values values, Location loc) : T_(T), values_(std::move(values)), loc_(loc) {
  if (!(T_ > 0.0)) throw std::invalid_argument("GridFunction: T must be positive");
  if (values_.rows() < 4) throw std::invalid_argument("GridFunction: need at least 4 nodes");
  if (values_.cols() < 1) throw std::invalid_argument("GridFunction: dimension must be positive");
  if (!values_.allFinite()) throw std::invalid_argument("GridFunction: non-finite value");
}

GridFunction GridFunction::zeros(double T, int m, int dim) { return GridFunction(T, Values::Zero(m, dim)); }

GridFunction GridFunction::constant(double T, int m, const Vec& c) {
  Values v(m, c.size());
  for (int i = 0; i < m; ++i) v.row(i) = c.transpose();
  return GridFunction(T, std::move(v));
}

GridFunction GridFunction::sample(double T, int m, int dim, const TimeVector& f) {
  Values v(m, dim);
  const double h = 2.0 * T / m;
  for (int i = 0; i < m; ++i) {
    const Vec fi = f(-T + i * h);
    if (fi.size() != dim) throw std::invalid_argument("GridFunction::sample: dimension mismatch");
    v.row(i) = fi.transpose();
  }
  return GridFunction(T, std::move(v));
}

double GridFunction::time(int i) const {
  const double t = -T_ + i * step();
  return loc_ == Location::nodes ? t : t + 0.5 * step();
}

double GridFunction::max_abs() const {
  double m = 0.0;
  for (Eigen::Index i = 0; i < values_.rows(); ++i) m = std::max(m, values_.row(i).norm());
  return m;
}

void GridFunction::require_compatible(const GridFunction& o) const {
  if (o.size() != size() || o.dim() != dim() || o.T_ != T_ || o.loc_ != loc_)
    throw std::invalid_argument("GridFunction: incompatible grids");
}

GridFunction GridFunction::operator+(const GridFunction& o) const {
  require_compatible(o);
  return GridFunction(T_, values_ + o.values_, loc_);
}

GridFunction GridFunction::operator-(const GridFunction& o) const {
  require_compatible(o);
  return GridFunction(T_, values_ - o.values_, loc_);
}

GridFunction GridFunction::operator*(double s) const { return GridFunction(T_, values_ * s, loc_); }

GridFunction derivative(const GridFunction& u) {
  const int m = u.size();
  const double h = u.step();
  Values d(m, u.dim());
  for (int i = 0; i < m; ++i) d.row(i) = (u.values().row((i + 1) % m) - u.values().row(i)) / h;
  return GridFunction(u.half_period(), std::move(d), Location::cells);
}

GridFunction refine(const GridFunction& u) {
  const int m = u.size();
  Values v(2 * m, u.dim());
  for (int i = 0; i < m; ++i) {
    v.row(2 * i) = u.values().row(i);
    v.row(2 * i + 1) = 0.5 * (u.values().row(i) + u.values().row((i + 1) % m));
  }
  return GridFunction(u.half_period(), std::move(v), u.location());
}

// ---------------------------------------------------------------------------

void write_csv(std::ostream& os, const GridFunction& u, bool with_derivative) {
  const int n = u.dim();
  os << "t";
  for (int j = 0; j < n; ++j) os << ",u" << (j + 1);
  if (with_derivative)
    for (int j = 0; j < n; ++j) os << ",du" << (j + 1);
  os << "\n";
  const GridFunction du = derivative(u);
  for (int i = 0; i < u.size(); ++i) {
    os << format_double(u.time(i));
    for (int j = 0; j < n; ++j) os << "," << format_double(u.values()(i, j));
    if (with_derivative)
      for (int j = 0; j < n; ++j) os << "," << format_double(du.values()(i, j));
    os << "\n";
  }
}

void write_csv(const std::string& path, const GridFunction& u, bool with_derivative) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  write_csv(os, u, with_derivative);
}

GridFunction read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw std::invalid_argument("csv: empty input");
  std::vector<std::string> header;
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) header.push_back(cell);
  }
  if (header.empty() || header[0] != "t") throw std::invalid_argument("csv: first column must be 't'");
  std::vector<std::size_t> ucols;
  for (std::size_t j = 1; j < header.size(); ++j)
    if (header[j].size() > 1 && header[j][0] == 'u') ucols.push_back(j);
  if (ucols.empty()) throw std::invalid_argument("csv: no u columns");

  std::vector<double> times;
  std::vector<std::vector<double>> rows;
  int lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<double> cells;
    try {
      cells = parse_double_list(line);
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("csv line " + std::to_string(lineno) + ": " + e.what());
    }
    if (cells.size() != header.size())
      throw std::invalid_argument("csv line " + std::to_string(lineno) + ": wrong number of columns");
    times.push_back(cells[0]);
    std::vector<double> r;
    for (auto c : ucols) r.push_back(cells[c]);
    rows.push_back(std::move(r));
  }
  const int m = static_cast<int>(rows.size());
  if (m < 4) throw std::invalid_argument("csv: need at least 4 rows");
  const double T = -times.front();
  const double h = 2.0 * T / m;
  for (int i = 0; i < m; ++i)
    if (std::abs(times[i] - (-T + i * h)) > 1e-9 * std::max(1.0, T))
      throw std::invalid_argument("csv: time column is not the uniform periodic grid on [-T, T)");
  Values v(m, static_cast<Eigen::Index>(ucols.size()));
  for (int i = 0; i < m; ++i)
    for (std::size_t j = 0; j < ucols.size(); ++j) v(i, static_cast<Eigen::Index>(j)) = rows[i][j];
  return GridFunction(T, std::move(v));
}

GridFunction read_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open " + path);
  return read_csv(is);
}

}  // namespace orliczmp
