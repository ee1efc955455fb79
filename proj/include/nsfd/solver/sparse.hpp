#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace nsfd {

/// Square sparse system A x = rhs, stored row-wise.
class SparseSystem {
 public:
  struct Entry {
    int col;
    double value;
  };

  explicit SparseSystem(int dimension = 0) : rhs(dimension, 0.0), rows_(dimension) {}

  int dimension() const { return static_cast<int>(rows_.size()); }
  const std::vector<Entry>& row(int r) const { return rows_[r]; }

  void add(int r, int c, double value) {
    if (r < 0 || r >= dimension() || c < 0 || c >= dimension()) throw std::out_of_range("SparseSystem::add");
    for (auto& e : rows_[r])
      if (e.col == c) {
        e.value += value;
        return;
      }
    rows_[r].push_back({c, value});
    std::sort(rows_[r].begin(), rows_[r].end(), [](const Entry& a, const Entry& b) { return a.col < b.col; });
  }

  double coefficient(int r, int c) const {
    for (const auto& e : rows_[r])
      if (e.col == c) return e.value;
    return 0;
  }

  void multiply(const std::vector<double>& x, std::vector<double>& y) const {
    y.assign(rows_.size(), 0.0);
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      double s = 0;
      for (const auto& e : rows_[r]) s += e.value * x[e.col];
      y[r] = s;
    }
  }

  /// Multiplies every row (and the rhs) by s.
  void scale(double s) {
    for (auto& r : rows_)
      for (auto& e : r) e.value *= s;
    for (auto& b : rhs) b *= s;
    row_scale *= s;
  }

  bool is_symmetric(double tol = 0) const {
    for (int r = 0; r < dimension(); ++r)
      for (const auto& e : rows_[r])
        if (std::abs(e.value - coefficient(e.col, r)) > tol) return false;
    return true;
  }

  /// |a_rr| >= sum of |a_rc| over c != r for every row.
  bool weakly_diagonally_dominant() const {
    for (int r = 0; r < dimension(); ++r) {
      double diag = 0, off = 0;
      for (const auto& e : rows_[r]) (e.col == r ? diag : off) += std::abs(e.value);
      if (diag < off * (1 - 1e-14)) return false;
    }
    return true;
  }

  /// Debug dump: "row,col,value" triples followed by "rhs,row,value" lines.
  void write_csv(std::ostream& os) const {
    os.precision(17);
    os << "kind,row,col,value\n";
    for (int r = 0; r < dimension(); ++r)
      for (const auto& e : rows_[r]) os << "a," << r << "," << e.col << "," << e.value << "\n";
    for (int r = 0; r < dimension(); ++r) os << "b," << r << ",," << rhs[r] << "\n";
  }

  std::vector<double> rhs;
  double row_scale = 1;

 private:
  std::vector<std::vector<Entry>> rows_;
};

}  // namespace nsfd
