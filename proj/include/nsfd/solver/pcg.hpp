#pragma once

// Jacobi-preconditioned conjugate gradients for the pressure system.

#include "nsfd/core/errors.hpp"
#include "nsfd/solver/sparse.hpp"

#include <cmath>
#include <numeric>
#include <optional>
#include <vector>

namespace nsfd {

struct SolveResult {
  std::vector<double> x;
  int iterations = 0;
  double residual = 0;  // ||A x - b||_2 of the returned x
};

struct SolverOptions {
  double tol = 1e-12;
  std::optional<int> max_iter;  // default 10 * dimension
};

inline double norm2(const std::vector<double>& a) { return std::sqrt(std::inner_product(a.begin(), a.end(), a.begin(), 0.0)); }

/// Solves A x = b to ||A x - b|| <= tol * max(1, ||b||). A must be symmetric
/// with positive diagonal. Throws SolverError with the best residual seen if
/// the bound is not met within max_iter iterations.
inline SolveResult solve(const SparseSystem& A, const SolverOptions& opts = {}) {
  if (!(opts.tol > 0)) throw ConfigError("solver tolerance must be positive");
  const int n = A.dimension();
  const int max_iter = opts.max_iter.value_or(10 * n);
  const auto& b = A.rhs;
  const double target = opts.tol * std::max(1.0, norm2(b));

  std::vector<double> inv_diag(n);
  for (int i = 0; i < n; ++i) {
    const double d = A.coefficient(i, i);
    if (!(d > 0)) throw SolverError("solve: nonpositive diagonal entry", INFINITY, 0);
    inv_diag[i] = 1 / d;
  }

  std::vector<double> x(n, 0.0), r = b, z(n), p(n), q(n);
  auto true_residual = [&](const std::vector<double>& xv) {
    std::vector<double> ax;
    A.multiply(xv, ax);
    for (int i = 0; i < n; ++i) ax[i] -= b[i];
    return norm2(ax);
  };

  auto restart = [&] {
    A.multiply(x, r);
    for (int i = 0; i < n; ++i) r[i] = b[i] - r[i];
    for (int i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
    p = z;
    return std::inner_product(r.begin(), r.end(), z.begin(), 0.0);
  };

  double res = norm2(r);
  std::vector<double> best_x = x;
  double best = res;
  int it = 0;
  double rz = restart();
  while (res > target && it < max_iter) {
    A.multiply(p, q);
    const double pq = std::inner_product(p.begin(), p.end(), q.begin(), 0.0);
    if (!(pq > 0)) break;
    const double alpha = rz / pq;
    for (int i = 0; i < n; ++i) {
      x[i] += alpha * p[i];
      r[i] -= alpha * q[i];
    }
    ++it;
    res = norm2(r);
    if (res <= target) {
      // The recursive residual can drift from b - A x; confirm before stopping.
      res = true_residual(x);
      if (res > target) {
        rz = restart();
        continue;
      }
    }
    if (res < best) {
      best = res;
      best_x = x;
    }
    for (int i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
    const double rz_new = std::inner_product(r.begin(), r.end(), z.begin(), 0.0);
    const double beta = rz_new / rz;
    rz = rz_new;
    for (int i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
  }
  if (res < best) best_x = x;
  const double final_res = true_residual(best_x);
  if (final_res > target)
    throw SolverError("solve: no convergence within " + std::to_string(max_iter) + " iterations", final_res, it);
  return {std::move(best_x), it, final_res};
}

}  // namespace nsfd
