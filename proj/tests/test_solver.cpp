#include "nsfd/schemes/numeric.hpp"
#include "nsfd/solver/pcg.hpp"
#include "nsfd/solver/sparse.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

using namespace nsfd;

namespace {

// Dense Gaussian elimination with partial pivoting.
std::vector<double> dense_solve(const SparseSystem& A) {
  const int n = A.dimension();
  std::vector<std::vector<double>> M(n, std::vector<double>(n + 1, 0.0));
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) M[r][c] = A.coefficient(r, c);
    M[r][n] = A.rhs[r];
  }
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int r = c + 1; r < n; ++r)
      if (std::abs(M[r][c]) > std::abs(M[piv][c])) piv = r;
    std::swap(M[c], M[piv]);
    for (int r = c + 1; r < n; ++r) {
      const double f = M[r][c] / M[c][c];
      for (int k = c; k <= n; ++k) M[r][k] -= f * M[c][k];
    }
  }
  std::vector<double> x(n);
  for (int r = n - 1; r >= 0; --r) {
    double s = M[r][n];
    for (int c = r + 1; c < n; ++c) s -= M[r][c] * x[c];
    x[r] = s / M[r][r];
  }
  return x;
}

SparseSystem pressure_system(SchemeId id, int m, double re = 100) {
  const auto g = make_grid(m, 10, 1, re);
  const ExactSolution sol(re);
  const auto s = exact_state(g, sol, 1);
  auto sys = assemble_pressure(id, g, sol, s.u, s.v, g.tau);
  sys.scale(-g.h * g.h);
  return sys;
}

}  // namespace

TEST(Pcg, Identity) {
  SparseSystem A(5);
  for (int i = 0; i < 5; ++i) {
    A.add(i, i, 1);
    A.rhs[i] = i - 2.5;
  }
  const auto r = solve(A);
  for (int i = 0; i < 5; ++i) EXPECT_DOUBLE_EQ(r.x[i], i - 2.5);
}

TEST(Pcg, ZeroRhsGivesZero) {
  auto sys = pressure_system(SchemeId::fda2, 8);
  std::fill(sys.rhs.begin(), sys.rhs.end(), 0.0);
  const auto r = solve(sys);
  EXPECT_EQ(r.iterations, 0);
  for (double v : r.x) EXPECT_EQ(v, 0);
}

TEST(Pcg, AgreesWithDenseOracle) {
  for (auto id : all_schemes)
    for (int m : {3, 6, 12}) {
      const auto sys = pressure_system(id, m);
      const auto r = solve(sys);
      const auto ref = dense_solve(sys);
      for (int i = 0; i < sys.dimension(); ++i) EXPECT_NEAR(r.x[i], ref[i], 1e-10) << scheme_name(id) << " m=" << m;
      EXPECT_LE(r.residual, 1e-12 * std::max(1.0, norm2(sys.rhs)));
    }
}

TEST(Pcg, RecoversSampledPressure) {
  const int m = 12;
  const auto g = make_grid(m, 10, 1, 100);
  auto sys = pressure_system(SchemeId::fda2, m);
  std::vector<double> p(sys.dimension());
  for (int j = 1; j <= m; ++j)
    for (int k = 1; k <= m; ++k) p[interior_index(g, j, k)] = std::sin(j * g.h) * std::cosh(k * g.h) + 0.1 * j;
  sys.multiply(p, sys.rhs);
  const auto r = solve(sys);
  for (int i = 0; i < sys.dimension(); ++i) EXPECT_NEAR(r.x[i], p[i], 1e-10);
}

TEST(Pcg, RandomSpdSystems) {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> d(-1, 1);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 20;
    SparseSystem A(n);
    for (int i = 0; i < n; ++i) {
      A.add(i, i, 4 + d(rng));
      if (i + 1 < n) {
        const double o = d(rng);
        A.add(i, i + 1, o);
        A.add(i + 1, i, o);
      }
      A.rhs[i] = d(rng);
    }
    const auto r = solve(A);
    const auto ref = dense_solve(A);
    for (int i = 0; i < n; ++i) EXPECT_NEAR(r.x[i], ref[i], 1e-10);
  }
}

TEST(Pcg, NonConvergenceCarriesBestResidual) {
  const auto sys = pressure_system(SchemeId::fda2, 20);
  try {
    solve(sys, {1e-12, 2});
    FAIL() << "expected SolverError";
  } catch (const SolverError& e) {
    EXPECT_GT(e.best_residual, 0);
    EXPECT_EQ(e.iterations, 2);
  }
}

TEST(SparseSystem, ScaleAndCsv) {
  SparseSystem A(2);
  A.add(0, 0, 2);
  A.add(0, 1, -1);
  A.add(0, 1, -1);
  A.add(1, 0, -2);
  A.add(1, 1, 3);
  A.rhs = {1, 2};
  EXPECT_EQ(A.coefficient(0, 1), -2);
  EXPECT_TRUE(A.is_symmetric());
  EXPECT_TRUE(A.weakly_diagonally_dominant());
  A.scale(-0.5);
  EXPECT_EQ(A.row_scale, -0.5);
  EXPECT_EQ(A.coefficient(1, 1), -1.5);
  EXPECT_EQ(A.rhs[1], -1);
  std::ostringstream os;
  A.write_csv(os);
  EXPECT_EQ(os.str().substr(0, os.str().find('\n')), "kind,row,col,value");
  EXPECT_NE(os.str().find("b,1,,-1"), std::string::npos) << os.str();
}
