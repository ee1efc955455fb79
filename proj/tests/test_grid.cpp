#include "nsfd/core/exact_solution.hpp"
#include "nsfd/core/grid.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace nsfd;
using std::numbers::pi;

TEST(MakeGrid, FirstFigureSpacing) {
  const auto g = make_grid(5, 10, 1, 1e5);
  EXPECT_DOUBLE_EQ(g.h, pi / 6);
  EXPECT_DOUBLE_EQ(g.tau, 0.1);
  EXPECT_EQ(g.n_steps, 10);
  EXPECT_NEAR(g.h * (g.m + 1), pi, 1e-15);
}

TEST(MakeGrid, ThirdFigureSpacing) {
  const auto g = make_grid(100, 40, 1, 100);
  EXPECT_DOUBLE_EQ(g.h, pi / 101);
  EXPECT_DOUBLE_EQ(g.tau, 0.025);
  EXPECT_TRUE(g.diffusive_advisory);  // 0.025 > 100 h^2 / 4 = 0.0242
  EXPECT_FALSE(g.advective_advisory);
}

TEST(MakeGrid, RejectsBadArguments) {
  EXPECT_THROW(make_grid(1, 10, 1, 1e5), ConfigError);
  EXPECT_THROW(make_grid(2, 10, 1, 1e5), ConfigError);
  EXPECT_THROW(make_grid(5, 0, 1, 1e5), ConfigError);
  EXPECT_THROW(make_grid(5, 10, -1, 1e5), ConfigError);
  EXPECT_THROW(make_grid(5, 10, 1, 0), ConfigError);
  EXPECT_THROW(make_grid(5, 10, 1, 1, -0.1), ConfigError);
}

TEST(MakeGrid, AdvisoriesAndOverride) {
  const auto g = make_grid(50, 10, 1, 1e5);
  EXPECT_TRUE(g.advective_advisory);  // tau = 0.1 > h
  const auto o = make_grid(50, 4, 99, 1e5, 0.01);
  EXPECT_DOUBLE_EQ(o.tau, 0.01);
  EXPECT_DOUBLE_EQ(o.t_f, 0.04);
  EXPECT_FALSE(o.advective_advisory);
  EXPECT_TRUE(make_grid(50, 10, 1, 1).diffusive_advisory);
}

TEST(Coords, Examples) {
  const auto g = make_grid(5, 10, 1, 1e5);
  auto [x0, y0, t0] = coords(g, 0, 0, 0);
  EXPECT_EQ(x0, 0);
  EXPECT_EQ(y0, 0);
  EXPECT_EQ(t0, 0);
  EXPECT_EQ(std::get<0>(coords(g, g.m + 1, 0, 0)), pi);
  auto [x, y, t] = coords(g, 2, 3, 5);
  EXPECT_DOUBLE_EQ(x, pi / 3);
  EXPECT_DOUBLE_EQ(y, pi / 2);
  EXPECT_DOUBLE_EQ(t, 0.5);
  EXPECT_THROW(coords(g, -2, 0, 0), std::out_of_range);
  EXPECT_THROW(coords(g, 0, g.m + 3, 0), std::out_of_range);
  EXPECT_NO_THROW(coords(g, -1, g.m + 2, 0));
}

TEST(Coords, FarCornerIsExact) {
  for (int m : {3, 7, 50, 101}) {
    const auto g = make_grid(m, 7, 0.3, 10);
    auto [x, y, t] = coords(g, m + 1, m + 1, g.n_steps);
    EXPECT_EQ(x, pi);
    EXPECT_EQ(y, pi);
    EXPECT_EQ(t, g.t_f);
  }
}

TEST(Field, RoundTripOverGhostRange) {
  Field f(4);
  EXPECT_EQ(f.lo(), -1);
  EXPECT_EQ(f.hi(), 6);
  for (int j = f.lo(); j <= f.hi(); ++j)
    for (int k = f.lo(); k <= f.hi(); ++k) f(j, k) = 100 * j + k + 0.25;
  for (int j = f.lo(); j <= f.hi(); ++j)
    for (int k = f.lo(); k <= f.hi(); ++k) EXPECT_EQ(f.at(j, k), 100 * j + k + 0.25);
  EXPECT_THROW(f.at(-2, 0), std::out_of_range);
  EXPECT_TRUE(f.interior(1, 4));
  EXPECT_FALSE(f.interior(0, 4));
}

TEST(FillExact, EverywhereMatchesSamples) {
  const auto g = make_grid(8, 10, 1, 100);
  const ExactSolution sol(100);
  Field f(g.m);
  fill_exact(f, Indet::v, g, sol, 0, Region::everywhere);
  for (int j = f.lo(); j <= f.hi(); ++j)
    for (int k = f.lo(); k <= f.hi(); ++k) {
      auto [x, y, t] = coords(g, j, k, 0);
      EXPECT_EQ(f(j, k), sol.v(x, y, 0));
    }
  Field u(g.m);
  fill_exact(u, Indet::u, g, sol, 0, Region::everywhere);
  EXPECT_EQ(u(0, 0), 0);
}

TEST(FillExact, BoundaryFillLeavesInteriorAndIsIdempotent) {
  const auto g = make_grid(8, 10, 1, 100);
  const ExactSolution sol(100);
  Field f(g.m, 7.5);
  fill_exact(f, Indet::p, g, sol, 0.5, Region::ghost_and_boundary);
  for (int j = 1; j <= g.m; ++j)
    for (int k = 1; k <= g.m; ++k) EXPECT_EQ(f(j, k), 7.5);
  auto [x, y, t] = coords(g, 0, 3, 0);
  EXPECT_EQ(f(0, 3), sol.p(x, y, 0.5));
  Field once = f;
  fill_exact(f, Indet::p, g, sol, 0.5, Region::ghost_and_boundary);
  EXPECT_EQ(f, once);
}

TEST(ExactSolution, PointValues) {
  const ExactSolution sol(1e5);
  EXPECT_DOUBLE_EQ(sol.u(0, pi / 2, 0), -1);
  EXPECT_DOUBLE_EQ(sol.v(pi / 2, 0, 0), 1);
  EXPECT_DOUBLE_EQ(sol.p(0, 0, 0), -0.5);
  EXPECT_EQ(sol.eval(Indet::p, 0, 0, 0), sol.p(0, 0, 0));
}

TEST(ExactSolution, ResidualsVanishAtRandomPoints) {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> xy(0, pi), t(0, 2);
  for (double re : {1.0, 100.0, 1e5}) {
    const ExactSolution sol(re);
    std::vector<Point3> pts;
    for (int i = 0; i < 1000; ++i) pts.push_back({xy(rng), xy(rng), t(rng)});
    EXPECT_LE(residual_check(sol, pts), 1e-12) << re;
  }
  EXPECT_EQ(residual_check(ExactSolution(100), {}), 0);
}

TEST(ExactSolution, ResidualsAgreeWithFiniteDifferences) {
  // Independent oracle for the hand-coded derivatives: central differences.
  const ExactSolution sol(3);
  const double x = 0.7, y = 1.9, t = 0.4, d = 1e-4;
  auto D = [&](Indet w, double dx, double dy, double dt) {
    return (sol.eval(w, x + dx, y + dy, t + dt) - sol.eval(w, x - dx, y - dy, t - dt)) / (2 * d);
  };
  auto DD = [&](Indet w, double dx, double dy) {
    return (sol.eval(w, x + dx, y + dy, t) - 2 * sol.eval(w, x, y, t) + sol.eval(w, x - dx, y - dy, t)) / (d * d);
  };
  const double u = sol.u(x, y, t), v = sol.v(x, y, t);
  const double f2 = D(Indet::u, 0, 0, d) + u * D(Indet::u, d, 0, 0) + v * D(Indet::u, 0, d, 0) + D(Indet::p, d, 0, 0) -
                    (DD(Indet::u, d, 0) + DD(Indet::u, 0, d)) / 3;
  EXPECT_NEAR(f2, 0, 1e-6);
  const double f4 = std::pow(D(Indet::u, d, 0, 0), 2) + 2 * D(Indet::v, d, 0, 0) * D(Indet::u, 0, d, 0) +
                    std::pow(D(Indet::v, 0, d, 0), 2) + DD(Indet::p, d, 0) + DD(Indet::p, 0, d);
  EXPECT_NEAR(f4, 0, 1e-6);
}

TEST(ExactSolution, DecayBound) {
  const ExactSolution sol(10);
  for (double t : {0.0, 1.0, 5.0})
    for (double x : {0.1, 1.3, 2.9}) EXPECT_LE(std::abs(sol.u(x, 0.8, t)), std::exp(-2 * t / 10) + 1e-15);
}

TEST(ExactState, Level) {
  const auto g = make_grid(6, 10, 1, 100);
  const ExactSolution sol(100);
  const auto s = exact_state(g, sol, 3);
  EXPECT_EQ(s.level, 3);
  auto [x, y, t] = coords(g, 2, 5, 3);
  EXPECT_EQ(s.u(2, 5), sol.u(x, y, t));
  EXPECT_EQ(&s.get(Indet::p), &s.p);
}
