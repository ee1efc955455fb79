#include "nsfd/algebra/differential.hpp"

#include <gtest/gtest.h>

using namespace nsfd::algebra;

namespace {

DifferentialPolynomial U(int x = 0, int y = 0, int t = 0) { return jet(Indet::u, x, y, t); }
DifferentialPolynomial V(int x = 0, int y = 0, int t = 0) { return jet(Indet::v, x, y, t); }
DifferentialPolynomial P(int x = 0, int y = 0) { return jet(Indet::p, x, y, 0); }

}  // namespace

TEST(Jet, TextAndRanking) {
  EXPECT_EQ((JetVar{Indet::u, 2, 0, 1}).to_string(), "u_xxt");
  EXPECT_EQ((JetVar{Indet::p, 0, 0, 0}).to_string(), "p");
  JetRank less;
  EXPECT_TRUE(less({Indet::p, 3, 0, 0}, {Indet::v, 0, 0, 1}));
  EXPECT_TRUE(less({Indet::p, 1, 0, 0}, {Indet::v, 1, 1, 0}));
  EXPECT_TRUE(less({Indet::u, 0, 2, 0}, {Indet::p, 0, 2, 0}));
  EXPECT_TRUE(less({Indet::u, 0, 2, 0}, {Indet::u, 1, 1, 0}));
}

TEST(TotalDerivative, ProductRule) {
  const auto f = U() * U() * V(0, 1);
  const auto expected = U() * U(1) * V(0, 1) * ParamRational(2) + U() * U() * V(1, 1);
  EXPECT_EQ(total_derivative(f, Direction::x), expected);
  EXPECT_TRUE(total_derivative(DifferentialPolynomial(ParamRational(5)), Direction::t).is_zero());
  EXPECT_EQ(total_derivative(f, 1, 0, 0), expected);
}

TEST(TotalDerivative, DerivativesCommute) {
  const auto f = navier_stokes()[1];
  EXPECT_EQ(total_derivative(total_derivative(f, Direction::x), Direction::t),
            total_derivative(total_derivative(f, Direction::t), Direction::x));
}

TEST(DifferentialReduce, GeneratorsReduceToZero) {
  const auto F = navier_stokes();
  for (const auto& f : F) EXPECT_TRUE(differential_reduce(f, 2).remainder.is_zero()) << f.to_string();
  EXPECT_TRUE(differential_reduce(total_derivative(F[1], Direction::x) + U() * total_derivative(F[0], Direction::y), 3)
                  .remainder.is_zero());
}

TEST(DifferentialReduce, DivergenceOfMomentumIsInTheIdeal) {
  const auto F = navier_stokes();
  const auto div = total_derivative(F[1], Direction::x) + total_derivative(F[2], Direction::y);
  // Hand identity: div = D_t f1 + f4 + u D_x f1 + v D_y f1 - (D_xx + D_yy) f1 / Re.
  const auto rhs = total_derivative(F[0], Direction::t) + F[3] + U() * total_derivative(F[0], Direction::x) +
                   V() * total_derivative(F[0], Direction::y) -
                   (total_derivative(F[0], 2, 0, 0) + total_derivative(F[0], 0, 2, 0)) / ParamRational::re();
  EXPECT_EQ(div, rhs);
  EXPECT_TRUE(differential_reduce(div, 3).remainder.is_zero());
}

TEST(DifferentialReduce, OrderBoundIsRespected) {
  const auto F = navier_stokes();
  const auto d = total_derivative(F[1], 2, 1, 0);  // order 5
  EXPECT_FALSE(differential_reduce(d, 4).remainder.is_zero());
  EXPECT_TRUE(differential_reduce(d, 5).remainder.is_zero());
}

TEST(DifferentialReduce, NonMembersSurvive) {
  EXPECT_EQ(differential_reduce(U(), 4).remainder, U());
  EXPECT_EQ(differential_reduce(P(0, 1) * V(), 4).remainder, P(0, 1) * V());
  EXPECT_FALSE(differential_reduce(U(0, 0, 1), 4).remainder.is_zero());
}

TEST(DifferentialReduce, CofactorsReconstructInput) {
  const auto F = navier_stokes();
  const auto f = U() * total_derivative(F[1], Direction::y) + V(0, 1) * F[0] + U(2, 0) * U(0, 0, 2) + P(3, 0) +
                 V(1, 1) * ParamRational::re();
  DifferentialReducer reducer(5);
  const auto nf = reducer.reduce(f);
  EXPECT_EQ(reducer.reconstruct(nf), f);
  const auto again = reducer.reduce(nf.remainder);
  EXPECT_EQ(again.remainder, nf.remainder);
  EXPECT_TRUE(again.cofactors.empty());
  // No reducible jet is left behind.
  nf.remainder.for_each_var([&](const JetVar& v) { EXPECT_FALSE(reducer.reductor_for(v)) << v.to_string(); });
}
