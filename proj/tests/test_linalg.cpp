#include "anosov/errors.hpp"
#include "anosov/linalg.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace anosov;

TEST(SquareMatrix, NormalizesDeterminantAndKeepsInverse) {
  Mat m(2, 2);
  m << 2, 1, 1, 3;
  const SquareMatrix g = SquareMatrix::from_matrix(m);
  EXPECT_NEAR(g.matrix().determinant(), 1.0, 1e-14);
  EXPECT_TRUE((g.matrix() * g.inverse_matrix()).isIdentity(1e-13));
  EXPECT_NEAR(g(0, 0), 2.0 / std::sqrt(5.0), 1e-15);
}

TEST(SquareMatrix, RejectsBadInput) {
  Mat m(2, 2);
  m << 1, 0, 0, -1;
  EXPECT_THROW(SquareMatrix::from_matrix(m), InputError);
  m << 1, 2, 2, 4;
  EXPECT_THROW(SquareMatrix::from_matrix(m), InputError);
  m << std::nan(""), 0, 0, 1;
  EXPECT_THROW(SquareMatrix::from_matrix(m), InputError);
}

TEST(SquareMatrix, PowerMatchesRepeatedProduct) {
  std::mt19937_64 rng(3);
  const SquareMatrix g = SquareMatrix::from_matrix(oracle::random_sl(rng, 3, 0.5));
  SquareMatrix p = SquareMatrix::identity(3);
  for (int i = 0; i < 5; ++i) p = p * g;
  EXPECT_TRUE(g.pow(5).matrix().isApprox(p.matrix(), 1e-12));
  EXPECT_TRUE(g.pow(-2).matrix().isApprox((g.inverse() * g.inverse()).matrix(), 1e-12));
}

TEST(CartanVector, Invariants) {
  EXPECT_NO_THROW(CartanVector({1.0, 0.0, -1.0}));
  EXPECT_THROW(CartanVector({0.0, 1.0, -1.0}), InputError);
  EXPECT_THROW(CartanVector({1.0, 0.0, 0.0}), InputError);
}

TEST(CartanProjection, DiagonalExample) {
  const double d[] = {std::exp(2.0), 1.0, std::exp(-2.0)};
  const CartanVector mu = cartan_projection(SquareMatrix::diagonal(d));
  EXPECT_NEAR(mu[0], 2.0, 1e-14);
  EXPECT_NEAR(mu[1], 0.0, 1e-14);
  EXPECT_NEAR(mu[2], -2.0, 1e-14);
}

TEST(CartanProjection, MatchesEigenOfGramOracle) {
  std::mt19937_64 rng(11);
  for (int n : {2, 3, 4, 5, 7}) {
    for (int trial = 0; trial < 50; ++trial) {
      const Mat m = oracle::random_sl(rng, n);
      const CartanVector mu = cartan_projection(SquareMatrix::from_matrix(m));
      const auto ref = oracle::log_singular_values(m);
      for (int i = 0; i < n; ++i) EXPECT_NEAR(mu[static_cast<std::size_t>(i)], ref[static_cast<std::size_t>(i)], 1e-9);
    }
  }
}

TEST(CartanProjection, LongProductsStayAccurate) {
  // A hyperbolic element to the 60th power has mu_1 = 60 t, far beyond what a
  // plain SVD of the product resolves in the bottom singular value.
  const double t = 1.5;
  const Mat r = Eigen::Rotation2Dd(0.4).toRotationMatrix();
  Mat d = Mat::Zero(2, 2);
  d(0, 0) = std::exp(t);
  d(1, 1) = std::exp(-t);
  const SquareMatrix g = SquareMatrix::from_matrix(r * d * r.transpose());
  const CartanVector mu = cartan_projection(g.pow(60));
  EXPECT_NEAR(mu[0], 90.0, 1e-9);
  EXPECT_NEAR(mu[1], -90.0, 1e-9);
}

TEST(JordanProjection, ConjugateOfDiagonal) {
  std::mt19937_64 rng(5);
  const Mat h = oracle::random_sl(rng, 4);
  Mat d = Mat::Zero(4, 4);
  d.diagonal() << std::exp(1.5), std::exp(0.5), std::exp(-0.25), std::exp(-1.75);
  const CartanVector lambda = jordan_projection(SquareMatrix::from_matrix(h * d * h.inverse()));
  const double expect[] = {1.5, 0.5, -0.25, -1.75};
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(lambda[static_cast<std::size_t>(i)], expect[i], 1e-10);
}

TEST(JordanProjection, RotationHasZeroProjection) {
  const SquareMatrix g = SquareMatrix::from_matrix(Eigen::Rotation2Dd(1.0).toRotationMatrix());
  const CartanVector lambda = jordan_projection(g);
  EXPECT_NEAR(lambda[0], 0.0, 1e-12);
  EXPECT_NEAR(lambda[1], 0.0, 1e-12);
}

TEST(OppositionInvolution, ReversesAndNegates) {
  const CartanVector v({3.0, 1.0, -0.5, -3.5});
  const CartanVector w = opposition_involution(v);
  EXPECT_EQ(w.values(), (std::vector<double>{3.5, 0.5, -1.0, -3.0}));
}

TEST(LinearForm, NamedFormsAndParse) {
  const CartanVector v({2.0, 0.5, -2.5});
  EXPECT_DOUBLE_EQ(LinearForm::parse("a12", 3)(v), 1.5);
  EXPECT_DOUBLE_EQ(LinearForm::parse("a1n", 3)(v), 4.5);
  EXPECT_DOUBLE_EQ(LinearForm::parse("a23", 3)(v), 3.0);
  EXPECT_DOUBLE_EQ(LinearForm::parse("e1", 3)(v), 2.0);
  EXPECT_DOUBLE_EQ(LinearForm::parse("w2", 3)(v), 2.5);
  EXPECT_DOUBLE_EQ(LinearForm::parse("custom:1,1,0", 3)(v), 2.5);
  EXPECT_DOUBLE_EQ(LinearForm::root(1, 2, 3).scaled(2.0)(v), 3.0);
  EXPECT_THROW(LinearForm::parse("custom:1,x,0", 3), InputError);
  EXPECT_THROW(LinearForm::parse("custom:1,0", 3), InputError);
  EXPECT_THROW(LinearForm::parse("zz", 3), InputError);
  EXPECT_THROW(LinearForm::root(1, 2, 4)(v), InputError);
}

TEST(ProjectivePoints, SignNormalizationAndAngle) {
  Vec a(3), b(3);
  a << -1, 2, 0;
  b << 1, -2, 0;
  EXPECT_TRUE(ProjPoint(a).unit().isApprox(ProjPoint(b).unit()));
  EXPECT_GT(ProjPoint(a)[0], 0.0);
  EXPECT_NEAR(proj_distance(ProjPoint(a), ProjPoint(b)), 0.0, 1e-15);
  Vec e1 = Vec::Unit(3, 0), e2 = Vec::Unit(3, 1);
  EXPECT_NEAR(angle_between(e1, e2), std::numbers::pi / 2, 1e-15);
  Vec c(3);
  c << 1, 1e-9, 0;
  EXPECT_NEAR(angle_between(e1, c), 1e-9, 1e-20);
  EXPECT_THROW(ProjPoint(Vec::Zero(3)), InputError);
}

TEST(Proximality, DiagonalHasRightAngleToRepellingHyperplane) {
  const double d[] = {std::exp(1.0), 1.0, std::exp(-1.0)};
  const Proximality p = proximality_gaps(SquareMatrix::diagonal(d));
  EXPECT_TRUE(p.proximal);
  EXPECT_NEAR(p.gap, 1.0, 1e-12);
  EXPECT_NEAR(p.angle, std::numbers::pi / 2, 1e-12);
  EXPECT_TRUE(p.eps_proximal());
}

TEST(Proximality, RotationIsNotProximal) {
  const SquareMatrix g = SquareMatrix::from_matrix(Eigen::Rotation2Dd(1.0).toRotationMatrix());
  const Proximality p = proximality_gaps(g);
  EXPECT_FALSE(p.proximal);
  EXPECT_FALSE(p.reason.empty());
  EXPECT_FALSE(attracting_pair(g).has_value());
}

TEST(AttractingPair, LineAndCovectorOfDiagonal) {
  const double d[] = {std::exp(1.0), 1.0, std::exp(-1.0)};
  const auto pair = attracting_pair(SquareMatrix::diagonal(d));
  ASSERT_TRUE(pair.has_value());
  EXPECT_NEAR(std::abs(pair->line[0]), 1.0, 1e-12);
  EXPECT_NEAR(std::abs(pair->covector[2]), 1.0, 1e-12);
}
