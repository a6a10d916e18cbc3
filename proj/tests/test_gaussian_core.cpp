#include <random>

#include <gtest/gtest.h>

#include "gaussnet/gaussian_core.hpp"
#include "support/oracles.hpp"

namespace gaussnet {
namespace {

TEST(SymplecticForm, SingleMode) {
  const RealMatrix s = symplectic_form(1).matrix();
  RealMatrix expected(2, 2);
  expected << 0, 1, -1, 0;
  EXPECT_EQ(s, expected);
}

TEST(SymplecticForm, TwoModesIsBlockDiagonal) {
  const RealMatrix s = symplectic_form(2).matrix();
  RealMatrix expected = RealMatrix::Zero(4, 4);
  expected(0, 1) = expected(2, 3) = 1;
  expected(1, 0) = expected(3, 2) = -1;
  EXPECT_EQ(s, expected);
}

TEST(SymplecticForm, AntisymmetricUnitDeterminantSquaresToMinusIdentity) {
  for (int n = 1; n <= 6; ++n) {
    const RealMatrix s = symplectic_form(n).matrix();
    EXPECT_EQ(s.transpose(), -s) << n;
    EXPECT_EQ(s * s, -RealMatrix::Identity(2 * n, 2 * n)) << n;
    EXPECT_NEAR(s.determinant(), 1.0, 1e-14) << n;
  }
}

TEST(SymplecticForm, ZeroModesRejected) {
  EXPECT_THROW(symplectic_form(0), DimensionError);
}

TEST(BlockPartition, DiagonalAndVacuum) {
  const TwoModeBlocks b = block_partition(CovarianceMatrix::scaled_identity(2, 2.0));
  EXPECT_EQ(b.v1, 2.0 * Eigen::Matrix2d::Identity());
  EXPECT_EQ(b.v3, 2.0 * Eigen::Matrix2d::Identity());
  EXPECT_EQ(b.v2, Eigen::Matrix2d::Zero());

  const TwoModeBlocks vac = block_partition(CovarianceMatrix::vacuum(2));
  EXPECT_EQ(vac.v1, 0.5 * Eigen::Matrix2d::Identity());
  EXPECT_EQ(vac.v2, Eigen::Matrix2d::Zero());
}

TEST(BlockPartition, SqueezedCrossBlock) {
  const double r = 0.7;
  const TwoModeBlocks b =
      block_partition(CovarianceMatrix(testing::two_mode_squeezed(r)));
  EXPECT_NEAR(b.v2(0, 0), std::sinh(2 * r) / 2, 1e-15);
  EXPECT_NEAR(b.v2(1, 1), -std::sinh(2 * r) / 2, 1e-15);
  EXPECT_EQ(b.v2(0, 1), 0.0);
}

TEST(BlockPartition, WrongDimension) {
  EXPECT_THROW(block_partition(CovarianceMatrix::vacuum(1)), DimensionError);
  EXPECT_THROW(block_partition(CovarianceMatrix::vacuum(3)), DimensionError);
}

TEST(BlockPartition, ReassemblyIsIdentity) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const RealMatrix v = testing::random_symmetric(rng, 4);
    EXPECT_EQ(block_partition(CovarianceMatrix(v)).assemble(),
              CovarianceMatrix(v).matrix());
  }
}

TEST(CovarianceMatrix, RejectsAsymmetry) {
  RealMatrix v = RealMatrix::Identity(4, 4);
  v(0, 1) = 1e-6;
  EXPECT_THROW(CovarianceMatrix{v}, ShapeError);
  v(0, 1) = 1e-12;
  EXPECT_NO_THROW(CovarianceMatrix{v});
}

TEST(IsPhysical, Examples) {
  EXPECT_TRUE(is_physical(CovarianceMatrix::vacuum(2)));
  EXPECT_TRUE(is_physical(CovarianceMatrix::scaled_identity(2, 2.0)));
  EXPECT_FALSE(is_physical(CovarianceMatrix::scaled_identity(2, 0.1)));
  EXPECT_TRUE(is_physical(CovarianceMatrix(testing::two_mode_squeezed(1.2))));
}

TEST(IsPhysical, MonotoneUnderAddedNoise) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> eps(1e-6, 1.0);
  int physical = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const RealMatrix base = testing::random_symmetric(rng, 4) +
                            1.2 * RealMatrix::Identity(4, 4);
    const CovarianceMatrix v(base);
    if (!is_physical(v)) continue;
    ++physical;
    const CovarianceMatrix w(base + eps(rng) * RealMatrix::Identity(4, 4));
    EXPECT_TRUE(is_physical(w));
  }
  EXPECT_GT(physical, 10);
}

}  // namespace
}  // namespace gaussnet
