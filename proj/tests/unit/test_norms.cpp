#include <gtest/gtest.h>

#include "qes/error.hpp"
#include "qes/norms.hpp"

using namespace qes;

TEST(Norm, Examples) {
  const auto p = ModelParams::from_zeta2(3, 0.01);
  EXPECT_EQ(norm(0, p), 1.0);
  EXPECT_EQ(norm(3, p), 0.0);
  EXPECT_EQ(norm(5, p), 0.0);
  // gamma_1 = a_1 = -4 * 1 * 2 * zeta^2
  EXPECT_NEAR(norm(1, p), -0.08, 1e-16);
  EXPECT_NEAR(norm(2, p), 0.08 * 0.08, 1e-16);
  EXPECT_THROW(norm(-1, p), InvalidArgument);
}

TEST(NormSigns, AlternateBelowM) {
  for (int M : {3, 4, 7}) {
    const auto r = norm_signs(ModelParams::from_zeta2(M, 0.02));
    EXPECT_TRUE(r.even_positive);
    EXPECT_TRUE(r.odd_negative);
    ASSERT_FALSE(r.signs.empty());
    EXPECT_EQ(r.signs[0], 1);
  }
}

TEST(Weights, SingleLevel) {
  const auto t = weights(ModelParams::from_zeta2(1, 0.3));
  ASSERT_EQ(t.weights.size(), 1u);
  EXPECT_NEAR(std::abs(t.weights[0] - cplx(1.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(t.energies[0] - cplx(0.7)), 0.0, 1e-15);
}

TEST(Weights, GramIdentity) {
  for (int M : {3, 5})
    for (double z2 : {0.005, 0.01, 0.02, 0.025}) {
      const auto t = weights(ModelParams::from_zeta2(M, z2));
      EXPECT_EQ(t.gamma.front(), 1.0);
      EXPECT_EQ(t.gamma.back(), 0.0);
      EXPECT_LT(gram_defect(t), 1e-7) << "M=" << M << " z2=" << z2;
      EXPECT_LT(t.max_weight_imag_ratio(), 1e-9);
      cplx total = 0.0;
      for (cplx w : t.weights) total += w;
      EXPECT_NEAR(std::abs(total - cplx(1.0)), 0.0, 1e-9);
    }
}

TEST(Weights, GramMatrixOffDiagonal) {
  const auto p = ModelParams::from_zeta2(5, 0.02);
  const auto t = weights(p);
  const auto G = gram_matrix(r_recurrence(p, 5), t.energies, t.weights);
  ASSERT_EQ(G.size(), 5u);
  EXPECT_NEAR(std::abs(G[1][3]), 0.0, 1e-9);
  EXPECT_NEAR(std::abs(G[2][2] - cplx(t.gamma[2])), 0.0, 1e-9 * std::abs(t.gamma[2]));
}

TEST(Weights, EvenMComplexWeightsStillSatisfyGram) {
  const auto t = weights(ModelParams::from_zeta2(4, 0.1));
  EXPECT_LT(gram_defect(t), 1e-7);
}

TEST(Weights, UnresolvedNodesRejected) {
  // P and Q levels of M = 9 sit about 3e-14 apart here.
  EXPECT_THROW(weights(ModelParams::from_zeta2(9, 0.005)), NumericalError);
}

TEST(ComplexWeights, PAndQFamilies) {
  const auto p = ModelParams::from_zeta2(5, 0.02);
  for (Family f : {Family::P, Family::Q}) {
    const auto t = complex_weights(p, f);
    EXPECT_EQ(t.family, f);
    EXPECT_EQ(t.energies.size(), t.weights.size());
    EXPECT_LT(t.gram_defect, 1e-7);
  }
  EXPECT_THROW(complex_weights(p, Family::R), InvalidArgument);
}
