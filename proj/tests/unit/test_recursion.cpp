#include <gtest/gtest.h>

#include <random>

#include "qes/error.hpp"
#include "qes/recursion.hpp"

using namespace qes;

TEST(RecursionCoefficients, Formulas) {
  const RecursionCoefficients ab(ModelParams::from_zeta2(5, 0.02));
  EXPECT_DOUBLE_EQ(ab.a(1), -4.0 * 1 * 4 * 0.02);
  EXPECT_DOUBLE_EQ(ab.a(2), -4.0 * 2 * 3 * 0.02);
  EXPECT_EQ(ab.a(5), 0.0);
  EXPECT_DOUBLE_EQ(ab.b(0), 9.0 - 0.02);
  EXPECT_DOUBLE_EQ(ab.b(2), 4.0 * 2 * 2 + 9.0 - 0.02);
}

TEST(BuildR, SecondMemberClosedForm) {
  const auto p = ModelParams::from_zeta2(2, 0.1);
  const RecursionCoefficients ab(p);
  const auto R = build_R(p, 2);
  ASSERT_EQ(R.size(), 3u);
  EXPECT_EQ(R[0].degree(), 0);
  const double b0 = ab.b(0), b1 = ab.b(1), a1 = ab.a(1);
  EXPECT_NEAR(std::abs(R[2].coeffs()[0] - cplx(b0 * b1 - a1)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(R[2].coeffs()[1] - cplx(-(b0 + b1))), 0.0, 1e-14);
  EXPECT_EQ(R[2].family(), Family::R);
}

TEST(BuildR, RealCoefficientsAndZetaSignInvariance) {
  const auto R1 = build_R(ModelParams(6, 0.15), 8);
  const auto R2 = build_R(ModelParams(6, -0.15), 8);
  for (std::size_t n = 0; n < R1.size(); ++n) {
    EXPECT_EQ(R1[n].max_abs_imag(), 0.0);
    EXPECT_EQ(coefficient_distance(R1[n], R2[n]), 0.0);
  }
}

TEST(BuildPQ, ConjugateUnderZetaSignFlip) {
  const auto a = build_P(ModelParams(7, 0.2), 5);
  const auto b = build_P(ModelParams(7, -0.2), 5);
  const auto c = build_Q(ModelParams(7, 0.2), 4);
  const auto d = build_Q(ModelParams(7, -0.2), 4);
  for (std::size_t n = 0; n < a.size(); ++n)
    for (std::size_t i = 0; i < a[n].coeffs().size(); ++i)
      EXPECT_NEAR(std::abs(a[n].coeffs()[i] - std::conj(b[n].coeffs()[i])), 0.0,
                  1e-12 * a[n].max_abs_coeff());
  for (std::size_t n = 0; n < c.size(); ++n)
    for (std::size_t i = 0; i < c[n].coeffs().size(); ++i)
      EXPECT_NEAR(std::abs(c[n].coeffs()[i] - std::conj(d[n].coeffs()[i])), 0.0,
                  1e-12 * c[n].max_abs_coeff());
}

TEST(BuildPQ, CriticalMembersForMEqualsThree) {
  const auto p = ModelParams::from_zeta2(3, 0.01);
  const auto P2 = in_variable(build_P(p, 2)[2], Variable::ReducedE, p);
  const auto Q1 = in_variable(build_Q(p, 1)[1], Variable::ReducedE, p);
  const std::vector<cplx> p2 = {16 * 0.01, 4.0, 1.0};
  for (int i = 0; i <= 2; ++i) EXPECT_NEAR(std::abs(P2.coeffs()[i] - p2[i]), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(Q1.coeffs()[0] - cplx(4.0)), 0.0, 1e-12);
}

TEST(BuildPQ, MOneCriticalMember) {
  const auto p = ModelParams::from_zeta2(1, 0.3);
  const auto P1 = build_P(p, 1)[1];  // E - 1 + zeta^2
  EXPECT_NEAR(std::abs(P1.coeffs()[0] - cplx(-0.7)), 0.0, 1e-14);
  EXPECT_EQ(build_Q(p, 0)[0].degree(), 0);
}

TEST(BuildPQ, SectorsDiffer) {
  const auto p = ModelParams::from_zeta2(5, 0.02);
  EXPECT_GT(coefficient_distance(build_P(p, 3, Sector::Zero)[3], build_P(p, 3, Sector::Half)[3]), 1e-3);
  EXPECT_EQ(sector_value(Sector::Half), 0.5);
  EXPECT_EQ(parse_sector(0.0), Sector::Zero);
  EXPECT_THROW(parse_sector(0.25), InvalidArgument);
}

TEST(ThreeTermRecurrence, ValuesAgreeWithPolynomials) {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-30.0, 80.0);
  const auto p = ModelParams::from_zeta2(7, 0.025);
  for (const auto& rec : {p_recurrence(p, 6), q_recurrence(p, 5), r_recurrence(p, 9), rbar_recurrence(p, 4)}) {
    const auto polys = rec.polynomials();
    for (int trial = 0; trial < 20; ++trial) {
      const cplx E(u(rng), 0.1 * u(rng));
      const auto v = rec.values(E);
      ASSERT_EQ(v.size(), polys.size());
      for (std::size_t n = 0; n < v.size(); ++n) {
        const double scale = polys[n].evaluation_scale(E);
        EXPECT_NEAR(std::abs(v[n] - polys[n](E)), 0.0, 1e-12 * scale);
      }
      const int n = rec.length();
      const auto [value, deriv] = rec.evaluate(n, E);
      const auto [pv, pd] = polys[n].value_and_derivative(E);
      EXPECT_NEAR(std::abs(value - pv), 0.0, 1e-12 * polys[n].evaluation_scale(E));
      EXPECT_NEAR(std::abs(deriv - pd), 0.0, 1e-10 * (1.0 + std::abs(pd)));
    }
  }
}

TEST(ThreeTermRecurrence, RMatchesPQProduct) {
  for (int M : {1, 3, 5, 7, 9})
    for (double z2 : {0.0, 0.005, 0.02}) {
      const auto p = ModelParams::from_zeta2(M, z2);
      const int k = k_index(M);
      const auto prod = mul(build_P(p, k + 1)[k + 1], build_Q(p, k)[k]);
      EXPECT_LT(coefficient_distance(build_R(p, M)[M], prod), 1e-12) << "M=" << M << " z2=" << z2;
    }
}

TEST(ThreeTermRecurrence, NormIsProductOfCouplings) {
  const auto p = ModelParams::from_zeta2(5, 0.01);
  const auto rec = r_recurrence(p, 5);
  const RecursionCoefficients ab(p);
  EXPECT_EQ(rec.norm(0), cplx(1.0));
  EXPECT_NEAR(std::abs(rec.norm(2) - cplx(ab.a(1) * ab.a(2))), 0.0, 1e-16);
}

TEST(RecurrenceRoots, AgreeWithCoefficientRoots) {
  const auto p = ModelParams::from_zeta2(4, 0.05);
  const auto rec = r_recurrence(p, 4);
  const auto a = recurrence_roots(rec, 4);
  const auto b = roots(rec.polynomials()[4]);
  EXPECT_LT(matching_distance(a, b), 1e-9);
  EXPECT_THROW(recurrence_roots(rec, 5), InvalidArgument);
}

TEST(QesEnergies, SingleLevel) {
  const auto e = qes_energies(ModelParams::from_zeta2(1, 0.1));
  ASSERT_EQ(e.size(), 1u);
  EXPECT_NEAR(std::abs(e[0] - cplx(0.9)), 0.0, 1e-15);
}

TEST(QesEnergies, ZeroCouplingIsDiagonal) {
  // At zeta = 0 the recursion decouples and the zeros are the b_n.
  for (int M = 1; M <= 9; ++M) {
    const auto p = ModelParams(M, 0.0);
    const RecursionCoefficients ab(p);
    std::vector<cplx> b;
    for (int n = 0; n < M; ++n) b.emplace_back(ab.b(n));
    EXPECT_LT(matching_distance(qes_energies(p), b), 1e-12) << "M=" << M;
  }
}

TEST(RecursionCoefficients, ANegativeForRealCoupling) {
  EXPECT_LT(RecursionCoefficients(ModelParams(3, 0.1)).a(1), 0.0);
}
