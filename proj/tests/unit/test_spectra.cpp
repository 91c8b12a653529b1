#include <gtest/gtest.h>

#include <cmath>

#include "qes/error.hpp"
#include "qes/recursion.hpp"
#include "qes/spectra.hpp"

using namespace qes;

namespace {

void expect_levels(const QesSpectrum& s, const std::vector<std::pair<double, LevelLabel>>& expected, double tol) {
  ASSERT_EQ(s.levels.size(), expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) {
    EXPECT_NEAR(s.levels[i].E.real(), expected[i].first, tol) << "level " << i;
    EXPECT_NEAR(s.levels[i].E.imag(), 0.0, tol) << "level " << i;
    EXPECT_EQ(s.levels[i].label, expected[i].second) << "level " << i;
  }
}

}  // namespace

TEST(QesSpectrum, TableOneColumn) {
  const auto s = qes_spectrum(ModelParams::from_zeta2(5, 0.01));
  expect_levels(s,
                {{9.00331480, LevelLabel::P},
                 {9.00334818, LevelLabel::Q},
                 {20.97665182, LevelLabel::Q},
                 {21.10018724, LevelLabel::P},
                 {24.86649797, LevelLabel::P}},
                1e-8);
  EXPECT_TRUE(s.all_real());
  EXPECT_TRUE(s.degenerate_pairs.empty());
}

TEST(QesSpectrum, MThreeClosedForm) {
  for (double z2 : {0.01, 0.1, 0.24}) {
    const double r = 2.0 * std::sqrt(1.0 - 4.0 * z2);
    const auto s = qes_spectrum(ModelParams::from_zeta2(3, z2));
    expect_levels(s,
                  {{5.0 - z2, LevelLabel::Q}, {7.0 - z2 - r, LevelLabel::P}, {7.0 - z2 + r, LevelLabel::P}},
                  1e-12);
  }
}

TEST(QesSpectrum, MThreeFreeLimitTie) {
  // At zeta = 0 the Q level and the lower P level coincide at 5; exact ties
  // fall back to label order.
  const auto s = qes_spectrum(ModelParams::from_zeta2(3, 0.0));
  expect_levels(s, {{5.0, LevelLabel::P}, {5.0, LevelLabel::Q}, {9.0, LevelLabel::P}}, 1e-12);
}

TEST(QesSpectrum, MThreeAtCriticalCoupling) {
  const auto s = qes_spectrum(ModelParams::from_zeta2(3, 0.25));
  expect_levels(s, {{4.75, LevelLabel::Q}, {6.75, LevelLabel::P}, {6.75, LevelLabel::P}}, 1e-7);
  ASSERT_EQ(s.degenerate_pairs.size(), 1u);
  EXPECT_EQ(s.degenerate_pairs[0], std::make_pair(1, 2));
}

TEST(QesSpectrum, BeyondCriticalCouplingLevelsAreComplex) {
  const auto s = qes_spectrum(ModelParams::from_zeta2(3, 0.3));
  EXPECT_FALSE(s.all_real());
  EXPECT_NEAR(s.levels[1].E.imag(), -s.levels[2].E.imag(), 1e-12);
}

TEST(QesSpectrum, MNineCorrectedLevels) {
  // Zeros of the P_5 and Q_4 obtained by independent polynomial arithmetic.
  const auto s = qes_spectrum(ModelParams::from_zeta2(9, 0.01));
  std::vector<double> P, Q;
  for (const auto& l : s.levels) (l.label == LevelLabel::P ? P : Q).push_back(l.E.real());
  const std::vector<double> P_ref = {17.0014284743, 45.0065699156, 65.0217131385, 77.3744804445, 80.5458080271};
  ASSERT_EQ(P.size(), 5u);
  ASSERT_EQ(Q.size(), 4u);
  for (int i = 0; i < 5; ++i) EXPECT_NEAR(P[i], P_ref[i], 2e-10);
  EXPECT_NEAR(Q[3], 76.9297858175, 2e-10);
}

TEST(QesSpectrum, DependsOnlyOnZetaSquared) {
  for (int M : {2, 5, 7}) {
    const auto a = qes_spectrum(ModelParams(M, 0.13)).energies();
    const auto b = qes_spectrum(ModelParams(M, -0.13)).energies();
    EXPECT_LT(matching_distance(a, b), 1e-12);
  }
}

TEST(QesSpectrum, EvenMUsesR) {
  const auto s = qes_spectrum(ModelParams::from_zeta2(4, 0.02));
  ASSERT_EQ(s.levels.size(), 4u);
  for (const auto& l : s.levels) EXPECT_EQ(l.label, LevelLabel::R);
  EXPECT_EQ(to_string(LevelLabel::Q), "E_Q");
}

TEST(CriticalPolynomials, Examples) {
  const double z2 = 0.02;
  const auto m3 = critical_polynomials(ModelParams::from_zeta2(3, z2));
  EXPECT_EQ(m3.P.variable(), Variable::ReducedE);
  EXPECT_NEAR(m3.P.coeffs()[0].real(), 16 * z2, 1e-13);
  EXPECT_NEAR(m3.P.coeffs()[1].real(), 4.0, 1e-13);
  EXPECT_NEAR(m3.Q.coeffs()[0].real(), 4.0, 1e-13);

  const auto m7 = critical_polynomials(ModelParams::from_zeta2(7, z2));
  EXPECT_NEAR(m7.Q.coeffs()[0].real(), 2304 + 1536 * z2, 1e-9);

  const auto m1 = critical_polynomials(ModelParams::from_zeta2(1, z2));
  EXPECT_EQ(m1.P.degree(), 1);
  EXPECT_NEAR(std::abs(m1.P.coeffs()[0]), 0.0, 1e-15);
  EXPECT_EQ(m1.Q.degree(), 0);

  // Linear coefficient of P_5 for M = 9: 147456 + 806912 zeta^2 + 16384 zeta^4.
  const auto m9 = critical_polynomials(ModelParams::from_zeta2(9, z2));
  EXPECT_NEAR(m9.P.coeffs()[1].real(), 147456 + 806912 * z2 + 16384 * z2 * z2, 1e-7);
  for (const auto& c : m9.P.coeffs()) EXPECT_EQ(c.imag(), 0.0);

  EXPECT_THROW(critical_polynomials(ModelParams::from_zeta2(4, z2)), InvalidArgument);
}

TEST(CriticalCoupling, KnownValues) {
  const auto c3 = critical_coupling(3);
  EXPECT_TRUE(c3.finite);
  EXPECT_NEAR(c3.zeta_c_squared, 0.25, 1e-10);
  EXPECT_NEAR(c3.degenerate_energy, 6.75, 1e-4);
  EXPECT_LE(c3.bracket_width, 1e-10);
  EXPECT_NEAR(critical_coupling(5).zeta_c_squared, 0.08757, 5e-4);
  EXPECT_NEAR(critical_coupling(7).zeta_c_squared, 0.04435, 5e-4);
  EXPECT_NEAR(critical_coupling(9).zeta_c_squared, 0.02675, 5e-4);
}

TEST(CriticalCoupling, EdgeCases) {
  const auto c1 = critical_coupling(1);
  EXPECT_FALSE(c1.finite);
  EXPECT_TRUE(std::isinf(c1.zeta_c_squared));
  EXPECT_THROW(critical_coupling(4), InvalidArgument);
  EXPECT_THROW(critical_coupling(3, 0.0), InvalidArgument);
}

TEST(CriticalCoupling, SpectrumRealBelowComplexAbove) {
  for (int M : {5, 7}) {
    const double zc = critical_coupling(M).zeta_c_squared;
    EXPECT_TRUE(qes_spectrum(ModelParams::from_zeta2(M, 0.95 * zc)).all_real()) << M;
    EXPECT_FALSE(qes_spectrum(ModelParams::from_zeta2(M, 1.05 * zc)).all_real()) << M;
  }
}

TEST(Factorization, RemaindersVanish) {
  for (int M : {1, 2, 3, 4, 5, 7})
    for (double z2 : {0.005, 0.02}) {
      const auto r = check_factorization(ModelParams::from_zeta2(M, z2), 4);
      EXPECT_LT(r.max_remainder(), 1e-9) << "M=" << M;
      EXPECT_EQ(r.r_vs_pq_distance.has_value(), M % 2 == 1);
      EXPECT_EQ(r.entries.size(), static_cast<std::size_t>(M % 2 == 1 ? 16 : 8));
    }
}

TEST(Factorization, FailsForWrongDivisor) {
  const auto p = ModelParams::from_zeta2(3, 0.01);
  const auto R = build_R(p, 5);
  EXPECT_GT(divide_exact(R[5], R[2]).remainder_norm, 1e-3);
}

TEST(EvenMPairing, Examples) {
  EXPECT_TRUE(even_M_pairing(ModelParams::from_zeta2(2, 0.1)));
  EXPECT_TRUE(even_M_pairing(ModelParams(2, 0.0)));
  EXPECT_TRUE(even_M_pairing(ModelParams::from_zeta2(4, 0.05)));
  for (int M : {2, 4, 6})
    for (double z2 : {0.02, 0.1}) EXPECT_TRUE(even_M_pairing(ModelParams::from_zeta2(M, z2)));
  EXPECT_THROW(even_M_pairing(ModelParams::from_zeta2(3, 0.1)), InvalidArgument);
}
