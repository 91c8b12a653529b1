#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <numbers>
#include <random>

#include "qes/error.hpp"
#include "qes/oracle.hpp"
#include "qes/recursion.hpp"
#include "qes/spectra.hpp"

using namespace qes;

TEST(GaugeMatrix, TridiagonalEntries) {
  const double zeta = 0.1;
  const auto g = gauge_matrix(ModelParams(3, zeta));
  const auto& A = g.entries;
  ASSERT_EQ(A.rows(), 3);
  const cplx i(0.0, 1.0);
  for (int j = 0; j < 3; ++j)
    EXPECT_NEAR(std::abs(A(j, j) - cplx(-4.0 * (j - 1) * (j - 1) + 9.0 - zeta * zeta)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(A(1, 0) - (-2.0 * i * zeta * (0.0 - 2.0))), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(A(2, 1) - (-2.0 * i * zeta * (1.0 - 2.0))), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(A(0, 1) - 2.0 * i * zeta * 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(A(1, 2) - 2.0 * i * zeta * 2.0), 0.0, 1e-15);
  EXPECT_EQ(A(2, 0), cplx(0.0));
  EXPECT_EQ(A(0, 2), cplx(0.0));
}

TEST(GaugeMatrixEigs, Examples) {
  const auto e1 = gauge_matrix_eigs(ModelParams::from_zeta2(1, 0.3));
  ASSERT_EQ(e1.size(), 1u);
  EXPECT_NEAR(std::abs(e1[0] - cplx(0.7)), 0.0, 1e-15);

  const auto e3 = gauge_matrix_eigs(ModelParams::from_zeta2(3, 0.01));
  const std::vector<cplx> expected = {4.99, 6.99 - 2 * std::sqrt(0.96), 6.99 + 2 * std::sqrt(0.96)};
  EXPECT_LT(matching_distance(e3, expected), 1e-12);
}

TEST(HessenbergQR, AgreesWithEigenOnRandomMatrices) {
  std::mt19937 rng(99);
  std::normal_distribution<double> g;
  for (int n = 1; n <= 12; ++n) {
    Eigen::MatrixXcd A(n, n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) A(r, c) = cplx(g(rng), g(rng));
    const auto mine = hessenberg_qr_eigenvalues(A);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(A, false);
    std::vector<cplx> ref(es.eigenvalues().data(), es.eigenvalues().data() + n);
    EXPECT_LT(matching_distance(mine, ref), 1e-10) << "n=" << n;
  }
}

TEST(HessenbergQR, DefectiveAndTriangularInputs) {
  Eigen::MatrixXcd J = Eigen::MatrixXcd::Zero(3, 3);
  J(0, 0) = J(1, 1) = J(2, 2) = 2.0;
  J(0, 1) = J(1, 2) = 1.0;
  const auto e = hessenberg_qr_eigenvalues(J);
  for (cplx z : e) EXPECT_NEAR(std::abs(z - cplx(2.0)), 0.0, 1e-5);
  EXPECT_TRUE(hessenberg_qr_eigenvalues(Eigen::MatrixXcd(0, 0)).empty());
}

TEST(CharacteristicPolynomial, ZerosAreEigenvalues) {
  Eigen::MatrixXcd A(3, 3);
  A << 1.0, 2.0, 0.0, cplx(0, 1), 3.0, 1.0, 0.0, 1.0, -2.0;
  const auto c = characteristic_polynomial(A);
  ASSERT_EQ(c.size(), 4u);
  EXPECT_NEAR(std::abs(c[3] - cplx(1.0)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(c[2] + A.trace()), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(c[0] + A.determinant()), 0.0, 1e-12);
}

TEST(OracleEquivalence, SmallForAllM) {
  for (int M = 1; M <= 9; ++M)
    for (double z2 : {0.0, 0.005, 0.01, 0.02, 0.025}) {
      const auto p = ModelParams::from_zeta2(M, z2);
      EXPECT_LT(oracle_equivalence_distance(p), 1e-8) << "M=" << M << " z2=" << z2;
      if (M <= 6) EXPECT_LT(charpoly_identity_defect(p), 1e-8);
    }
}

TEST(OracleEquivalence, LargeM) {
  for (int M : {16, 17, 21, 24, 25})
    for (double z2 : {0.005, 0.1, 0.5}) {
      const auto p = ModelParams::from_zeta2(M, z2);
      EXPECT_LT(oracle_equivalence_distance(p), 1e-8) << "M=" << M << " z2=" << z2;
      const auto spectrum = qes_spectrum(p).energies();
      EXPECT_LT(matching_distance(spectrum, gauge_matrix_eigs(p)), 1e-8) << "M=" << M << " z2=" << z2;
    }
}

namespace {

std::vector<cplx> segment(double lo, double hi, double imag, int n) {
  std::vector<cplx> pts;
  for (int i = 0; i < n; ++i) pts.emplace_back(lo + (hi - lo) * i / (n - 1), imag);
  return pts;
}

}  // namespace

TEST(OdeResidual, MOneGround) {
  const auto p = ModelParams::from_zeta2(1, 0.1);
  const auto pts = segment(-1.0, 1.0, -std::numbers::pi / 4, 41);
  EXPECT_LT(ode_residual_dshg(p, 0.9, HyperbolicForm::M1Ground, pts), 1e-6);
  EXPECT_GT(ode_residual_dshg(p, 1.0, HyperbolicForm::M1Ground, pts), 1e-2);
}

TEST(OdeResidual, MThreeClosedForms) {
  const double z2 = 0.01;
  const auto p = ModelParams::from_zeta2(3, z2);
  const auto pts = segment(-1.0, 1.0, 0.0, 41);
  EXPECT_LT(ode_residual_dshg(p, 5.0 - z2, HyperbolicForm::M3Sinh, pts), 1e-6);
  for (const auto& l : qes_spectrum(p).levels)
    if (l.label == LevelLabel::P) EXPECT_LT(ode_residual_dshg(p, l.E, HyperbolicForm::M3Cosh, pts), 1e-6);
  EXPECT_THROW(ode_residual_dshg(ModelParams(5, 0.1), 1.0, HyperbolicForm::M3Sinh, pts), InvalidArgument);
}

TEST(OdeResidual, GaugeSeriesAtEveryLevel) {
  const auto pts = segment(-0.8, 0.8, -0.3, 33);
  for (int M : {2, 3, 4, 5, 7})
    for (double z2 : {0.005, 0.02}) {
      const auto p = ModelParams::from_zeta2(M, z2);
      for (cplx E : qes_energies(p))
        EXPECT_LT(ode_residual_dshg(p, E, HyperbolicForm::GaugeSeries, pts), 1e-5) << "M=" << M << " E=" << E;
      const cplx off = qes_energies(p)[0] + 0.5;
      EXPECT_GT(ode_residual_dshg(p, off, HyperbolicForm::GaugeSeries, pts), 1e-3);
    }
}

TEST(OdeResidual, GenericWavefunction) {
  const auto p = ModelParams::from_zeta2(1, 0.0);
  // V = M^2 = 1 at zeta = 0, so e^{k x} solves -psi'' + psi = (1 - k^2) psi.
  const auto pts = segment(-1.0, 1.0, 0.0, 11);
  EXPECT_LT(ode_residual(p, 1.0 - 4.0, [](cplx x) { return std::exp(2.0 * x); }, pts), 1e-6);
  EXPECT_THROW(ode_residual(p, 0.0, [](cplx) { return cplx(0.0); }, pts), NumericalError);
}

TEST(StokesWedge, Membership) {
  const double pi = std::numbers::pi;
  EXPECT_TRUE(in_stokes_wedge(+1, -3 * pi / 4));
  EXPECT_FALSE(in_stokes_wedge(+1, -pi / 4));
  EXPECT_TRUE(in_stokes_wedge(-1, -pi / 4));
  EXPECT_FALSE(in_stokes_wedge(-1, -3 * pi / 4));
  EXPECT_TRUE(in_stokes_wedge(+1, pi / 4));  // periodic in pi
}

TEST(StokesWedge, ProbeExamples) {
  const double pi = std::numbers::pi;
  const auto p = ModelParams(1, 0.3);
  const std::vector<double> radii = {0.5, 1.0, 1.5, 2.0, 2.5, 3.0};
  const cplx E = 1.0 - 0.09;
  const auto a = wedge_decay_probe(p, E, {+1, -3 * pi / 4}, radii);
  EXPECT_TRUE(a.decays);
  EXPECT_TRUE(a.expected_decay);
  const auto b = wedge_decay_probe(p, E, {+1, -pi / 4}, radii);
  EXPECT_FALSE(b.decays);
  EXPECT_FALSE(b.expected_decay);
  const auto c = wedge_decay_probe(p, E, {-1, -pi / 4}, radii);
  EXPECT_TRUE(c.decays);
  ASSERT_EQ(c.magnitudes.size(), radii.size());
  EXPECT_THROW(wedge_decay_probe(ModelParams(3, 0.3), E, {+1, 0.0}, radii), InvalidArgument);
  EXPECT_THROW(wedge_decay_probe(p, E + 0.5, {+1, 0.0}, radii), InvalidArgument);
}
