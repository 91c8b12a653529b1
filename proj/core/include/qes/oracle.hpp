#pragma once

#include <Eigen/Core>
#include <functional>
#include <span>
#include <vector>

#include "qes/model.hpp"

namespace qes {

// ---------------------------------------------------------------------------
// Gauge Hamiltonian on the monomial block {z^0, ..., z^{M-1}}, z = e^{2x}:
//   H_g = -4 J_0^2 - 2i zeta J_+ + 2i zeta J_- + M^2 - zeta^2,
//   J_- = d/dz,  J_0 = z d/dz - n/2,  J_+ = z^2 d/dz - n z,  n = M - 1.
// Column j holds the image of z^j.
// ---------------------------------------------------------------------------

struct GaugeMatrix {
  int M;
  double zeta;
  Eigen::MatrixXcd entries;
};

GaugeMatrix gauge_matrix(const ModelParams& params);

/// Eigenvalues by Householder reduction to Hessenberg form followed by
/// single-shift complex QR with Wilkinson shifts. Sorted by (real, imag).
std::vector<cplx> hessenberg_qr_eigenvalues(Eigen::MatrixXcd A);

std::vector<cplx> gauge_matrix_eigs(const ModelParams& params);

/// Coefficients (ascending) of det(zI - A), recovered by a discrete Fourier
/// transform of determinant samples on a circle.
std::vector<cplx> characteristic_polynomial(const Eigen::MatrixXcd& A);

/// Optimal-matching distance between the zeros of R_M and the gauge-matrix
/// eigenvalues.
double oracle_equivalence_distance(const ModelParams& params);

/// max |c_i - r_i| / max |r_i| between det(E - H_g) and R_M.
double charpoly_identity_defect(const ModelParams& params);

// ---------------------------------------------------------------------------
// Eigenvalue-equation residuals of explicit eigenfunctions.
// ---------------------------------------------------------------------------

using Wavefunction = std::function<cplx(cplx)>;

/// max_p |-psi''(p) + V(p) psi(p) - E psi(p)| / max_p |psi(p)|, with V the
/// potential of params.model() and psi'' by central differences of step h
/// along the real direction. Throws NumericalError if psi vanishes everywhere.
double ode_residual(const ModelParams& params, cplx E, const Wavefunction& psi,
                    std::span<const cplx> points, double h = 1e-4);

/// Explicit hyperbolic eigenfunctions.
///   M1Ground:    e^{i zeta cosh 2x / 2}                              (M = 1)
///   M3Sinh:      sinh 2x e^{i zeta cosh 2x / 2}                      (M = 3, E = 5 - zeta^2)
///   M3Cosh:      (4i zeta + calE cosh 2x) e^{i zeta cosh 2x / 2}     (M = 3, calE from E)
///   GaugeSeries: e^{i zeta cosh 2x / 2} sum_j R_j(E) / ((2i zeta)^j j!) e^{(2j+1-M) x}
enum class HyperbolicForm { M1Ground, M3Sinh, M3Cosh, GaugeSeries };

Wavefunction hyperbolic_eigenfunction(const ModelParams& params, cplx E, HyperbolicForm form);

double ode_residual_dshg(const ModelParams& params, cplx E, HyperbolicForm form,
                         std::span<const cplx> points, double h = 1e-4);

/// Residual of the closed-form periodic eigenfunction of the given level.
double ode_residual_dsg(const ModelParams& params, cplx Ehat, int level_index,
                        std::span<const cplx> points, double h = 1e-4);

// ---------------------------------------------------------------------------
// Stokes-wedge probe for the M = 1 eigenfunction along x = u + i v.
// ---------------------------------------------------------------------------

struct Ray {
  int u_sign;  ///< +1 or -1
  double v;
};

/// True when v (mod pi) lies in (-pi, -pi/2) for u > 0 or (-pi/2, 0) for u < 0.
bool in_stokes_wedge(int u_sign, double v);

struct WedgeProbeReport {
  Ray ray;
  std::vector<double> radii;
  std::vector<double> magnitudes;
  bool decays = false;
  bool expected_decay = false;
};

/// Samples |psi(u + i v)| at |u| = radii. Requires M = 1 and E equal to its
/// QES level 1 - zeta^2.
WedgeProbeReport wedge_decay_probe(const ModelParams& params, cplx E, Ray ray,
                                   std::span<const double> radii);

}  // namespace qes
