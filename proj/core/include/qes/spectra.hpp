#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qes/model.hpp"
#include "qes/poly.hpp"

namespace qes {

/// Which critical polynomial produced a level. R marks even-M levels taken
/// directly from R_M, where there is no P/Q split.
enum class LevelLabel { P, Q, R };

std::string_view to_string(LevelLabel label);

struct Level {
  cplx E;
  LevelLabel label;
  bool is_real;
};

/// QES levels of the hyperbolic model, ascending by (real, imag).
struct QesSpectrum {
  ModelParams params;
  std::vector<Level> levels;
  /// Index pairs (i < j) of levels from the same family that coincide within
  /// 1e-6 (1 + |E_i|).
  std::vector<std::pair<int, int>> degenerate_pairs;

  std::vector<cplx> energies() const;
  bool all_real() const;
};

/// Levels from the zeros of P_{k+1} (labelled E_P) and Q_k (labelled E_Q) for
/// odd M = 2k+1; from R_M for even M. The model tag of params is ignored:
/// this is always the hyperbolic spectrum.
QesSpectrum qes_spectrum(const ModelParams& params);

/// P_{k+1} (s = 0) and Q_k (s = 1/2) for odd M, written in calE with the
/// imaginary parts (rounding noise) dropped.
struct CriticalPolynomials {
  EnergyPolynomial P;
  EnergyPolynomial Q;
};

/// Throws InvalidArgument for even M and NumericalError when an imaginary
/// coefficient part exceeds 1e-9 of the largest coefficient.
CriticalPolynomials critical_polynomials(const ModelParams& params);

struct CriticalCoupling {
  int M = 0;
  /// False for M = 1, whose single level never meets another.
  bool finite = false;
  double zeta_c_squared = 0.0;
  double degenerate_energy = 0.0;
  /// Final bracket width in zeta^2.
  double bracket_width = 0.0;
};

/// Smallest zeta^2 > 0 where the two highest P-family levels coalesce.
/// The squared gap (E_top - E_next)^2 is positive while both are real and
/// negative once they form a conjugate pair; a zeta^2 scan brackets the sign
/// change and bisection narrows it to tol.
CriticalCoupling critical_coupling(int M, double tol = 1e-10);

struct FactorizationEntry {
  std::string identity;
  int n = 0;
  double remainder_norm = 0.0;
};

struct FactorizationReport {
  std::vector<FactorizationEntry> entries;
  /// ||R_{2k+1} - P_{k+1} Q_k|| / ||R_{2k+1}|| (odd M only).
  std::optional<double> r_vs_pq_distance;

  double max_remainder() const;
};

/// Exact-division checks of the factorization identities for 1 <= n <= n_extra:
/// R_{M+n} / R_M and the cofactor against Rbar_n (any M); P_{k+n+1} / P_{k+1}
/// and Q_{k+n} / Q_k (odd M).
FactorizationReport check_factorization(const ModelParams& params, int n_extra);

/// For even M: true iff the zeros of R_M are closed under complex conjugation
/// within 1e-8 and, when zeta != 0, at least one of them is genuinely complex.
bool even_M_pairing(const ModelParams& params);

}  // namespace qes
