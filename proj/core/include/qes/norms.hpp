#pragma once

#include <vector>

#include "qes/model.hpp"
#include "qes/poly.hpp"
#include "qes/recursion.hpp"

namespace qes {

/// gamma_n = a_1 a_2 ... a_n, the squared norm of R_n for the discrete
/// functional normalized to gamma_0 = 1. Zero for n >= M.
double norm(int n, const ModelParams& params);

/// Discrete measure carried by the M zeros of R_M.
struct WeightTable {
  ModelParams params;
  std::vector<double> gamma;     ///< gamma_0 ... gamma_M
  std::vector<cplx> energies;    ///< zeros of R_M, ascending
  std::vector<cplx> weights;     ///< omega_k paired with energies[k]

  double max_weight_imag_ratio() const;
};

/// Solves sum_k omega_k R_j(E_k) = delta_{j0} for j = 0..M-1. Throws
/// NumericalError when the zeros are (numerically) degenerate.
WeightTable weights(const ModelParams& params);

/// G_ij = sum_k omega_k X_i(E_k) X_j(E_k) for i, j < nodes.size().
std::vector<std::vector<cplx>> gram_matrix(const ThreeTermRecurrence& rec,
                                           const std::vector<cplx>& nodes,
                                           const std::vector<cplx>& weights);

/// Worst |G_ij - gamma_i delta_ij| / max(|gamma_i|, |gamma_j|) over the Gram matrix.
double gram_defect(const WeightTable& table);

/// Sign of gamma_n for 0 <= n < M together with the pattern it follows.
struct NormSignReport {
  std::vector<int> signs;
  bool even_positive = true;
  bool odd_negative = true;
};

NormSignReport norm_signs(const ModelParams& params);

/// Same construction for the first (complex) representation on the zeros of
/// the critical polynomial P_{k+1} or Q_k. Nothing here is expected to be real.
struct ComplexWeightTable {
  Family family = Family::P;
  std::vector<cplx> gamma;
  std::vector<cplx> energies;
  std::vector<cplx> weights;
  double gram_defect = 0.0;
};

ComplexWeightTable complex_weights(const ModelParams& params, Family family);

}  // namespace qes
