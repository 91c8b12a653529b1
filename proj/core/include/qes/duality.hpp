#pragma once

#include <vector>

#include "qes/model.hpp"
#include "qes/spectra.hpp"

namespace qes {

struct DualLevel {
  cplx Ehat;
  /// Index of the hyperbolic level (ascending order) this one came from.
  int source_index;
  LevelLabel label;
};

/// QES levels of the periodic model, ascending in Ehat.
struct DualSpectrum {
  ModelParams params;
  std::vector<DualLevel> levels;

  std::vector<cplx> energies() const;
};

/// Ehat_k = -E_{M-1-k} applied to an ascending list of levels. Applying it
/// twice returns the input exactly.
std::vector<cplx> anti_isospectral_map(const std::vector<cplx>& ascending);

/// Periodic-model levels from the hyperbolic spectrum of the same (M, zeta).
/// Requires odd M.
DualSpectrum dual_spectrum(const ModelParams& params);

/// Closed-form periodic eigenfunction for M = 1 (level 0) and M = 3
/// (levels 0, 1, 2 in ascending Ehat for 0 < zeta^2 < 1/4):
///   0: [-2i zeta - (sqrt(1-4zeta^2) - 1) cos 2theta] e^{i zeta cos 2theta / 2}
///   1: [-2i zeta + (sqrt(1-4zeta^2) + 1) cos 2theta] e^{i zeta cos 2theta / 2}
///   2: sin 2theta e^{i zeta cos 2theta / 2}
/// Throws InvalidArgument for other M or an out-of-range level.
cplx dual_eigenfunction(const ModelParams& params, int level_index, cplx theta);

/// Closed-form Ehat for the same (M, level_index) pairs as dual_eigenfunction.
double dual_closed_form_energy(const ModelParams& params, int level_index);

}  // namespace qes
