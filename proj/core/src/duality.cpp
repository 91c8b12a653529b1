#include "qes/duality.hpp"

#include <cmath>
#include <string>

#include "qes/error.hpp"

namespace qes {

namespace {

void require_closed_form(const ModelParams& params, int level_index) {
  const int M = params.M();
  if (M != 1 && M != 3)
    throw InvalidArgument("closed-form periodic eigenfunctions exist for M = 1 and M = 3 only");
  if (level_index < 0 || level_index >= M)
    throw InvalidArgument("level index " + std::to_string(level_index) + " out of range for M = " +
                          std::to_string(M));
}

}  // namespace

std::vector<cplx> DualSpectrum::energies() const {
  std::vector<cplx> out;
  out.reserve(levels.size());
  for (const auto& l : levels) out.push_back(l.Ehat);
  return out;
}

std::vector<cplx> anti_isospectral_map(const std::vector<cplx>& ascending) {
  const std::size_t n = ascending.size();
  std::vector<cplx> out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = -ascending[n - 1 - k];
  return out;
}

DualSpectrum dual_spectrum(const ModelParams& params) {
  k_index(params.M());
  const auto hyperbolic = qes_spectrum(params.with_model(Model::DSHG));
  DualSpectrum out{params.with_model(Model::DSG), {}};
  const auto mapped = anti_isospectral_map(hyperbolic.energies());
  const int n = static_cast<int>(mapped.size());
  for (int k = 0; k < n; ++k) {
    const int source = n - 1 - k;
    out.levels.push_back({mapped[k], source, hyperbolic.levels[source].label});
  }
  return out;
}

cplx dual_eigenfunction(const ModelParams& params, int level_index, cplx theta) {
  require_closed_form(params, level_index);
  const double zeta = params.zeta();
  const cplx c = std::cos(2.0 * theta);
  const cplx gauge = std::exp(cplx(0.0, 0.5 * zeta) * c);
  if (params.M() == 1) return gauge;

  const double root = std::sqrt(1.0 - 4.0 * params.zeta2());
  const cplx two_i_zeta(0.0, 2.0 * zeta);
  switch (level_index) {
    case 0: return (-two_i_zeta - (root - 1.0) * c) * gauge;
    case 1: return (-two_i_zeta + (root + 1.0) * c) * gauge;
    default: return std::sin(2.0 * theta) * gauge;
  }
}

double dual_closed_form_energy(const ModelParams& params, int level_index) {
  require_closed_form(params, level_index);
  const double z2 = params.zeta2();
  if (params.M() == 1) return -(1.0 - z2);
  const double root = std::sqrt(1.0 - 4.0 * z2);
  switch (level_index) {
    case 0: return -7.0 + z2 - 2.0 * root;
    case 1: return -7.0 + z2 + 2.0 * root;
    default: return z2 - 5.0;
  }
}

}  // namespace qes
