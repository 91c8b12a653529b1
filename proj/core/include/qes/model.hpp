#pragma once

#include <complex>
#include <string_view>

namespace qes {

using cplx = std::complex<double>;

/// The two potentials handled by the library.
///   DSHG: V(x)     = -(zeta cosh 2x - iM)^2   (hyperbolic)
///   DSG:  V(theta) =  (zeta cos 2theta - iM)^2 (periodic dual)
enum class Model { DSHG, DSG };

std::string_view to_string(Model model);
Model parse_model(std::string_view text);

/// Coupling parameters (M, zeta) with the model selector.
///
/// The coupling is stored as zeta. When constructed from zeta^2 the positive
/// root is taken and the given zeta^2 is kept verbatim, so tabulated values
/// such as 0.01 are not perturbed by a square-root round trip.
class ModelParams {
 public:
  ModelParams(int M, double zeta, Model model = Model::DSHG);

  static ModelParams from_zeta2(int M, double zeta2, Model model = Model::DSHG);

  int M() const { return M_; }
  double zeta() const { return zeta_; }
  double zeta2() const { return zeta2_; }
  Model model() const { return model_; }

  ModelParams with_model(Model model) const;
  ModelParams with_zeta2(double zeta2) const;

 private:
  ModelParams(int M, double zeta, double zeta2, Model model);

  int M_;
  double zeta_;
  double zeta2_;
  Model model_;
};

/// Potential value at a complex coordinate (x for DSHG, theta for DSG).
cplx potential(const ModelParams& params, cplx coordinate);

/// M^2 - zeta^2, the offset between physical and reduced energy.
double energy_shift(const ModelParams& params);

/// Reduced energy calE = E - M^2 + zeta^2 -> physical E.
cplx shift_to_physical(cplx calE, const ModelParams& params);

/// Physical E -> reduced energy calE.
cplx shift_to_reduced(cplx E, const ModelParams& params);

/// A physical energy together with its reduced counterpart.
struct ShiftedEnergy {
  cplx calE;
  cplx E;

  static ShiftedEnergy from_reduced(cplx calE, const ModelParams& params);
  static ShiftedEnergy from_physical(cplx E, const ModelParams& params);
};

/// k = (M - 1) / 2 for odd M; the critical polynomials are P_{k+1} and Q_k.
/// Throws InvalidArgument for even or nonpositive M.
int k_index(int M);

}  // namespace qes
