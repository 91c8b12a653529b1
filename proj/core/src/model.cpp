#include "qes/model.hpp"

#include <cmath>
#include <string>

#include "qes/error.hpp"

namespace qes {

std::string_view to_string(Model model) {
  return model == Model::DSHG ? "dshg" : "dsg";
}

Model parse_model(std::string_view text) {
  if (text == "dshg") return Model::DSHG;
  if (text == "dsg") return Model::DSG;
  throw InvalidArgument("unknown model '" + std::string(text) + "' (expected dshg or dsg)");
}

ModelParams::ModelParams(int M, double zeta, double zeta2, Model model)
    : M_(M), zeta_(zeta), zeta2_(zeta2), model_(model) {
  if (M < 1) throw InvalidArgument("M must be a positive integer, got " + std::to_string(M));
  if (!std::isfinite(zeta) || !std::isfinite(zeta2))
    throw InvalidArgument("coupling zeta must be finite");
}

ModelParams::ModelParams(int M, double zeta, Model model)
    : ModelParams(M, zeta, zeta * zeta, model) {}

ModelParams ModelParams::from_zeta2(int M, double zeta2, Model model) {
  if (!(zeta2 >= 0.0)) throw InvalidArgument("zeta^2 must be nonnegative for real zeta");
  return ModelParams(M, std::sqrt(zeta2), zeta2, model);
}

ModelParams ModelParams::with_model(Model model) const {
  return ModelParams(M_, zeta_, zeta2_, model);
}

ModelParams ModelParams::with_zeta2(double zeta2) const {
  return from_zeta2(M_, zeta2, model_);
}

cplx potential(const ModelParams& params, cplx coordinate) {
  const cplx iM(0.0, params.M());
  if (params.model() == Model::DSHG) {
    const cplx w = params.zeta() * std::cosh(2.0 * coordinate) - iM;
    return -w * w;
  }
  const cplx w = params.zeta() * std::cos(2.0 * coordinate) - iM;
  return w * w;
}

double energy_shift(const ModelParams& params) {
  const double M = params.M();
  return M * M - params.zeta2();
}

cplx shift_to_physical(cplx calE, const ModelParams& params) {
  return calE + energy_shift(params);
}

cplx shift_to_reduced(cplx E, const ModelParams& params) {
  return E - energy_shift(params);
}

ShiftedEnergy ShiftedEnergy::from_reduced(cplx calE, const ModelParams& params) {
  return {calE, shift_to_physical(calE, params)};
}

ShiftedEnergy ShiftedEnergy::from_physical(cplx E, const ModelParams& params) {
  return {shift_to_reduced(E, params), E};
}

int k_index(int M) {
  if (M < 1 || M % 2 == 0)
    throw InvalidArgument("critical polynomials need odd positive M, got " + std::to_string(M));
  return (M - 1) / 2;
}

}  // namespace qes
