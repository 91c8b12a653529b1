#pragma once

#include <functional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "qes/model.hpp"

namespace qes {

/// Which energy variable a polynomial is written in.
enum class Variable { E, ReducedE };

/// Polynomial family tag. Derived marks products/quotients.
enum class Family { P, Q, R, Rbar, Derived };

/// Sector parameter s of the even/odd recursions, s in {0, 1/2}.
enum class Sector { Zero, Half };

double sector_value(Sector s);
Sector parse_sector(double s);

std::string_view to_string(Variable v);
std::string_view to_string(Family f);

/// Monic polynomial in an energy variable with complex coefficients,
/// stored in ascending degree order.
class EnergyPolynomial {
 public:
  /// Throws InvalidArgument unless coeffs is nonempty and its last entry is exactly 1.
  explicit EnergyPolynomial(std::vector<cplx> coeffs, Variable variable = Variable::E,
                            Family family = Family::Derived, int index = -1,
                            Sector sector = Sector::Zero);

  static EnergyPolynomial one(Variable variable = Variable::E);

  std::span<const cplx> coeffs() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  Variable variable() const { return variable_; }
  Family family() const { return family_; }
  int index() const { return index_; }
  Sector sector() const { return sector_; }

  cplx operator()(cplx z) const;

  /// Value and first derivative by Horner's scheme.
  std::pair<cplx, cplx> value_and_derivative(cplx z) const;

  /// sum |c_i| |z|^i, the natural rounding scale of a Horner evaluation.
  double evaluation_scale(cplx z) const;

  double max_abs_coeff() const;
  double max_abs_imag() const;

  EnergyPolynomial tagged(Family family, int index, Sector sector = Sector::Zero) const;

  /// q(y) = p(y + offset), written in the given variable.
  EnergyPolynomial translated(double offset, Variable target) const;

  /// Copy with imaginary parts of all coefficients dropped.
  EnergyPolynomial real_part() const;

 private:
  std::vector<cplx> coeffs_;
  Variable variable_;
  Family family_;
  int index_;
  Sector sector_;
};

cplx eval(const EnergyPolynomial& p, cplx z);

/// Coefficient convolution. Throws InvalidArgument on a variable mismatch.
EnergyPolynomial mul(const EnergyPolynomial& p, const EnergyPolynomial& q);

struct Division {
  EnergyPolynomial quotient;
  /// max |remainder coefficient| / max |coefficient of the dividend|.
  double remainder_norm;
};

/// Synthetic division by a monic divisor of degree <= deg p.
Division divide_exact(const EnergyPolynomial& p, const EnergyPolynomial& d);

/// max_i |p_i - q_i| / max_i |p_i| over the padded coefficient vectors.
double coefficient_distance(const EnergyPolynomial& p, const EnergyPolynomial& q);

/// Rewrites p in the requested variable using calE = E - (M^2 - zeta^2).
EnergyPolynomial in_variable(const EnergyPolynomial& p, Variable target,
                             const ModelParams& params);

/// All complex roots with multiplicity: companion-matrix eigenvalues, Newton
/// polished, sorted by (real, imag). Throws NumericalError with the achieved
/// residual when polishing cannot bring |p(root)| near rounding level.
std::vector<cplx> roots(const EnergyPolynomial& p);

/// Unpolished companion-matrix eigenvalues, suitable as starting values for
/// refine_roots. Throws InvalidArgument for degree < 1.
std::vector<cplx> companion_roots(const EnergyPolynomial& p);

/// Evaluator returning (f(z), f'(z)) for simultaneous refinement.
using ValueAndDerivative = std::function<std::pair<cplx, cplx>(cplx)>;

/// Aberth-Ehrlich simultaneous refinement of a full root set of a degree-n
/// function. The evaluator may be any stable scheme (e.g. a recurrence) and
/// need not go through monomial coefficients. Result sorted by (real, imag).
std::vector<cplx> refine_roots(std::vector<cplx> initial, const ValueAndDerivative& f,
                               int max_iterations = 200);

/// Lexicographic (real, imag) ordering used for every reported root list.
void sort_roots(std::vector<cplx>& values);

/// |Im E| <= 1e-8 (1 + |E|).
bool is_real_energy(cplx E);

/// Bottleneck optimal-matching distance between two equal-size multisets:
/// min over bijections of the max pairwise distance.
double matching_distance(std::span<const cplx> a, std::span<const cplx> b);

}  // namespace qes
