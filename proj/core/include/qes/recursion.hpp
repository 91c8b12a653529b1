#pragma once

#include <utility>
#include <vector>

#include "qes/model.hpp"
#include "qes/poly.hpp"

namespace qes {

/// Coefficients of the algebraic (Sl(2,R)) representation
///   R_{n+1} = (E - b_n) R_n - a_n R_{n-1},
///   a_n = -4 n (M - n) zeta^2,   b_n = 4 n (M - 1 - n) + 2M - 1 - zeta^2.
class RecursionCoefficients {
 public:
  explicit RecursionCoefficients(const ModelParams& params);

  double a(int n) const;
  double b(int n) const;

  int M() const { return M_; }
  double zeta2() const { return zeta2_; }

 private:
  int M_;
  double zeta2_;
};

/// A monic three-term recurrence in the physical energy E:
///   X_0 = 1,  X_n = (E + shift_n) X_{n-1} - coupling_n X_{n-2}   (n >= 1),
/// with coupling_1 multiplying the absent X_{-1} and therefore ignored.
struct ThreeTermRecurrence {
  Family family = Family::Derived;
  Sector sector = Sector::Zero;
  std::vector<cplx> shift;     ///< shift[n] for n = 1..length; shift[0] unused
  std::vector<cplx> coupling;  ///< coupling[n] for n = 1..length; coupling[0] unused

  int length() const { return static_cast<int>(shift.size()) - 1; }

  /// X_0 ... X_length as monic polynomials in E.
  std::vector<EnergyPolynomial> polynomials() const;

  /// X_0 ... X_length expanded directly in calE = E - offset. Cheaper on
  /// rounding than translating the E-form when offset is large.
  std::vector<EnergyPolynomial> polynomials_reduced(double offset) const;

  /// X_0(E) ... X_length(E).
  std::vector<cplx> values(cplx E) const;

  /// X_n(E) and dX_n/dE by running the recurrence.
  std::pair<cplx, cplx> evaluate(int n, cplx E) const;

  /// Norm of X_n with respect to the functional normalized to <1,1> = 1:
  /// the product coupling_2 ... coupling_{n+1}.
  cplx norm(int n) const;

 private:
  std::vector<EnergyPolynomial> expand(Variable variable, double offset) const;
};

ThreeTermRecurrence p_recurrence(const ModelParams& params, int n_max, Sector s = Sector::Zero);
ThreeTermRecurrence q_recurrence(const ModelParams& params, int n_max, Sector s = Sector::Half);
ThreeTermRecurrence r_recurrence(const ModelParams& params, int n_max);
ThreeTermRecurrence rbar_recurrence(const ModelParams& params, int n_max);

/// [P_0 ... P_{n_max}] from the even-sector recursion, monic in E.
std::vector<EnergyPolynomial> build_P(const ModelParams& params, int n_max,
                                      Sector s = Sector::Zero);

/// [Q_0 ... Q_{n_max}] from the odd-sector recursion, monic in E.
std::vector<EnergyPolynomial> build_Q(const ModelParams& params, int n_max,
                                      Sector s = Sector::Half);

/// [R_0 ... R_{n_max}], real coefficients.
std::vector<EnergyPolynomial> build_R(const ModelParams& params, int n_max);

/// [Rbar_0 ... Rbar_{n_max}], the cofactors of R_M beyond the invariant block.
std::vector<EnergyPolynomial> build_Rbar(const ModelParams& params, int n_max);

/// Zeros of X_n: companion-matrix start, then Aberth refinement with the
/// recurrence as evaluator. Stays accurate for the near-coincident zeros that
/// R_M inherits from its P/Q factors, where the monomial form is ill-conditioned.
std::vector<cplx> recurrence_roots(const ThreeTermRecurrence& rec, int n);

/// Zeros of R_M (the full set of QES energies).
std::vector<cplx> qes_energies(const ModelParams& params);

}  // namespace qes
