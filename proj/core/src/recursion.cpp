#include "qes/recursion.hpp"

#include <string>

#include "qes/error.hpp"

namespace qes {

namespace {

constexpr cplx kI(0.0, 1.0);

void require_nonnegative(int n_max) {
  if (n_max < 0) throw InvalidArgument("n_max must be nonnegative, got " + std::to_string(n_max));
}

ThreeTermRecurrence make_recurrence(Family family, Sector sector, int n_max) {
  require_nonnegative(n_max);
  ThreeTermRecurrence rec;
  rec.family = family;
  rec.sector = sector;
  rec.shift.assign(n_max + 1, cplx(0.0));
  rec.coupling.assign(n_max + 1, cplx(0.0));
  return rec;
}

}  // namespace

RecursionCoefficients::RecursionCoefficients(const ModelParams& params)
    : M_(params.M()), zeta2_(params.zeta2()) {}

double RecursionCoefficients::a(int n) const {
#ifdef QES_MUTATION_FLIP_A_SIGN
  return 4.0 * n * (M_ - n) * zeta2_;
#else
  return -4.0 * n * (M_ - n) * zeta2_;
#endif
}

double RecursionCoefficients::b(int n) const {
  return 4.0 * n * (M_ - 1 - n) + 2.0 * M_ - 1.0 - zeta2_;
}

std::vector<EnergyPolynomial> ThreeTermRecurrence::polynomials() const {
  return expand(Variable::E, 0.0);
}

std::vector<EnergyPolynomial> ThreeTermRecurrence::polynomials_reduced(double offset) const {
  return expand(Variable::ReducedE, offset);
}

std::vector<EnergyPolynomial> ThreeTermRecurrence::expand(Variable variable, double offset) const {
  std::vector<EnergyPolynomial> out;
  out.reserve(length() + 1);
  out.push_back(EnergyPolynomial::one(variable).tagged(family, 0, sector));
  for (int n = 1; n <= length(); ++n) {
    const auto prev = out.back().coeffs();
    const cplx s = shift[n] + offset;
    std::vector<cplx> next(n + 1, cplx(0.0));
    for (int i = 0; i < n; ++i) {
      next[i + 1] += prev[i];
      next[i] += s * prev[i];
    }
    if (n >= 2) {
      const auto prev2 = out[n - 2].coeffs();
      for (int i = 0; i <= n - 2; ++i) next[i] -= coupling[n] * prev2[i];
    }
    next.back() = 1.0;
    out.emplace_back(std::move(next), variable, family, n, sector);
  }
  return out;
}

std::vector<cplx> ThreeTermRecurrence::values(cplx E) const {
  std::vector<cplx> out(length() + 1);
  out[0] = 1.0;
  for (int n = 1; n <= length(); ++n) {
    out[n] = (E + shift[n]) * out[n - 1];
    if (n >= 2) out[n] -= coupling[n] * out[n - 2];
  }
  return out;
}

std::pair<cplx, cplx> ThreeTermRecurrence::evaluate(int n, cplx E) const {
  if (n < 0 || n > length()) throw InvalidArgument("recurrence index out of range");
  cplx x_prev = 0.0, x = 1.0;
  cplx d_prev = 0.0, d = 0.0;
  for (int m = 1; m <= n; ++m) {
    const cplx c = m >= 2 ? coupling[m] : cplx(0.0);
    const cplx x_next = (E + shift[m]) * x - c * x_prev;
    const cplx d_next = x + (E + shift[m]) * d - c * d_prev;
    x_prev = x;
    x = x_next;
    d_prev = d;
    d = d_next;
  }
  return {x, d};
}

cplx ThreeTermRecurrence::norm(int n) const {
  if (n < 0 || n + 1 > length()) throw InvalidArgument("norm index out of range");
  cplx g = 1.0;
  for (int m = 2; m <= n + 1; ++m) g *= coupling[m];
  return g;
}

ThreeTermRecurrence p_recurrence(const ModelParams& params, int n_max, Sector sector) {
  auto rec = make_recurrence(Family::P, sector, n_max);
  const double s = sector_value(sector);
  const double M = params.M();
  const cplx iz = kI * params.zeta();
  const cplx m_minus = M - iz;
  for (int n = 1; n <= n_max; ++n) {
    rec.shift[n] = 4.0 * n * n + 8.0 * n * (s - iz - 1.0) + 4.0 * s * s - 8.0 * s + 4.0 +
                   6.0 * iz - m_minus * m_minus;
    rec.coupling[n] = 8.0 * iz * double(n - 1) * double(2 * n - 3) * (M + 3.0 - 2.0 * s - 2.0 * n);
  }
  return rec;
}

ThreeTermRecurrence q_recurrence(const ModelParams& params, int n_max, Sector sector) {
  auto rec = make_recurrence(Family::Q, sector, n_max);
  const double s = sector_value(sector);
  const double M = params.M();
  const cplx iz = kI * params.zeta();
  const cplx m_minus = M - iz;
  for (int n = 1; n <= n_max; ++n) {
    rec.shift[n] = 4.0 * n * n + 4.0 * n * (2.0 * s - 2.0 * iz - 1.0) + 4.0 * s * s - 4.0 * s +
                   1.0 + 2.0 * iz - m_minus * m_minus;
    rec.coupling[n] = 8.0 * iz * double(n - 1) * double(2 * n - 1) * (M + 2.0 - 2.0 * s - 2.0 * n);
  }
  return rec;
}

ThreeTermRecurrence r_recurrence(const ModelParams& params, int n_max) {
  auto rec = make_recurrence(Family::R, Sector::Zero, n_max);
  const RecursionCoefficients ab(params);
  for (int m = 1; m <= n_max; ++m) {
    rec.shift[m] = -ab.b(m - 1);
    rec.coupling[m] = ab.a(m - 1);
  }
  return rec;
}

ThreeTermRecurrence rbar_recurrence(const ModelParams& params, int n_max) {
  auto rec = make_recurrence(Family::Rbar, Sector::Zero, n_max);
  const RecursionCoefficients ab(params);
  const int M = params.M();
  for (int m = 1; m <= n_max; ++m) {
    rec.shift[m] = -ab.b(M + m - 1);
    rec.coupling[m] = ab.a(M + m - 1);
  }
  return rec;
}

std::vector<EnergyPolynomial> build_P(const ModelParams& params, int n_max, Sector s) {
  return p_recurrence(params, n_max, s).polynomials();
}

std::vector<EnergyPolynomial> build_Q(const ModelParams& params, int n_max, Sector s) {
  return q_recurrence(params, n_max, s).polynomials();
}

std::vector<EnergyPolynomial> build_R(const ModelParams& params, int n_max) {
  return r_recurrence(params, n_max).polynomials();
}

std::vector<EnergyPolynomial> build_Rbar(const ModelParams& params, int n_max) {
  return rbar_recurrence(params, n_max).polynomials();
}

std::vector<cplx> recurrence_roots(const ThreeTermRecurrence& rec, int n) {
  if (n < 1 || n > rec.length()) throw InvalidArgument("recurrence_roots needs 1 <= n <= length");
  // Monomial residuals lose too much to cancellation past degree ~15 to judge
  // convergence, so the recurrence does both the polishing and the checking.
  const auto poly = rec.polynomials()[n];
  return refine_roots(companion_roots(poly), [&](cplx E) { return rec.evaluate(n, E); });
}

std::vector<cplx> qes_energies(const ModelParams& params) {
  return recurrence_roots(r_recurrence(params, params.M()), params.M());
}

}  // namespace qes
