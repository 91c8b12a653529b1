#include "qes/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "qes/error.hpp"
#include "qes/recursion.hpp"

namespace qes {

namespace {

constexpr double kImaginaryTolerance = 1e-9;
constexpr double kDegeneracyTolerance = 1e-6;
constexpr double kPairingTolerance = 1e-8;
constexpr double kScanStep = 1e-3;
constexpr double kScanLimit = 1.0;

EnergyPolynomial realized(const EnergyPolynomial& p_in_E, const ModelParams& params) {
  const EnergyPolynomial p = in_variable(p_in_E, Variable::ReducedE, params);
  if (p.max_abs_imag() > kImaginaryTolerance * p.max_abs_coeff()) {
    std::ostringstream os;
    os << to_string(p.family()) << "_" << p.index() << " for M = " << params.M()
       << " has imaginary coefficient part " << p.max_abs_imag()
       << " (largest coefficient " << p.max_abs_coeff() << ")";
    throw NumericalError(os.str());
  }
  return p.real_part();
}

struct TopPair {
  double squared_gap;
  double mean_energy;
};

TopPair top_pair(int M, double zeta2) {
  const auto params = ModelParams::from_zeta2(M, zeta2);
  const auto r = roots(critical_polynomials(params).P);
  const std::size_t n = r.size();
  const cplx d = r[n - 1] - r[n - 2];
  const cplx mean = 0.5 * (r[n - 1] + r[n - 2]);
  return {(d * d).real(), shift_to_physical(mean, params).real()};
}

// Past degree ~10 the monomial coefficients lose digits to cancellation, so
// the final polish runs through the recurrence. Aberth stalls on exact double
// roots (at zeta_c), where the Newton-polished roots are kept instead.
std::vector<cplx> critical_roots(const EnergyPolynomial& p, const ThreeTermRecurrence& rec,
                                 const ModelParams& params) {
  std::vector<cplx> start;
  bool polished = true;
  try {
    start = roots(p);
  } catch (const NumericalError&) {
    start = companion_roots(p);
    polished = false;
  }
  const double c = energy_shift(params);
  const int n = rec.length();
  try {
    auto out = refine_roots(start, [&](cplx calE) { return rec.evaluate(n, calE + c); });
    // p has real coefficients; drop imaginary parts at rounding level.
    for (cplx& z : out)
      if (std::abs(z.imag()) <= 1e-14 * (1.0 + std::abs(z))) z.imag(0.0);
    sort_roots(out);
    return out;
  } catch (const NumericalError&) {
    if (!polished) throw;
    return start;
  }
}

}  // namespace

std::string_view to_string(LevelLabel label) {
  switch (label) {
    case LevelLabel::P: return "E_P";
    case LevelLabel::Q: return "E_Q";
    case LevelLabel::R: return "E_R";
  }
  return "?";
}

std::vector<cplx> QesSpectrum::energies() const {
  std::vector<cplx> out;
  out.reserve(levels.size());
  for (const auto& level : levels) out.push_back(level.E);
  return out;
}

bool QesSpectrum::all_real() const {
  return std::all_of(levels.begin(), levels.end(), [](const Level& l) { return l.is_real; });
}

CriticalPolynomials critical_polynomials(const ModelParams& params) {
  const int k = k_index(params.M());
  const double c = energy_shift(params);
  const auto P = p_recurrence(params, k + 1, Sector::Zero).polynomials_reduced(c)[k + 1];
  const auto Q = q_recurrence(params, k, Sector::Half).polynomials_reduced(c)[k];
  return {realized(P, params), realized(Q, params)};
}

QesSpectrum qes_spectrum(const ModelParams& params) {
  QesSpectrum spectrum{params, {}, {}};
  auto add = [&](cplx E, LevelLabel label) {
    spectrum.levels.push_back({E, label, is_real_energy(E)});
  };

  if (params.M() % 2 == 1) {
    const int k = k_index(params.M());
    const auto crit = critical_polynomials(params);
    for (cplx calE : critical_roots(crit.P, p_recurrence(params, k + 1, Sector::Zero), params))
      add(shift_to_physical(calE, params), LevelLabel::P);
    if (crit.Q.degree() >= 1)
      for (cplx calE : critical_roots(crit.Q, q_recurrence(params, k, Sector::Half), params))
        add(shift_to_physical(calE, params), LevelLabel::Q);
  } else {
    for (cplx E : qes_energies(params)) add(E, LevelLabel::R);
  }

  std::stable_sort(spectrum.levels.begin(), spectrum.levels.end(),
                   [](const Level& a, const Level& b) {
                     if (a.E.real() != b.E.real()) return a.E.real() < b.E.real();
                     if (a.E.imag() != b.E.imag()) return a.E.imag() < b.E.imag();
                     return a.label < b.label;
                   });

  const auto& lv = spectrum.levels;
  for (std::size_t i = 0; i < lv.size(); ++i)
    for (std::size_t j = i + 1; j < lv.size(); ++j)
      if (lv[i].label == lv[j].label &&
          std::abs(lv[i].E - lv[j].E) <= kDegeneracyTolerance * (1.0 + std::abs(lv[i].E)))
        spectrum.degenerate_pairs.emplace_back(static_cast<int>(i), static_cast<int>(j));
  return spectrum;
}

CriticalCoupling critical_coupling(int M, double tol) {
  k_index(M);
  if (!(tol > 0.0)) throw InvalidArgument("critical_coupling needs a positive tolerance");
  CriticalCoupling out;
  out.M = M;
  if (M == 1) {
    out.finite = false;
    out.zeta_c_squared = std::numeric_limits<double>::infinity();
    out.degenerate_energy = std::numeric_limits<double>::quiet_NaN();
    return out;
  }

  std::vector<std::pair<double, double>> trace;
  double lo = 0.0;
  double hi = -1.0;
  TopPair lo_pair = top_pair(M, 0.0);
  trace.emplace_back(0.0, lo_pair.squared_gap);
  for (int i = 1; i * kScanStep <= kScanLimit + 1e-12; ++i) {
    const double z2 = i * kScanStep;
    const TopPair pair = top_pair(M, z2);
    trace.emplace_back(z2, pair.squared_gap);
    if (pair.squared_gap < 0.0) {
      hi = z2;
      break;
    }
    lo = z2;
    lo_pair = pair;
  }
  if (hi < 0.0 || lo_pair.squared_gap < 0.0) {
    std::ostringstream os;
    os << "no coalescence of the two highest levels found for M = " << M << " on (0, "
       << kScanLimit << "]; last samples:";
    for (std::size_t i = trace.size() > 5 ? trace.size() - 5 : 0; i < trace.size(); ++i)
      os << " (" << trace[i].first << ", " << trace[i].second << ")";
    throw NumericalError(os.str());
  }

  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const TopPair pair = top_pair(M, mid);
    if (pair.squared_gap < 0.0) {
      hi = mid;
    } else {
      lo = mid;
      lo_pair = pair;
    }
  }

  out.finite = true;
  out.zeta_c_squared = 0.5 * (lo + hi);
  out.degenerate_energy = lo_pair.mean_energy;
  out.bracket_width = hi - lo;
  return out;
}

double FactorizationReport::max_remainder() const {
  double m = r_vs_pq_distance.value_or(0.0);
  for (const auto& e : entries) m = std::max(m, e.remainder_norm);
  return m;
}

FactorizationReport check_factorization(const ModelParams& params, int n_extra) {
  if (n_extra < 0) throw InvalidArgument("n_extra must be nonnegative");
  FactorizationReport report;
  const int M = params.M();

  const auto R = build_R(params, M + n_extra);
  const auto Rbar = build_Rbar(params, n_extra);
  for (int n = 1; n <= n_extra; ++n) {
    const auto div = divide_exact(R[M + n], R[M]);
    report.entries.push_back({"R_{M+n} / R_M", n, div.remainder_norm});
    report.entries.push_back(
        {"R_{M+n} - R_M Rbar_n", n, coefficient_distance(R[M + n], mul(R[M], Rbar[n]))});
  }

  if (M % 2 == 1) {
    const int k = k_index(M);
    const auto P = build_P(params, k + 1 + n_extra, Sector::Zero);
    const auto Q = build_Q(params, k + n_extra, Sector::Half);
    for (int n = 1; n <= n_extra; ++n) {
      report.entries.push_back(
          {"P_{k+n+1} / P_{k+1}", n, divide_exact(P[k + n + 1], P[k + 1]).remainder_norm});
      report.entries.push_back({"Q_{k+n} / Q_k", n, divide_exact(Q[k + n], Q[k]).remainder_norm});
    }
    report.r_vs_pq_distance = coefficient_distance(R[M], mul(P[k + 1], Q[k]));
  }
  return report;
}

bool even_M_pairing(const ModelParams& params) {
  if (params.M() % 2 != 0)
    throw InvalidArgument("even_M_pairing needs even M, got " + std::to_string(params.M()));
  const auto r = qes_energies(params);
  std::vector<cplx> conj(r.size());
  std::transform(r.begin(), r.end(), conj.begin(), [](cplx z) { return std::conj(z); });
  if (matching_distance(r, conj) > kPairingTolerance) return false;
  if (params.zeta() == 0.0) return true;
  return std::any_of(r.begin(), r.end(), [](cplx z) { return !is_real_energy(z); });
}

}  // namespace qes
