#include "qes/poly.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "qes/error.hpp"

namespace qes {

namespace {

constexpr int kMaxNewtonSteps = 50;
constexpr double kPolishTarget = 1e-13;
constexpr double kPolishFailure = 1e-10;

bool all_real(std::span<const cplx> c) {
  return std::all_of(c.begin(), c.end(), [](cplx v) { return v.imag() == 0.0; });
}

// Fujiwara-style scale so the companion entries are O(1).
double root_scale(std::span<const cplx> c) {
  const int n = static_cast<int>(c.size()) - 1;
  double rho = 0.0;
  for (int i = 0; i < n; ++i) {
    const double m = std::abs(c[i]);
    if (m > 0.0) rho = std::max(rho, std::pow(m, 1.0 / (n - i)));
  }
  return rho > 0.0 ? rho : 1.0;
}

std::vector<cplx> companion_eigenvalues(std::span<const cplx> c) {
  const int n = static_cast<int>(c.size()) - 1;
  const double rho = root_scale(c);
  std::vector<cplx> out;
  out.reserve(n);
  if (all_real(c)) {
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i < n; ++i) C(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) C(i, n - 1) = -c[i].real() * std::pow(rho, i - n);
    Eigen::EigenSolver<Eigen::MatrixXd> es(C, false);
    if (es.info() != Eigen::Success) throw NumericalError("companion eigensolver did not converge");
    for (int i = 0; i < n; ++i) out.push_back(es.eigenvalues()(i) * rho);
  } else {
    Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 1; i < n; ++i) C(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) C(i, n - 1) = -c[i] * std::pow(rho, i - n);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(C, false);
    if (es.info() != Eigen::Success) throw NumericalError("companion eigensolver did not converge");
    for (int i = 0; i < n; ++i) out.push_back(es.eigenvalues()(i) * rho);
  }
  return out;
}

bool try_augment(int u, const std::vector<std::vector<int>>& adj, std::vector<int>& match_b,
                 std::vector<char>& seen) {
  for (int v : adj[u]) {
    if (seen[v]) continue;
    seen[v] = 1;
    if (match_b[v] < 0 || try_augment(match_b[v], adj, match_b, seen)) {
      match_b[v] = u;
      return true;
    }
  }
  return false;
}

bool has_perfect_matching(const std::vector<std::vector<double>>& dist, double threshold) {
  const int n = static_cast<int>(dist.size());
  std::vector<std::vector<int>> adj(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (dist[i][j] <= threshold) adj[i].push_back(j);
  std::vector<int> match_b(n, -1);
  for (int u = 0; u < n; ++u) {
    std::vector<char> seen(n, 0);
    if (!try_augment(u, adj, match_b, seen)) return false;
  }
  return true;
}

}  // namespace

double sector_value(Sector s) { return s == Sector::Zero ? 0.0 : 0.5; }

Sector parse_sector(double s) {
  if (s == 0.0) return Sector::Zero;
  if (s == 0.5) return Sector::Half;
  std::ostringstream os;
  os << "sector parameter s must be 0 or 1/2, got " << s;
  throw InvalidArgument(os.str());
}

std::string_view to_string(Variable v) { return v == Variable::E ? "E" : "calE"; }

std::string_view to_string(Family f) {
  switch (f) {
    case Family::P: return "P";
    case Family::Q: return "Q";
    case Family::R: return "R";
    case Family::Rbar: return "Rbar";
    case Family::Derived: return "derived";
  }
  return "?";
}

EnergyPolynomial::EnergyPolynomial(std::vector<cplx> coeffs, Variable variable, Family family,
                                   int index, Sector sector)
    : coeffs_(std::move(coeffs)),
      variable_(variable),
      family_(family),
      index_(index),
      sector_(sector) {
  if (coeffs_.empty()) throw InvalidArgument("polynomial needs at least one coefficient");
  if (coeffs_.back() != cplx(1.0, 0.0)) throw InvalidArgument("polynomial must be monic");
  if (index_ < 0) index_ = degree();
}

EnergyPolynomial EnergyPolynomial::one(Variable variable) {
  return EnergyPolynomial({cplx(1.0)}, variable);
}

cplx EnergyPolynomial::operator()(cplx z) const {
  cplx acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

std::pair<cplx, cplx> EnergyPolynomial::value_and_derivative(cplx z) const {
  cplx value = 0.0;
  cplx deriv = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    deriv = deriv * z + value;
    value = value * z + *it;
  }
  return {value, deriv};
}

double EnergyPolynomial::evaluation_scale(cplx z) const {
  const double r = std::abs(z);
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * r + std::abs(*it);
  return acc;
}

double EnergyPolynomial::max_abs_coeff() const {
  double m = 0.0;
  for (cplx c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

double EnergyPolynomial::max_abs_imag() const {
  double m = 0.0;
  for (cplx c : coeffs_) m = std::max(m, std::abs(c.imag()));
  return m;
}

EnergyPolynomial EnergyPolynomial::tagged(Family family, int index, Sector sector) const {
  return EnergyPolynomial(coeffs_, variable_, family, index, sector);
}

EnergyPolynomial EnergyPolynomial::translated(double offset, Variable target) const {
  std::vector<cplx> a = coeffs_;
  const int n = degree();
  for (int i = 0; i < n; ++i)
    for (int j = n - 1; j >= i; --j) a[j] += offset * a[j + 1];
  return EnergyPolynomial(std::move(a), target, family_, index_, sector_);
}

EnergyPolynomial EnergyPolynomial::real_part() const {
  std::vector<cplx> a;
  a.reserve(coeffs_.size());
  for (cplx c : coeffs_) a.emplace_back(c.real(), 0.0);
  return EnergyPolynomial(std::move(a), variable_, family_, index_, sector_);
}

cplx eval(const EnergyPolynomial& p, cplx z) { return p(z); }

EnergyPolynomial mul(const EnergyPolynomial& p, const EnergyPolynomial& q) {
  if (p.variable() != q.variable())
    throw InvalidArgument("cannot multiply polynomials in different energy variables");
  std::vector<cplx> out(p.coeffs().size() + q.coeffs().size() - 1, cplx(0.0));
  for (std::size_t i = 0; i < p.coeffs().size(); ++i)
    for (std::size_t j = 0; j < q.coeffs().size(); ++j) out[i + j] += p.coeffs()[i] * q.coeffs()[j];
  return EnergyPolynomial(std::move(out), p.variable());
}

Division divide_exact(const EnergyPolynomial& p, const EnergyPolynomial& d) {
  if (p.variable() != d.variable())
    throw InvalidArgument("cannot divide polynomials in different energy variables");
  const int n = p.degree();
  const int k = d.degree();
  if (k > n) throw InvalidArgument("divisor degree exceeds dividend degree");

  std::vector<cplx> rem(p.coeffs().begin(), p.coeffs().end());
  std::vector<cplx> quot(n - k + 1, cplx(0.0));
  for (int i = n - k; i >= 0; --i) {
    quot[i] = rem[i + k];
    for (int j = 0; j <= k; ++j) rem[i + j] -= quot[i] * d.coeffs()[j];
  }
  quot.back() = 1.0;

  double rmax = 0.0;
  for (int i = 0; i < k; ++i) rmax = std::max(rmax, std::abs(rem[i]));
  const double pmax = p.max_abs_coeff();
  return {EnergyPolynomial(std::move(quot), p.variable()), pmax > 0.0 ? rmax / pmax : rmax};
}

double coefficient_distance(const EnergyPolynomial& p, const EnergyPolynomial& q) {
  const std::size_t n = std::max(p.coeffs().size(), q.coeffs().size());
  double diff = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const cplx a = i < p.coeffs().size() ? p.coeffs()[i] : cplx(0.0);
    const cplx b = i < q.coeffs().size() ? q.coeffs()[i] : cplx(0.0);
    diff = std::max(diff, std::abs(a - b));
  }
  const double scale = p.max_abs_coeff();
  return scale > 0.0 ? diff / scale : diff;
}

EnergyPolynomial in_variable(const EnergyPolynomial& p, Variable target,
                             const ModelParams& params) {
  if (p.variable() == target) return p;
  const double c = energy_shift(params);
  return target == Variable::ReducedE ? p.translated(c, target) : p.translated(-c, target);
}

void sort_roots(std::vector<cplx>& values) {
  std::sort(values.begin(), values.end(), [](cplx a, cplx b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
}

std::vector<cplx> companion_roots(const EnergyPolynomial& p) {
  if (p.degree() < 1) throw InvalidArgument("roots() needs a polynomial of degree >= 1");
  return companion_eigenvalues(p.coeffs());
}

std::vector<cplx> roots(const EnergyPolynomial& p) {
  std::vector<cplx> out = companion_roots(p);
  for (cplx& z : out) {
    auto [value, deriv] = p.value_and_derivative(z);
    for (int step = 0; step < kMaxNewtonSteps; ++step) {
      if (std::abs(value) <= kPolishTarget * p.evaluation_scale(z)) break;
      if (deriv == cplx(0.0)) break;
      const cplx next = z - value / deriv;
      auto [next_value, next_deriv] = p.value_and_derivative(next);
      if (!(std::abs(next_value) < std::abs(value))) break;
      z = next;
      value = next_value;
      deriv = next_deriv;
    }
    const double scale = p.evaluation_scale(z);
    if (std::abs(value) > kPolishFailure * scale) {
      std::ostringstream os;
      os << "root polishing did not converge near " << z << ": residual " << std::abs(value)
         << " vs scale " << scale;
      throw NumericalError(os.str());
    }
  }
  sort_roots(out);
  return out;
}

std::vector<cplx> refine_roots(std::vector<cplx> z, const ValueAndDerivative& f,
                               int max_iterations) {
  const std::size_t n = z.size();
  // Real starting points of a real polynomial stay real under the iteration,
  // so a complex pair seeded as two real values would never separate. Nudge
  // every start off the axis in a different direction; this also separates
  // coincident starts, which would make the repulsion term singular.
  for (std::size_t i = 0; i < n; ++i)
    z[i] += 1e-7 * (1.0 + std::abs(z[i])) * std::polar(1.0, 0.7 + 2.3 * static_cast<double>(i));

  double last_step = std::numeric_limits<double>::infinity();
  for (int it = 0; it < max_iterations; ++it) {
    double max_step = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto [value, deriv] = f(z[i]);
      if (value == cplx(0.0)) continue;
      if (deriv == cplx(0.0)) continue;
      const cplx ratio = value / deriv;
      cplx repulsion = 0.0;
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) repulsion += 1.0 / (z[i] - z[j]);
      const cplx w = ratio / (1.0 - ratio * repulsion);
      z[i] -= w;
      max_step = std::max(max_step, std::abs(w) / (1.0 + std::abs(z[i])));
    }
    last_step = max_step;
    if (max_step <= 1e-15) break;
  }
  if (!(last_step <= 1e-10)) {
    std::ostringstream os;
    os << "simultaneous root refinement stalled with relative step " << last_step;
    throw NumericalError(os.str());
  }
  sort_roots(z);
  return z;
}

bool is_real_energy(cplx E) { return std::abs(E.imag()) <= 1e-8 * (1.0 + std::abs(E)); }

double matching_distance(std::span<const cplx> a, std::span<const cplx> b) {
  if (a.size() != b.size()) throw InvalidArgument("matching_distance needs equal-size multisets");
  const std::size_t n = a.size();
  if (n == 0) return 0.0;
  std::vector<std::vector<double>> dist(n, std::vector<double>(n));
  std::vector<double> candidates;
  candidates.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      dist[i][j] = std::abs(a[i] - b[j]);
      candidates.push_back(dist[i][j]);
    }
  std::sort(candidates.begin(), candidates.end());
  std::size_t lo = 0;
  std::size_t hi = candidates.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (has_perfect_matching(dist, candidates[mid]))
      hi = mid;
    else
      lo = mid + 1;
  }
  return candidates[lo];
}

}  // namespace qes
