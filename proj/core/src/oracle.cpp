#include "qes/oracle.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "qes/duality.hpp"
#include "qes/error.hpp"
#include "qes/poly.hpp"
#include "qes/recursion.hpp"

namespace qes {

namespace {

constexpr cplx kI(0.0, 1.0);

void reduce_to_hessenberg(Eigen::MatrixXcd& A) {
  const Eigen::Index n = A.rows();
  for (Eigen::Index k = 0; k + 2 < n; ++k) {
    const Eigen::Index m = n - k - 1;
    Eigen::VectorXcd v = A.block(k + 1, k, m, 1);
    const double alpha = v.norm();
    if (alpha == 0.0) continue;
    const cplx x0 = v(0);
    const cplx phase = std::abs(x0) == 0.0 ? cplx(1.0) : x0 / std::abs(x0);
    v(0) += phase * alpha;
    const double vv = v.squaredNorm();
    if (vv == 0.0) continue;

    // A <- (I - 2 v v^H / vv) A (I - 2 v v^H / vv)
    for (Eigen::Index j = k; j < n; ++j) {
      const cplx s = v.dot(A.col(j).segment(k + 1, m));  // v^H column
      A.col(j).segment(k + 1, m) -= (2.0 * s / vv) * v;
    }
    for (Eigen::Index i = 0; i < n; ++i) {
      const cplx s = A.row(i).segment(k + 1, m).transpose().cwiseProduct(v).sum();
      A.row(i).segment(k + 1, m) -= (2.0 * s / vv) * v.adjoint();
    }
    for (Eigen::Index i = k + 2; i < n; ++i) A(i, k) = 0.0;
  }
}

struct Givens {
  double c;
  cplx s;
};

// [c s; -conj(s) c] [x; y] = [r; 0]
Givens make_givens(cplx x, cplx y) {
  const double ax = std::abs(x);
  const double ay = std::abs(y);
  if (ay == 0.0) return {1.0, 0.0};
  if (ax == 0.0) return {0.0, 1.0};
  const double nrm = std::hypot(ax, ay);
  return {ax / nrm, (x / ax) * std::conj(y) / nrm};
}

cplx wilkinson_shift(const Eigen::MatrixXcd& H, Eigen::Index hi) {
  const cplx a = H(hi - 1, hi - 1);
  const cplx b = H(hi - 1, hi);
  const cplx c = H(hi, hi - 1);
  const cplx d = H(hi, hi);
  const cplx half_trace = 0.5 * (a + d);
  const cplx half_diff = 0.5 * (a - d);
  const cplx disc = std::sqrt(half_diff * half_diff + b * c);
  const cplx mu1 = half_trace + disc;
  const cplx mu2 = half_trace - disc;
  return std::abs(mu1 - d) < std::abs(mu2 - d) ? mu1 : mu2;
}

cplx psi_prefactor(double zeta, cplx x) {
  return std::exp(cplx(0.0, 0.5 * zeta) * std::cosh(2.0 * x));
}

}  // namespace

GaugeMatrix gauge_matrix(const ModelParams& params) {
  const int M = params.M();
  const double zeta = params.zeta();
  const double half_spin = 0.5 * (M - 1);
  Eigen::MatrixXcd G = Eigen::MatrixXcd::Zero(M, M);
  for (int j = 0; j < M; ++j) {
    const double j0 = j - half_spin;
    G(j, j) = -4.0 * j0 * j0 + double(M) * M - params.zeta2();
    if (j + 1 < M) G(j + 1, j) = -2.0 * kI * zeta * double(j - (M - 1));
    if (j > 0) G(j - 1, j) = 2.0 * kI * zeta * double(j);
  }
  return {M, zeta, std::move(G)};
}

std::vector<cplx> hessenberg_qr_eigenvalues(Eigen::MatrixXcd H) {
  const Eigen::Index n = H.rows();
  if (H.cols() != n) throw InvalidArgument("eigenvalues need a square matrix");
  std::vector<cplx> eig(n);
  if (n == 0) return {};
  reduce_to_hessenberg(H);

  const double eps = std::numeric_limits<double>::epsilon();
  const double fallback_scale = std::max(H.cwiseAbs().maxCoeff(), 1e-300);
  constexpr int kMaxIterations = 100;

  Eigen::Index hi = n - 1;
  int iter = 0;
  while (hi > 0) {
    Eigen::Index l = hi;
    for (; l > 0; --l) {
      double s = std::abs(H(l - 1, l - 1)) + std::abs(H(l, l));
      if (s == 0.0) s = fallback_scale;
      if (std::abs(H(l, l - 1)) <= eps * s) {
        H(l, l - 1) = 0.0;
        break;
      }
    }
    if (l == hi) {
      eig[hi] = H(hi, hi);
      --hi;
      iter = 0;
      continue;
    }
    if (++iter > kMaxIterations) {
      std::ostringstream os;
      os << "QR iteration failed to deflate eigenvalue " << hi << " after " << kMaxIterations
         << " sweeps";
      throw NumericalError(os.str());
    }

    const cplx mu = iter % 11 == 0 ? H(hi, hi) + std::abs(H(hi, hi - 1))
                                   : wilkinson_shift(H, hi);
    for (Eigen::Index k = l; k <= hi; ++k) H(k, k) -= mu;

    std::vector<Givens> rot;
    rot.reserve(hi - l);
    for (Eigen::Index k = l; k < hi; ++k) {
      const Givens g = make_givens(H(k, k), H(k + 1, k));
      rot.push_back(g);
      for (Eigen::Index j = k; j <= hi; ++j) {
        const cplx t1 = H(k, j);
        const cplx t2 = H(k + 1, j);
        H(k, j) = g.c * t1 + g.s * t2;
        H(k + 1, j) = -std::conj(g.s) * t1 + g.c * t2;
      }
    }
    for (Eigen::Index k = l; k < hi; ++k) {
      const Givens& g = rot[k - l];
      const Eigen::Index last = std::min(k + 2, hi);
      for (Eigen::Index i = l; i <= last; ++i) {
        const cplx t1 = H(i, k);
        const cplx t2 = H(i, k + 1);
        H(i, k) = t1 * g.c + t2 * std::conj(g.s);
        H(i, k + 1) = -t1 * g.s + t2 * g.c;
      }
    }
    for (Eigen::Index k = l; k <= hi; ++k) H(k, k) += mu;
  }
  eig[0] = H(0, 0);
  sort_roots(eig);
  return eig;
}

std::vector<cplx> gauge_matrix_eigs(const ModelParams& params) {
  return hessenberg_qr_eigenvalues(gauge_matrix(params).entries);
}

std::vector<cplx> characteristic_polynomial(const Eigen::MatrixXcd& A) {
  const Eigen::Index n = A.rows();
  const Eigen::Index samples = n + 1;
  const double rho = std::max(1.0, A.cwiseAbs().rowwise().sum().maxCoeff());
  const double two_pi = 2.0 * std::numbers::pi;

  std::vector<cplx> det(samples);
  for (Eigen::Index j = 0; j < samples; ++j) {
    const cplx z = rho * std::polar(1.0, two_pi * double(j) / double(samples));
    Eigen::MatrixXcd shifted = -A;
    shifted.diagonal().array() += z;
    det[j] = shifted.partialPivLu().determinant();
  }

  std::vector<cplx> coeffs(samples);
  for (Eigen::Index k = 0; k < samples; ++k) {
    cplx acc = 0.0;
    for (Eigen::Index j = 0; j < samples; ++j)
      acc += det[j] * std::polar(1.0, -two_pi * double(j * k) / double(samples));
    coeffs[k] = acc / (double(samples) * std::pow(rho, double(k)));
  }
  return coeffs;
}

double oracle_equivalence_distance(const ModelParams& params) {
  const auto from_recursion = qes_energies(params);
  const auto from_gauge = gauge_matrix_eigs(params);
  return matching_distance(from_recursion, from_gauge);
}

double charpoly_identity_defect(const ModelParams& params) {
  const auto R = build_R(params, params.M())[params.M()];
  const auto c = characteristic_polynomial(gauge_matrix(params).entries);
  double diff = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) diff = std::max(diff, std::abs(c[i] - R.coeffs()[i]));
  return diff / R.max_abs_coeff();
}

double ode_residual(const ModelParams& params, cplx E, const Wavefunction& psi,
                    std::span<const cplx> points, double h) {
  if (!(h > 0.0)) throw InvalidArgument("finite-difference step must be positive");
  double worst = 0.0;
  double psi_max = 0.0;
  for (cplx p : points) {
    const cplx f0 = psi(p);
    const cplx second = (psi(p + h) - 2.0 * f0 + psi(p - h)) / (h * h);
    const cplx r = -second + potential(params, p) * f0 - E * f0;
    worst = std::max(worst, std::abs(r));
    psi_max = std::max(psi_max, std::abs(f0));
  }
  if (psi_max == 0.0) throw NumericalError("wavefunction vanishes at every sample point");
  return worst / psi_max;
}

Wavefunction hyperbolic_eigenfunction(const ModelParams& params, cplx E, HyperbolicForm form) {
  const int M = params.M();
  const double zeta = params.zeta();
  switch (form) {
    case HyperbolicForm::M1Ground:
      if (M != 1) throw InvalidArgument("the ground form applies to M = 1");
      return [zeta](cplx x) { return psi_prefactor(zeta, x); };
    case HyperbolicForm::M3Sinh:
      if (M != 3) throw InvalidArgument("the sinh form applies to M = 3");
      return [zeta](cplx x) { return std::sinh(2.0 * x) * psi_prefactor(zeta, x); };
    case HyperbolicForm::M3Cosh: {
      if (M != 3) throw InvalidArgument("the cosh form applies to M = 3");
      const cplx calE = shift_to_reduced(E, params);
      return [zeta, calE](cplx x) {
        return (4.0 * kI * zeta + calE * std::cosh(2.0 * x)) * psi_prefactor(zeta, x);
      };
    }
    case HyperbolicForm::GaugeSeries: {
      if (zeta == 0.0) throw InvalidArgument("the gauge series needs zeta != 0");
      const auto R = r_recurrence(params, M).values(E);
      std::vector<cplx> v(M);
      cplx denom = 1.0;
      for (int j = 0; j < M; ++j) {
        if (j > 0) denom *= 2.0 * kI * zeta * double(j);
        v[j] = R[j] / denom;
      }
      return [zeta, M, v](cplx x) {
        cplx acc = 0.0;
        for (int j = 0; j < M; ++j) acc += v[j] * std::exp(double(2 * j + 1 - M) * x);
        return acc * psi_prefactor(zeta, x);
      };
    }
  }
  throw InvalidArgument("unknown eigenfunction form");
}

double ode_residual_dshg(const ModelParams& params, cplx E, HyperbolicForm form,
                         std::span<const cplx> points, double h) {
  const auto p = params.with_model(Model::DSHG);
  return ode_residual(p, E, hyperbolic_eigenfunction(p, E, form), points, h);
}

double ode_residual_dsg(const ModelParams& params, cplx Ehat, int level_index,
                        std::span<const cplx> points, double h) {
  const auto p = params.with_model(Model::DSG);
  return ode_residual(
      p, Ehat, [&](cplx theta) { return dual_eigenfunction(p, level_index, theta); }, points, h);
}

bool in_stokes_wedge(int u_sign, double v) {
  const double pi = std::numbers::pi;
  // Reduce into (-pi, 0].
  double r = std::fmod(v, pi);
  if (r > 0.0) r -= pi;
  if (r <= -pi) r += pi;
  if (u_sign > 0) return r > -pi && r < -0.5 * pi;
  return r > -0.5 * pi && r < 0.0;
}

WedgeProbeReport wedge_decay_probe(const ModelParams& params, cplx E, Ray ray,
                                   std::span<const double> radii) {
  if (params.M() != 1) throw InvalidArgument("the wedge probe uses the M = 1 eigenfunction");
  if (std::abs(E - cplx(1.0 - params.zeta2())) > 1e-8 * (1.0 + std::abs(E)))
    throw InvalidArgument("no closed-form eigenfunction at this energy for M = 1");
  if (ray.u_sign != 1 && ray.u_sign != -1) throw InvalidArgument("u_sign must be +1 or -1");
  if (radii.size() < 2) throw InvalidArgument("the wedge probe needs at least two radii");

  const auto psi = hyperbolic_eigenfunction(params, E, HyperbolicForm::M1Ground);
  WedgeProbeReport report;
  report.ray = ray;
  report.radii.assign(radii.begin(), radii.end());
  for (double r : radii) report.magnitudes.push_back(std::abs(psi(cplx(ray.u_sign * r, ray.v))));

  bool decreasing = true;
  for (std::size_t i = 1; i < report.magnitudes.size(); ++i)
    if (!(report.magnitudes[i] < report.magnitudes[i - 1])) decreasing = false;
  report.decays = decreasing && report.magnitudes.back() < 0.5 * report.magnitudes.front();
  report.expected_decay = in_stokes_wedge(ray.u_sign, ray.v);
  return report;
}

}  // namespace qes
