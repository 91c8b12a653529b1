#include "qes/norms.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "qes/error.hpp"

namespace qes {

namespace {

void require_distinct(const std::vector<cplx>& nodes) {
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (std::size_t j = i + 1; j < nodes.size(); ++j)
      if (std::abs(nodes[i] - nodes[j]) <= 1e-12 * (1.0 + std::abs(nodes[i]))) {
        std::ostringstream os;
        os << "weight system is singular: nodes " << nodes[i] << " and " << nodes[j]
           << " coincide";
        throw NumericalError(os.str());
      }
}

std::vector<cplx> solve_weights(const ThreeTermRecurrence& rec, const std::vector<cplx>& nodes) {
  require_distinct(nodes);
  const int n = static_cast<int>(nodes.size());
  Eigen::MatrixXcd A(n, n);
  for (int k = 0; k < n; ++k) {
    const auto v = rec.values(nodes[k]);
    for (int j = 0; j < n; ++j) A(j, k) = v[j];
  }
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(A);
  if (!lu.isInvertible()) throw NumericalError("weight system is numerically singular");
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(n);
  rhs(0) = 1.0;
  const Eigen::VectorXcd w = lu.solve(rhs);
  return std::vector<cplx>(w.data(), w.data() + n);
}

double defect(const std::vector<std::vector<cplx>>& G, const std::vector<cplx>& gamma) {
  double worst = 0.0;
  const std::size_t n = G.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const cplx expected = i == j ? gamma[i] : cplx(0.0);
      const double scale = std::max(std::abs(gamma[i]), std::abs(gamma[j]));
      worst = std::max(worst, std::abs(G[i][j] - expected) / scale);
    }
  return worst;
}

}  // namespace

double norm(int n, const ModelParams& params) {
  if (n < 0) throw InvalidArgument("norm index must be nonnegative");
  const RecursionCoefficients ab(params);
  double g = 1.0;
  for (int i = 1; i <= n; ++i) g *= ab.a(i);
  return g;
}

double WeightTable::max_weight_imag_ratio() const {
  double wmax = 0.0;
  double imax = 0.0;
  for (cplx w : weights) {
    wmax = std::max(wmax, std::abs(w));
    imax = std::max(imax, std::abs(w.imag()));
  }
  return wmax > 0.0 ? imax / wmax : 0.0;
}

WeightTable weights(const ModelParams& params) {
  const int M = params.M();
  WeightTable table{params, {}, {}, {}};
  for (int n = 0; n <= M; ++n) table.gamma.push_back(norm(n, params));
  table.energies = qes_energies(params);
  table.weights = solve_weights(r_recurrence(params, M), table.energies);
  return table;
}

std::vector<std::vector<cplx>> gram_matrix(const ThreeTermRecurrence& rec,
                                           const std::vector<cplx>& nodes,
                                           const std::vector<cplx>& weights) {
  const std::size_t n = nodes.size();
  std::vector<std::vector<cplx>> G(n, std::vector<cplx>(n, cplx(0.0)));
  for (std::size_t k = 0; k < n; ++k) {
    const auto v = rec.values(nodes[k]);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) G[i][j] += weights[k] * v[i] * v[j];
  }
  return G;
}

double gram_defect(const WeightTable& table) {
  const int M = table.params.M();
  const auto G = gram_matrix(r_recurrence(table.params, M), table.energies, table.weights);
  std::vector<cplx> gamma(table.gamma.begin(), table.gamma.begin() + M);
  return defect(G, gamma);
}

NormSignReport norm_signs(const ModelParams& params) {
  NormSignReport report;
  for (int n = 0; n < params.M(); ++n) {
    const double g = norm(n, params);
    const int sign = (g > 0.0) - (g < 0.0);
    report.signs.push_back(sign);
    if (n % 2 == 0 && sign <= 0) report.even_positive = false;
    if (n % 2 == 1 && sign >= 0) report.odd_negative = false;
  }
  return report;
}

ComplexWeightTable complex_weights(const ModelParams& params, Family family) {
  const int k = k_index(params.M());
  ComplexWeightTable table;
  table.family = family;
  int degree = 0;
  ThreeTermRecurrence rec;
  if (family == Family::P) {
    degree = k + 1;
    rec = p_recurrence(params, degree + 1, Sector::Zero);
  } else if (family == Family::Q) {
    degree = k;
    rec = q_recurrence(params, degree + 1, Sector::Half);
  } else {
    throw InvalidArgument("complex_weights covers the P and Q families only");
  }
  if (degree == 0) return table;

  for (int n = 0; n < degree; ++n) table.gamma.push_back(rec.norm(n));
  table.energies = recurrence_roots(rec, degree);
  table.weights = solve_weights(rec, table.energies);
  table.gram_defect = defect(gram_matrix(rec, table.energies, table.weights), table.gamma);
  return table;
}

}  // namespace qes
