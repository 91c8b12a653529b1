#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qes/model.hpp"
#include "qes/poly.hpp"
#include "qes/spectra.hpp"

namespace qes {

/// One tabulated level: CSV columns table,M,zeta2,label,rank,energy.
/// rank is 1-based within its label, ascending in energy.
struct GoldenCell {
  std::string table;
  int M = 0;
  double zeta2 = 0.0;
  LevelLabel label = LevelLabel::P;
  int rank = 0;
  std::string energy_text;
  double energy = 0.0;
};

/// The CSV compiled into the library.
std::string_view embedded_golden_csv();

/// Lines starting with '#' are comments; the first other line is the header.
std::vector<GoldenCell> parse_golden_csv(std::string_view text);

/// Embedded cells, or the file named by QES_GOLDEN_PATH when that is set.
std::vector<GoldenCell> load_golden_cells();

/// 1e-6, tightened to 5e-7 for entries printed with seven decimals.
double cell_tolerance(const GoldenCell& cell);

enum class TableId { I, II, III };

std::string_view to_string(TableId id);
TableId parse_table_id(std::string_view text);
int table_M(TableId id);

struct CellComparison {
  GoldenCell cell;
  double computed = 0.0;
  double deviation = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct TableReport {
  TableId table = TableId::I;
  int M = 0;
  std::vector<CellComparison> cells;
  double max_deviation = 0.0;
  bool pass = false;
};

/// Computes qes_spectrum for every zeta^2 column of the table, aligns levels
/// by (label, rank) and compares with the reference cells.
TableReport reproduce_table(TableId id, const std::vector<GoldenCell>& cells);
TableReport reproduce_table(TableId id);

/// A reference critical-polynomial coefficient c0 + c2 zeta^2 + c4 zeta^4.
struct ReferenceCoefficient {
  double c0 = 0.0;
  double c2 = 0.0;
  double c4 = 0.0;
  /// Compared and reported, but excluded from pass/fail.
  bool informational = false;

  double at(double zeta2) const { return c0 + c2 * zeta2 + c4 * zeta2 * zeta2; }
};

/// Printed closed form of a critical polynomial in calE, ascending powers.
struct ReferencePolynomial {
  int M = 0;
  Family family = Family::P;
  int index = 0;
  std::vector<ReferenceCoefficient> coeffs;
};

/// Closed forms for M = 1, 3, 5, 7, 9 (P_{k+1} and Q_k).
const std::vector<ReferencePolynomial>& reference_critical_polynomials();

struct CoefficientComparison {
  int M = 0;
  Family family = Family::P;
  int power = 0;
  double zeta2 = 0.0;
  double reference = 0.0;
  double generated = 0.0;
  double relative_error = 0.0;
  bool informational = false;
};

/// Coefficient-wise comparison of critical_polynomials() against a reference.
std::vector<CoefficientComparison> compare_with_reference(const ReferencePolynomial& ref,
                                                          double zeta2);

}  // namespace qes
