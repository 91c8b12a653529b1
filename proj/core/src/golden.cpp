#include "qes/golden.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "qes/error.hpp"

namespace qes {

namespace detail {
extern const char* const kEmbeddedGoldenCsv;
}

namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    out.push_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

double parse_double(std::string_view s, int line_no) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw InvalidArgument("golden CSV line " + std::to_string(line_no) + ": bad number '" +
                          std::string(s) + "'");
  return value;
}

int parse_int(std::string_view s, int line_no) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw InvalidArgument("golden CSV line " + std::to_string(line_no) + ": bad integer '" +
                          std::string(s) + "'");
  return value;
}

LevelLabel parse_label(std::string_view s, int line_no) {
  if (s == "E_P") return LevelLabel::P;
  if (s == "E_Q") return LevelLabel::Q;
  if (s == "E_R") return LevelLabel::R;
  throw InvalidArgument("golden CSV line " + std::to_string(line_no) + ": bad label '" +
                        std::string(s) + "'");
}

int decimals(std::string_view text) {
  const auto dot = text.find('.');
  return dot == std::string_view::npos ? 0 : static_cast<int>(text.size() - dot - 1);
}

}  // namespace

std::string_view embedded_golden_csv() { return detail::kEmbeddedGoldenCsv; }

std::vector<GoldenCell> parse_golden_csv(std::string_view text) {
  std::vector<GoldenCell> cells;
  bool header_seen = false;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find('\n', start), text.size());
    const std::string_view line = trim(text.substr(start, end - start));
    start = end + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const auto fields = split(line, ',');
    if (!header_seen) {
      if (fields.size() != 6 || trim(fields[0]) != "table" || trim(fields[5]) != "energy")
        throw InvalidArgument("golden CSV header must be table,M,zeta2,label,rank,energy");
      header_seen = true;
      continue;
    }
    if (fields.size() != 6)
      throw InvalidArgument("golden CSV line " + std::to_string(line_no) + ": expected 6 fields");
    GoldenCell cell;
    cell.table = std::string(trim(fields[0]));
    cell.M = parse_int(trim(fields[1]), line_no);
    cell.zeta2 = parse_double(trim(fields[2]), line_no);
    cell.label = parse_label(trim(fields[3]), line_no);
    cell.rank = parse_int(trim(fields[4]), line_no);
    cell.energy_text = std::string(trim(fields[5]));
    cell.energy = parse_double(cell.energy_text, line_no);
    cells.push_back(std::move(cell));
  }
  if (!header_seen) throw InvalidArgument("golden CSV has no header");
  return cells;
}

std::vector<GoldenCell> load_golden_cells() {
  if (const char* path = std::getenv("QES_GOLDEN_PATH"); path != nullptr && *path != '\0') {
    std::ifstream in(path);
    if (!in) throw InvalidArgument(std::string("cannot open QES_GOLDEN_PATH file ") + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_golden_csv(buf.str());
  }
  return parse_golden_csv(embedded_golden_csv());
}

double cell_tolerance(const GoldenCell& cell) {
  return decimals(cell.energy_text) < 8 ? 5e-7 : 1e-6;
}

std::string_view to_string(TableId id) {
  switch (id) {
    case TableId::I: return "I";
    case TableId::II: return "II";
    case TableId::III: return "III";
  }
  return "?";
}

TableId parse_table_id(std::string_view text) {
  if (text == "I") return TableId::I;
  if (text == "II") return TableId::II;
  if (text == "III") return TableId::III;
  throw InvalidArgument("unknown table '" + std::string(text) + "'");
}

int table_M(TableId id) {
  switch (id) {
    case TableId::I: return 5;
    case TableId::II: return 7;
    case TableId::III: return 9;
  }
  return 0;
}

TableReport reproduce_table(TableId id, const std::vector<GoldenCell>& cells) {
  TableReport report;
  report.table = id;
  report.M = table_M(id);

  std::map<double, std::map<LevelLabel, std::vector<double>>> computed;
  for (const auto& cell : cells) {
    if (cell.table != to_string(id)) continue;
    if (cell.M != report.M)
      throw InvalidArgument("golden cell for table " + cell.table + " has M = " +
                            std::to_string(cell.M));
    if (!computed.contains(cell.zeta2)) {
      auto& by_label = computed[cell.zeta2];
      for (const auto& level : qes_spectrum(ModelParams::from_zeta2(report.M, cell.zeta2)).levels)
        by_label[level.label].push_back(level.E.real());
    }
    const auto& ranked = computed[cell.zeta2][cell.label];
    CellComparison cmp;
    cmp.cell = cell;
    cmp.tolerance = cell_tolerance(cell);
    if (cell.rank >= 1 && cell.rank <= static_cast<int>(ranked.size())) {
      cmp.computed = ranked[cell.rank - 1];
      cmp.deviation = std::abs(cmp.computed - cell.energy);
    } else {
      cmp.computed = std::nan("");
      cmp.deviation = std::numeric_limits<double>::infinity();
    }
    cmp.pass = cmp.deviation <= cmp.tolerance;
    report.cells.push_back(std::move(cmp));
  }

  report.pass = !report.cells.empty();
  for (const auto& c : report.cells) {
    report.max_deviation = std::max(report.max_deviation, c.deviation);
    report.pass = report.pass && c.pass;
  }
  return report;
}

TableReport reproduce_table(TableId id) { return reproduce_table(id, load_golden_cells()); }

const std::vector<ReferencePolynomial>& reference_critical_polynomials() {
  // Ascending powers of calE; each entry is {c0, c2, c4}.
  static const std::vector<ReferencePolynomial> refs = {
      {1, Family::P, 1, {{0, 0, 0}, {1, 0, 0}}},
      {1, Family::Q, 0, {{1, 0, 0}}},
      {3, Family::P, 2, {{0, 16, 0}, {4, 0, 0}, {1, 0, 0}}},
      {3, Family::Q, 1, {{4, 0, 0}, {1, 0, 0}}},
      {5, Family::P, 3, {{0, 768, 0}, {64, 64, 0}, {20, 0, 0}, {1, 0, 0}}},
      {5, Family::Q, 2, {{64, 16, 0}, {20, 0, 0}, {1, 0, 0}}},
      {7, Family::P, 4, {{0, 55296, 2304}, {2304, 6528, 0}, {784, 160, 0}, {56, 0, 0}, {1, 0, 0}}},
      {7, Family::Q, 3, {{2304, 1536, 0}, {784, 64, 0}, {56, 0, 0}, {1, 0, 0}}},
      {9,
       Family::P,
       5,
       {{0, 5898240, 655360},
        {147465, 806912, 16384, true},
        {52480, 30280, 0},
        {4368, 320, 0},
        {120, 0, 0},
        {1, 0, 0}}},
      {9, Family::Q, 4, {{147456, 182272, 0}, {52480, 11648, 0}, {4368, 160, 0}, {120, 0, 0}, {1, 0, 0}}},
  };
  return refs;
}

std::vector<CoefficientComparison> compare_with_reference(const ReferencePolynomial& ref,
                                                          double zeta2) {
  const auto params = ModelParams::from_zeta2(ref.M, zeta2);
  const auto crit = critical_polynomials(params);
  const auto& poly = ref.family == Family::P ? crit.P : crit.Q;
  if (poly.degree() + 1 != static_cast<int>(ref.coeffs.size()))
    throw NumericalError("generated critical polynomial has unexpected degree");

  double ref_scale = 0.0;
  for (const auto& c : ref.coeffs) ref_scale = std::max(ref_scale, std::abs(c.at(zeta2)));

  std::vector<CoefficientComparison> out;
  for (std::size_t i = 0; i < ref.coeffs.size(); ++i) {
    CoefficientComparison cmp;
    cmp.M = ref.M;
    cmp.family = ref.family;
    cmp.power = static_cast<int>(i);
    cmp.zeta2 = zeta2;
    cmp.reference = ref.coeffs[i].at(zeta2);
    cmp.generated = poly.coeffs()[i].real();
    const double denom = cmp.reference != 0.0 ? std::abs(cmp.reference) : ref_scale;
    cmp.relative_error = std::abs(cmp.generated - cmp.reference) / denom;
    cmp.informational = ref.coeffs[i].informational;
    out.push_back(cmp);
  }
  return out;
}

}  // namespace qes
