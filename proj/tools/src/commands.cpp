#include "commands.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <sstream>

#include "qes/duality.hpp"
#include "qes/error.hpp"
#include "qes/golden.hpp"
#include "qes/norms.hpp"
#include "qes/oracle.hpp"
#include "qes/recursion.hpp"
#include "qes/spectra.hpp"

namespace qes::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;

// Keeps -0 (e.g. from negating a zero imaginary part) out of the output.
double clean(double x) { return x == 0.0 ? 0.0 : x; }

std::string shortest(double x) {
  x = clean(x);
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string display(double x) {
  x = clean(x);
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.insert(0, width - s.size(), ' ');
  return s;
}

ModelParams params_from(const RunConfig& c) {
  if (!c.M) throw InvalidArgument("--M is required");
  if (c.zeta2.has_value() == c.zeta.has_value())
    throw InvalidArgument("exactly one of --zeta2 and --zeta is required");
  const Model model = parse_model(c.model);
  if (c.zeta2) return ModelParams::from_zeta2(*c.M, *c.zeta2, model);
  return ModelParams(*c.M, std::abs(*c.zeta), model);
}

bool has_point(const RunConfig& c) { return c.M.has_value() || c.zeta2 || c.zeta; }

std::vector<double> parse_range(const std::string& text) {
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size())
      throw InvalidArgument("--zeta2-range expects start:stop:step, got '" + text + "'");
    parts.push_back(v);
  }
  if (parts.size() != 3) throw InvalidArgument("--zeta2-range expects start:stop:step");
  const double a = parts[0], b = parts[1], step = parts[2];
  if (!(step > 0.0) || !(b >= a) || a < 0.0)
    throw InvalidArgument("--zeta2-range needs 0 <= start <= stop and step > 0");
  const auto count = static_cast<long>(std::floor((b - a) / step + 1e-9)) + 1;
  if (count > 100000) throw InvalidArgument("--zeta2-range has too many points");
  std::vector<double> grid;
  for (long i = 0; i < count; ++i) grid.push_back(a + static_cast<double>(i) * step);
  return grid;
}

// ---------------------------------------------------------------------------
// spectrum / sweep

struct Row {
  cplx E;
  std::string label;
  bool is_real;
};

struct SpectrumView {
  ModelParams params;
  std::vector<Row> rows;
  std::vector<std::pair<int, int>> degenerate_pairs;
};

SpectrumView spectrum_view(const ModelParams& params) {
  const auto hyperbolic = qes_spectrum(params.with_model(Model::DSHG));
  SpectrumView view{params, {}, {}};
  if (params.model() == Model::DSHG) {
    for (const auto& l : hyperbolic.levels)
      view.rows.push_back({l.E, std::string(to_string(l.label)), l.is_real});
    view.degenerate_pairs = hyperbolic.degenerate_pairs;
    return view;
  }
  const auto dual = dual_spectrum(params);
  for (const auto& l : dual.levels)
    view.rows.push_back({l.Ehat, std::string(to_string(l.label)), is_real_energy(l.Ehat)});
  const int n = static_cast<int>(dual.levels.size());
  for (const auto& [i, j] : hyperbolic.degenerate_pairs)
    view.degenerate_pairs.emplace_back(std::min(n - 1 - i, n - 1 - j), std::max(n - 1 - i, n - 1 - j));
  std::sort(view.degenerate_pairs.begin(), view.degenerate_pairs.end());
  return view;
}

json levels_json(const SpectrumView& v) {
  json levels = json::array();
  for (std::size_t i = 0; i < v.rows.size(); ++i)
    levels.push_back({{"index", i},
                      {"E_re", clean(v.rows[i].E.real())},
                      {"E_im", clean(v.rows[i].E.imag())},
                      {"label", v.rows[i].label},
                      {"is_real", v.rows[i].is_real}});
  return levels;
}

json pairs_json(const SpectrumView& v) {
  json pairs = json::array();
  for (const auto& [i, j] : v.degenerate_pairs) pairs.push_back({i, j});
  return pairs;
}

std::string csv_level_row(const Row& r, std::size_t index) {
  return std::to_string(index) + "," + shortest(r.E.real()) + "," + shortest(r.E.imag()) + "," +
         r.label + "," + (r.is_real ? "true" : "false") + "," + display(r.E.real());
}

std::string cmd_spectrum(const RunConfig& c) {
  const auto v = spectrum_view(params_from(c));
  std::ostringstream os;
  switch (c.format) {
    case Format::Json: {
      json j{{"schema", kSchemaVersion},
             {"command", "spectrum"},
             {"model", to_string(v.params.model())},
             {"M", v.params.M()},
             {"zeta2", v.params.zeta2()},
             {"levels", levels_json(v)},
             {"degenerate_pairs", pairs_json(v)}};
      os << j.dump(2) << '\n';
      break;
    }
    case Format::Csv:
      os << "index,E_re,E_im,label,is_real,E_display\n";
      for (std::size_t i = 0; i < v.rows.size(); ++i) os << csv_level_row(v.rows[i], i) << '\n';
      break;
    case Format::Table:
      os << "model " << to_string(v.params.model()) << "  M = " << v.params.M()
         << "  zeta^2 = " << display(v.params.zeta2()) << '\n';
      os << "  idx  label                E_re              E_im  real\n";
      for (std::size_t i = 0; i < v.rows.size(); ++i)
        os << pad(std::to_string(i), 5) << pad(v.rows[i].label, 7) << pad(display(v.rows[i].E.real()), 20)
           << pad(display(v.rows[i].E.imag()), 18) << pad(v.rows[i].is_real ? "yes" : "no", 6) << '\n';
      for (const auto& [i, j] : v.degenerate_pairs) os << "  degenerate: " << i << ", " << j << '\n';
      break;
  }
  return os.str();
}

std::string cmd_sweep(const RunConfig& c) {
  if (!c.M) throw InvalidArgument("--M is required");
  if (c.zeta2_range.empty()) throw InvalidArgument("--zeta2-range is required");
  if (c.zeta2 || c.zeta) throw InvalidArgument("sweep takes --zeta2-range, not --zeta2/--zeta");
  const Model model = parse_model(c.model);
  std::vector<SpectrumView> cells;
  for (double z2 : parse_range(c.zeta2_range))
    cells.push_back(spectrum_view(ModelParams::from_zeta2(*c.M, z2, model)));

  std::ostringstream os;
  switch (c.format) {
    case Format::Json: {
      json rows = json::array();
      for (const auto& v : cells)
        rows.push_back({{"zeta2", v.params.zeta2()},
                        {"levels", levels_json(v)},
                        {"degenerate_pairs", pairs_json(v)}});
      json j{{"schema", kSchemaVersion},
             {"command", "sweep"},
             {"model", to_string(model)},
             {"M", *c.M},
             {"rows", rows}};
      os << j.dump(2) << '\n';
      break;
    }
    case Format::Csv:
      os << "zeta2,index,E_re,E_im,label,is_real,E_display\n";
      for (const auto& v : cells)
        for (std::size_t i = 0; i < v.rows.size(); ++i)
          os << shortest(v.params.zeta2()) << ',' << csv_level_row(v.rows[i], i) << '\n';
      break;
    case Format::Table:
      os << "model " << to_string(model) << "  M = " << *c.M << '\n';
      for (const auto& v : cells) {
        os << pad(display(v.params.zeta2()), 10);
        for (const auto& r : v.rows) os << pad(display(r.E.real()), 18);
        os << '\n';
      }
      break;
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// critical-zeta

std::string cmd_critical_zeta(const RunConfig& c) {
  if (!c.M) throw InvalidArgument("--M is required");
  if (*c.M < 3 || *c.M % 2 == 0)
    throw InvalidArgument("critical coupling needs odd M >= 3, got " + std::to_string(*c.M));
  const double tol = c.tol.value_or(1e-10);
  if (!(tol > 0.0)) throw InvalidArgument("--tol must be positive");
  const auto cc = critical_coupling(*c.M, tol);
  std::ostringstream os;
  switch (c.format) {
    case Format::Json: {
      json j{{"schema", kSchemaVersion},
             {"command", "critical-zeta"},
             {"M", cc.M},
             {"zeta_c_squared", cc.zeta_c_squared},
             {"degenerate_energy", cc.degenerate_energy},
             {"tol", tol},
             {"bracket_width", cc.bracket_width}};
      os << j.dump(2) << '\n';
      break;
    }
    case Format::Csv:
      os << "M,zeta_c_squared,degenerate_energy,tol,zeta_c_squared_display\n";
      os << cc.M << ',' << shortest(cc.zeta_c_squared) << ',' << shortest(cc.degenerate_energy) << ','
         << shortest(tol) << ',' << display(cc.zeta_c_squared) << '\n';
      break;
    case Format::Table:
      os << "M = " << cc.M << "  zeta_c^2 = " << display(cc.zeta_c_squared)
         << "  E_degenerate = " << display(cc.degenerate_energy) << "  (tol " << display(tol) << ")\n";
      break;
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// verify

struct Check {
  std::string suite;
  std::string name;
  double value;
  double tolerance;
  bool pass;
  std::string detail;
};

std::string point_name(int M, double zeta2) {
  return "M=" + std::to_string(M) + " zeta2=" + shortest(zeta2);
}

struct Grid {
  std::vector<int> Ms;
  std::vector<double> zeta2s;
};

Grid grid_for(const RunConfig& c, Grid fallback) {
  if (!has_point(c)) return fallback;
  const auto p = params_from(c);
  return {{p.M()}, {p.zeta2()}};
}

void suite_tables(const RunConfig& c, std::vector<Check>& out) {
  const auto cells = load_golden_cells();
  for (TableId id : {TableId::I, TableId::II, TableId::III}) {
    auto report = reproduce_table(id, cells);
    int passed = 0;
    for (auto& cell : report.cells) {
      if (c.tol) {
        cell.tolerance = *c.tol;
        cell.pass = cell.deviation <= cell.tolerance;
      }
      passed += cell.pass ? 1 : 0;
    }
    const bool pass = !report.cells.empty() && passed == static_cast<int>(report.cells.size());
    std::string detail = std::to_string(passed) + "/" + std::to_string(report.cells.size()) + " cells";
    for (const auto& cell : report.cells)
      if (!cell.pass)
        detail += "; zeta2=" + shortest(cell.cell.zeta2) + " " + std::string(to_string(cell.cell.label)) +
                  "#" + std::to_string(cell.cell.rank) + " ref " + cell.cell.energy_text + " got " +
                  display(cell.computed);
    out.push_back({"tables", "table " + std::string(to_string(id)) + " M=" + std::to_string(report.M),
                   report.max_deviation, c.tol.value_or(1e-6), pass, detail});
  }
}

void suite_oracle(const RunConfig& c, std::vector<Check>& out) {
  const auto grid = grid_for(c, {{1, 2, 3, 4, 5, 6, 7, 8, 9}, {0.0, 0.005, 0.01, 0.02, 0.025}});
  const double tol = c.tol.value_or(1e-8);
  for (int M : grid.Ms)
    for (double z2 : grid.zeta2s) {
      const auto p = ModelParams::from_zeta2(M, z2);
      const double d = oracle_equivalence_distance(p);
      out.push_back({"oracle", "matching " + point_name(M, z2), d, tol, d <= tol, ""});
      if (M <= 6) {
        const double e = charpoly_identity_defect(p);
        out.push_back({"oracle", "charpoly " + point_name(M, z2), e, tol, e <= tol, ""});
      }
    }
}

void suite_factorization(const RunConfig& c, std::vector<Check>& out) {
  const auto grid = grid_for(c, {{1, 2, 3, 4, 5, 7}, {0.005, 0.02}});
  const double tol = c.tol.value_or(1e-9);
  for (int M : grid.Ms)
    for (double z2 : grid.zeta2s) {
      const auto report = check_factorization(ModelParams::from_zeta2(M, z2), 4);
      double worst = report.r_vs_pq_distance.value_or(0.0);
      for (const auto& e : report.entries) {
        const bool pq = e.identity.front() == 'P' || e.identity.front() == 'Q';
        if (pq && e.n > 3) continue;
        worst = std::max(worst, e.remainder_norm);
      }
      out.push_back({"factorization", point_name(M, z2), worst, tol, worst <= tol, ""});
    }
}

void suite_norms(const RunConfig& c, std::vector<Check>& out) {
  const auto grid = grid_for(c, {{3, 5}, {0.005, 0.01, 0.02, 0.025}});
  const double tol = c.tol.value_or(1e-7);
  for (int M : grid.Ms)
    for (double z2 : grid.zeta2s) {
      const auto p = ModelParams::from_zeta2(M, z2);
      const auto table = weights(p);
      const bool ends = table.gamma.front() == 1.0 && table.gamma.back() == 0.0;
      out.push_back({"norms", "gamma_0=1, gamma_M=0 " + point_name(M, z2),
                     std::abs(table.gamma.front() - 1.0) + std::abs(table.gamma.back()), 0.0, ends, ""});
      const double g = gram_defect(table);
      out.push_back({"norms", "gram " + point_name(M, z2), g, tol, g <= tol, ""});
      if (M % 2 == 1 && (M == 1 || z2 < critical_coupling(M).zeta_c_squared)) {
        const double im = table.max_weight_imag_ratio();
        out.push_back({"norms", "weight reality " + point_name(M, z2), im, 1e-9, im <= 1e-9, ""});
      }
    }
}

void suite_duality(const RunConfig& c, std::vector<Check>& out) {
  const auto grid = grid_for(c, {{1, 3, 5, 7, 9}, {0.005, 0.01, 0.02, 0.025}});
  for (int M : grid.Ms)
    for (double z2 : grid.zeta2s) {
      const auto p = ModelParams::from_zeta2(M, z2);
      const auto E = qes_spectrum(p).energies();
      const auto Ehat = dual_spectrum(p).energies();
      double worst = E.size() == Ehat.size() ? 0.0 : std::numeric_limits<double>::infinity();
      const std::size_t n = std::min(E.size(), Ehat.size());
      for (std::size_t k = 0; k < n; ++k) worst = std::max(worst, std::abs(Ehat[k] + E[n - 1 - k]));
      out.push_back({"duality", "negate-reverse " + point_name(M, z2), worst, 0.0, worst == 0.0, ""});
      const bool involution = anti_isospectral_map(anti_isospectral_map(E)) == E;
      out.push_back({"duality", "involution " + point_name(M, z2), involution ? 0.0 : 1.0, 0.0,
                     involution, ""});
    }
}

std::string cmd_verify(const RunConfig& c, bool& all_pass) {
  using Suite = std::function<void(const RunConfig&, std::vector<Check>&)>;
  const std::vector<std::pair<std::string, Suite>> suites = {
      {"tables", suite_tables},   {"oracle", suite_oracle}, {"factorization", suite_factorization},
      {"norms", suite_norms},     {"duality", suite_duality}};
  if (c.tol && !(*c.tol >= 0.0)) throw InvalidArgument("--tol must be nonnegative");

  std::vector<Check> checks;
  bool matched = false;
  for (const auto& [name, fn] : suites)
    if (c.suite == "all" || c.suite == name) {
      matched = true;
      try {
        fn(c, checks);
      } catch (const NumericalError& e) {
        checks.push_back({name, "suite aborted", std::numeric_limits<double>::infinity(), 0.0, false,
                          e.what()});
      }
    }
  if (!matched) throw InvalidArgument("unknown suite '" + c.suite + "'");

  all_pass = std::all_of(checks.begin(), checks.end(), [](const Check& k) { return k.pass; });
  const auto failed = std::count_if(checks.begin(), checks.end(), [](const Check& k) { return !k.pass; });

  std::ostringstream os;
  switch (c.format) {
    case Format::Json: {
      json arr = json::array();
      for (const auto& k : checks) {
        json item{{"suite", k.suite},
                  {"name", k.name},
                  {"value", k.value},
                  {"tolerance", k.tolerance},
                  {"status", k.pass ? "PASS" : "FAIL"}};
        if (!k.detail.empty()) item["detail"] = k.detail;
        arr.push_back(item);
      }
      json j{{"schema", kSchemaVersion},
             {"command", "verify"},
             {"suite", c.suite},
             {"checks", arr},
             {"failed", failed},
             {"status", all_pass ? "PASS" : "FAIL"}};
      os << j.dump(2) << '\n';
      break;
    }
    case Format::Csv:
      os << "suite,name,value,tolerance,status,value_display\n";
      for (const auto& k : checks)
        os << k.suite << ',' << k.name << ',' << shortest(k.value) << ',' << shortest(k.tolerance) << ','
           << (k.pass ? "PASS" : "FAIL") << ',' << display(k.value) << '\n';
      break;
    case Format::Table:
      for (const auto& k : checks) {
        os << (k.pass ? "PASS " : "FAIL ") << k.suite << ": " << k.name << "  value " << display(k.value)
           << "  tol " << display(k.tolerance) << '\n';
        if (!k.pass && !k.detail.empty()) os << "     " << k.detail << '\n';
      }
      os << (all_pass ? "PASS" : "FAIL") << " (" << failed << " of " << checks.size() << " checks failed)\n";
      break;
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// norms

std::string cmd_norms(const RunConfig& c) {
  const auto p = params_from(c);
  const auto table = weights(p);
  const double defect = gram_defect(table);
  const auto signs = norm_signs(p);
  std::ostringstream os;
  switch (c.format) {
    case Format::Json: {
      json nodes = json::array();
      for (std::size_t k = 0; k < table.energies.size(); ++k)
        nodes.push_back({{"E_re", clean(table.energies[k].real())},
                         {"E_im", clean(table.energies[k].imag())},
                         {"w_re", clean(table.weights[k].real())},
                         {"w_im", clean(table.weights[k].imag())}});
      json j{{"schema", kSchemaVersion},
             {"command", "norms"},
             {"M", p.M()},
             {"zeta2", p.zeta2()},
             {"gamma", table.gamma},
             {"nodes", nodes},
             {"gram_defect", defect},
             {"max_weight_imag_ratio", table.max_weight_imag_ratio()},
             {"even_positive", signs.even_positive},
             {"odd_negative", signs.odd_negative}};
      os << j.dump(2) << '\n';
      break;
    }
    case Format::Csv:
      // One row per n = 0..M; the node columns are empty on the last row.
      os << "n,gamma,E_re,E_im,w_re,w_im,gamma_display\n";
      for (std::size_t n = 0; n < table.gamma.size(); ++n) {
        os << n << ',' << shortest(table.gamma[n]) << ',';
        if (n < table.energies.size())
          os << shortest(table.energies[n].real()) << ',' << shortest(table.energies[n].imag()) << ','
             << shortest(table.weights[n].real()) << ',' << shortest(table.weights[n].imag());
        else
          os << ",,,";
        os << ',' << display(table.gamma[n]) << '\n';
      }
      break;
    case Format::Table:
      os << "M = " << p.M() << "  zeta^2 = " << display(p.zeta2()) << "  gram defect " << display(defect)
         << '\n';
      os << "   n               gamma                   E                w_re                  w_im\n";
      for (std::size_t n = 0; n < table.gamma.size(); ++n) {
        os << pad(std::to_string(n), 4) << pad(display(table.gamma[n]), 20);
        if (n < table.energies.size())
          os << pad(display(table.energies[n].real()), 20) << pad(display(table.weights[n].real()), 22)
             << pad(display(table.weights[n].imag()), 22);
        os << '\n';
      }
      break;
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// polys

std::string cmd_polys(const RunConfig& c) {
  const auto p = params_from(c);
  if (!c.n || *c.n < 0) throw InvalidArgument("--n must be a nonnegative integer");
  const int n = *c.n;
  Variable target;
  if (c.variable == "E")
    target = Variable::E;
  else if (c.variable == "calE")
    target = Variable::ReducedE;
  else
    throw InvalidArgument("--variable must be E or calE");

  std::vector<EnergyPolynomial> family;
  double s_value = 0.0;
  if (c.family == "P") {
    const Sector s = parse_sector(c.s.value_or(0.0));
    s_value = sector_value(s);
    family = build_P(p, n, s);
  } else if (c.family == "Q") {
    const Sector s = parse_sector(c.s.value_or(0.5));
    s_value = sector_value(s);
    family = build_Q(p, n, s);
  } else if (c.family == "R") {
    family = build_R(p, n);
  } else if (c.family == "Rbar") {
    family = build_Rbar(p, n);
  } else {
    throw InvalidArgument("--family must be P, Q, R or Rbar");
  }
  const auto poly = in_variable(family.at(static_cast<std::size_t>(n)), target, p);

  std::ostringstream os;
  switch (c.format) {
    case Format::Json: {
      json coeffs = json::array();
      for (std::size_t i = 0; i < poly.coeffs().size(); ++i)
        coeffs.push_back({{"power", i}, {"re", clean(poly.coeffs()[i].real())}, {"im", clean(poly.coeffs()[i].imag())}});
      json j{{"schema", kSchemaVersion},
             {"command", "polys"},
             {"family", c.family},
             {"n", n},
             {"M", p.M()},
             {"zeta2", p.zeta2()},
             {"variable", c.variable},
             {"coefficients", coeffs}};
      if (c.family == "P" || c.family == "Q") j["s"] = s_value;
      os << j.dump(2) << '\n';
      break;
    }
    case Format::Csv:
      os << "power,re,im,re_display\n";
      for (std::size_t i = 0; i < poly.coeffs().size(); ++i)
        os << i << ',' << shortest(poly.coeffs()[i].real()) << ',' << shortest(poly.coeffs()[i].imag()) << ','
           << display(poly.coeffs()[i].real()) << '\n';
      break;
    case Format::Table:
      os << c.family << "_" << n << " in " << c.variable << ", M = " << p.M()
         << ", zeta^2 = " << display(p.zeta2()) << '\n';
      for (std::size_t i = 0; i < poly.coeffs().size(); ++i)
        os << pad(std::to_string(i), 4) << pad(display(poly.coeffs()[i].real()), 22)
           << pad(display(poly.coeffs()[i].imag()), 22) << '\n';
      break;
  }
  return os.str();
}

int emit(const RunConfig& c, const std::string& text, std::ostream& out, std::ostream& err) {
  if (c.out.empty()) {
    out << text;
    return kOk;
  }
  std::ofstream file(c.out, std::ios::binary);
  if (!file) {
    err << "error: cannot write " << c.out << '\n';
    return kUsageError;
  }
  file << text;
  return kOk;
}

}  // namespace

int dispatch(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    if (c.command == "verify") {
      bool pass = false;
      const std::string text = cmd_verify(c, pass);
      const int rc = emit(c, text, out, err);
      return rc != kOk ? rc : (pass ? kOk : kVerificationFailed);
    }
    std::string text;
    if (c.command == "spectrum")
      text = cmd_spectrum(c);
    else if (c.command == "critical-zeta")
      text = cmd_critical_zeta(c);
    else if (c.command == "sweep")
      text = cmd_sweep(c);
    else if (c.command == "norms")
      text = cmd_norms(c);
    else if (c.command == "polys")
      text = cmd_polys(c);
    else
      throw InvalidArgument("unknown command '" + c.command + "'");
    return emit(c, text, out, err);
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quasi-exactly solvable spectra of the double-sinh-Gordon family"};
  app.require_subcommand(1);
  RunConfig c;
  std::string format = "json";

  const auto add_common = [&](CLI::App* sub, bool point) {
    sub->add_option("--model", c.model, "dshg or dsg")->check(CLI::IsMember({"dshg", "dsg"}));
    sub->add_option("--format", format, "json, csv or table")->check(CLI::IsMember({"json", "csv", "table"}));
    sub->add_option("--out", c.out, "write output to this file");
    sub->add_option("--M", c.M, "number of QES levels");
    if (point) {
      auto* z2 = sub->add_option("--zeta2", c.zeta2, "coupling squared");
      auto* z = sub->add_option("--zeta", c.zeta, "coupling");
      z2->excludes(z);
    }
  };

  auto* spectrum = app.add_subcommand("spectrum", "QES levels at one coupling");
  add_common(spectrum, true);

  auto* critical = app.add_subcommand("critical-zeta", "critical coupling for odd M");
  add_common(critical, false);
  critical->add_option("--tol", c.tol, "bisection tolerance");

  auto* verify = app.add_subcommand("verify", "run verification suites");
  add_common(verify, true);
  verify->add_option("--suite", c.suite)
      ->check(CLI::IsMember({"tables", "oracle", "factorization", "norms", "duality", "all"}));
  verify->add_option("--tol", c.tol, "override the suite tolerance");

  auto* sweep = app.add_subcommand("sweep", "levels over a zeta^2 grid");
  add_common(sweep, false);
  sweep->add_option("--zeta2-range", c.zeta2_range, "start:stop:step")->required();

  auto* norms = app.add_subcommand("norms", "norms, weights and Gram defect");
  add_common(norms, true);

  auto* polys = app.add_subcommand("polys", "coefficients of a polynomial family member");
  add_common(polys, true);
  polys->add_option("--family", c.family)->check(CLI::IsMember({"P", "Q", "R", "Rbar"}));
  polys->add_option("--n", c.n, "index")->required();
  polys->add_option("--s", c.s, "sector, 0 or 0.5");
  polys->add_option("--variable", c.variable, "E or calE")->check(CLI::IsMember({"E", "calE"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    std::ostringstream msg;
    app.exit(e, msg, msg);
    err << msg.str();
    return kUsageError;
  }

  c.command = app.get_subcommands().front()->get_name();
  c.format = format == "csv" ? Format::Csv : format == "table" ? Format::Table : Format::Json;
  return dispatch(c, out, err);
}

}  // namespace qes::cli
