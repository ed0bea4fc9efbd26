#include "wamfek/tables.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "wamfek/approx.hpp"
#include "wamfek/error.hpp"
#include "wamfek/fekete.hpp"

namespace wamfek {

namespace {

constexpr std::size_t kControlBlock = 2048;

std::vector<ScalarFunction> test_functions(const BuiltinDomain& dom) {
  std::vector<ScalarFunction> fs;
  for (int id = 1; id <= 3; ++id) fs.emplace_back(test_function(id, dom.unit_square_functions));
  return fs;
}

const BuiltinDomain& builtin(std::string_view name) {
  const auto* d = find_builtin(name);
  if (d == nullptr) throw ConfigError("missing builtin domain " + std::string(name));
  return *d;
}

std::vector<std::optional<double>> row_of(const std::vector<DomainRun>& runs, auto&& pick) {
  std::vector<std::optional<double>> cells;
  for (const auto& r : runs) cells.emplace_back(pick(r));
  return cells;
}

std::vector<DomainRun> runs_for(const BuiltinDomain& dom, const TableOptions& opts) {
  std::vector<DomainRun> runs;
  for (int n : opts.degrees) runs.push_back(run_domain(dom, n, opts));
  return runs;
}

void error_rows(Table& t, const std::vector<DomainRun>& runs) {
  for (int k = 0; k < 3; ++k) {
    const std::string group = "test " + std::to_string(k + 1);
    t.rows.push_back({group, "LS WAM", row_of(runs, [k](const DomainRun& r) { return r.ls_error[k]; })});
    t.rows.push_back({group, "interp AFP", row_of(runs, [k](const DomainRun& r) { return r.interp_error[k]; })});
  }
}

}  // namespace

DomainRun run_domain(const BuiltinDomain& dom, int n, const TableOptions& opts) {
  const Mesh mesh = wam(dom.domain, n);
  const BasisSpec spec = BasisSpec::for_domain(BasisFamily::ProductChebyshev, n, dom.domain);
  const FeketeResult afp = extract_afp(vandermonde(spec, mesh), opts.refinements);
  const auto fs = test_functions(dom);
  const auto ls = least_squares_fit(fs, mesh, spec, opts.refinements);

  const auto n_basis = static_cast<Eigen::Index>(spec.size());
  // Columns 0..2: LS fits, 3..5: interpolants.  Both live in the same working
  // basis (same V, same refinement rounds), so one evaluation serves all six.
  Eigen::MatrixXd coeffs(n_basis, 6);
  for (int k = 0; k < 3; ++k) {
    coeffs.col(k) = ls[static_cast<std::size_t>(k)].coefficients;
    coeffs.col(3 + k) = interpolate(fs[static_cast<std::size_t>(k)], afp).coefficients;
  }
  const Eigen::PartialPivLU<Eigen::MatrixXd> nodes(afp.selected.transpose());

  const Mesh control = control_mesh(dom.domain, n, opts.control_factor);
  DomainRun run;
  run.domain = dom.name;
  run.n = n;
  run.wam_size = mesh.size();
  run.afp_size = afp.size();
  run.control_size = control.size();
  const std::span<const Point2> pts(control.points);
  for (std::size_t first = 0; first < pts.size(); first += kControlBlock) {
    const auto block_pts = pts.subspan(first, std::min(kControlBlock, pts.size() - first));
    const Eigen::MatrixXd rows = working_basis_matrix(spec, afp.transition, block_pts);
    const Eigen::MatrixXd lagrange = nodes.solve(rows.transpose());
    run.lebesgue = std::max(run.lebesgue, lagrange.cwiseAbs().colwise().sum().maxCoeff());
    const Eigen::MatrixXd values = rows * coeffs;
    for (std::size_t i = 0; i < block_pts.size(); ++i) {
      for (int k = 0; k < 3; ++k) {
        const double f = fs[static_cast<std::size_t>(k)](block_pts[i]);
        const auto row = static_cast<Eigen::Index>(i);
        run.ls_error[static_cast<std::size_t>(k)] =
            std::max(run.ls_error[static_cast<std::size_t>(k)], std::abs(f - values(row, k)));
        run.interp_error[static_cast<std::size_t>(k)] =
            std::max(run.interp_error[static_cast<std::size_t>(k)], std::abs(f - values(row, 3 + k)));
      }
    }
  }
  return run;
}

std::optional<std::array<double, 3>> am_ls_errors(const BuiltinDomain& dom, int n, const TableOptions& opts) {
  Mesh am;
  try {
    am = uniform_am(dom.domain, n, opts.am_cap);
  } catch (const MeshTooLargeError&) {
    return std::nullopt;
  }
  const BasisSpec spec = BasisSpec::for_domain(BasisFamily::ProductChebyshev, n, dom.domain);
  const auto fs = test_functions(dom);
  const auto fits = least_squares_fit(fs, am, spec, opts.refinements);
  const Mesh control = control_mesh(dom.domain, n, opts.control_factor);
  std::array<double, 3> errs{};
  for (std::size_t k = 0; k < 3; ++k) errs[k] = uniform_error(fits[k], fs[k], control);
  return errs;
}

std::optional<double> afp_lebesgue(const BuiltinDomain& dom, int n, BasisFamily family, int refinements,
                                   int control_factor) {
  const Mesh mesh = wam(dom.domain, n);
  const BasisSpec spec = BasisSpec::for_domain(family, n, dom.domain);
  try {
    const FeketeResult afp = extract_afp(mesh, spec, refinements);
    return lebesgue_constant(afp, control_mesh(dom.domain, n, control_factor));
  } catch (const RankDeficientError&) {
    return std::nullopt;
  }
}

Table compute_table(int id, const TableOptions& opts) {
  Table t;
  t.id = id;
  t.degrees = opts.degrees;
  const BuiltinDomain& disk = builtin("disk");
  switch (id) {
    case 1: {
      t.caption = "Cardinalities of different point sets in the unit disk (AFP = Approximate Fekete Points)";
      t.domain = "disk";
      t.format = CellFormat::Integer;
      TableRow am{"", "AM", {}}, wam_row{"", "WAM", {}}, afp_row{"", "AFP", {}};
      for (int n : opts.degrees) {
        // counting is cheap; only the least-squares use of the AM is capped
        am.cells.emplace_back(static_cast<double>(am_cardinality(disk.domain, n)));
        const Mesh mesh = disk_wam(n);
        wam_row.cells.emplace_back(static_cast<double>(mesh.size()));
        const BasisSpec spec = BasisSpec::for_domain(BasisFamily::ProductChebyshev, n, disk.domain);
        afp_row.cells.emplace_back(static_cast<double>(extract_afp(mesh, spec, opts.refinements).size()));
      }
      t.rows = {am, wam_row, afp_row};
      break;
    }
    case 2: {
      t.caption = "Lebesgue constants (nearest integer) of AFP from the disk WAM with different bases; "
                  "* = numerically rank-deficient Vandermonde";
      t.domain = "disk";
      t.format = CellFormat::Integer;
      const std::pair<BasisFamily, const char*> families[] = {
          {BasisFamily::Monomial, "Mon"}, {BasisFamily::ProductChebyshev, "Che"}, {BasisFamily::LoganShepp, "LoS"}};
      for (const auto& [family, tag] : families) {
        for (int s : {0, opts.refinements}) {
          TableRow row{"", std::string(tag) + "(" + std::to_string(s) + ")", {}};
          for (int n : opts.degrees) row.cells.push_back(afp_lebesgue(disk, n, family, s, opts.control_factor));
          t.rows.push_back(std::move(row));
        }
      }
      break;
    }
    case 3: {
      t.caption = "Uniform errors of polynomial approximations on different point sets in the unit disk; "
                  "* = AM too large";
      t.domain = "disk";
      const auto runs = runs_for(disk, opts);
      std::vector<std::optional<std::array<double, 3>>> am;
      for (int n : opts.degrees) am.push_back(am_ls_errors(disk, n, opts));
      for (int k = 0; k < 3; ++k) {
        const std::string group = "test " + std::to_string(k + 1);
        TableRow am_row{group, "LS AM", {}};
        for (const auto& e : am) am_row.cells.push_back(e ? std::optional<double>((*e)[static_cast<std::size_t>(k)]) : std::nullopt);
        t.rows.push_back(std::move(am_row));
        t.rows.push_back({group, "LS WAM", row_of(runs, [k](const DomainRun& r) { return r.ls_error[k]; })});
        t.rows.push_back({group, "interp AFP", row_of(runs, [k](const DomainRun& r) { return r.interp_error[k]; })});
      }
      break;
    }
    case 4: {
      t.caption = "Lebesgue constants (nearest integer) of AFP from the geometric WAMs "
                  "(product Chebyshev basis, refined)";
      t.format = CellFormat::Integer;
      for (const auto& dom : builtin_domains()) {
        if (dom.name == "square") continue;
        const auto runs = runs_for(dom, opts);
        t.rows.push_back({"", dom.label, row_of(runs, [](const DomainRun& r) { return r.lebesgue; })});
      }
      break;
    }
    case 5:
    case 6:
    case 7:
    case 8:
    case 9: {
      static const char* names[] = {"simplex", "linear-trapezoid", "cubic-trapezoid", "convex-polygon",
                                    "nonconvex-polygon"};
      const BuiltinDomain& dom = builtin(names[id - 5]);
      t.domain = dom.name;
      t.caption = "Uniform errors of LS on the WAM and interpolation at AFP, " + dom.label +
                  (dom.unit_square_functions ? ", test functions f(2x-1, 2y-1)" : "");
      error_rows(t, runs_for(dom, opts));
      break;
    }
    default:
      throw ConfigError("table id must be between 1 and 9");
  }
  return t;
}

std::string format_sci1(double value) {
  if (value == 0.0) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.0E", value);
  // "5E-04" -> "5E-4"
  std::string s = buf;
  const auto e = s.find('E');
  std::string mantissa = s.substr(0, e);
  int exponent = std::stoi(s.substr(e + 1));
  return mantissa + "E" + std::to_string(exponent);
}

std::string format_table(const Table& table) {
  auto cell_text = [&](const std::optional<double>& v) -> std::string {
    if (!v) return "*";
    if (table.format == CellFormat::Integer) return std::to_string(std::llround(*v));
    return format_sci1(*v);
  };
  std::vector<std::vector<std::string>> grid;
  const bool grouped = std::any_of(table.rows.begin(), table.rows.end(), [](const TableRow& r) { return !r.group.empty(); });
  std::vector<std::string> header;
  if (grouped) header.push_back("");
  header.push_back(table.domain.empty() ? "set" : "points");
  for (int n : table.degrees) header.push_back("n=" + std::to_string(n));
  grid.push_back(header);
  std::string last_group;
  for (const auto& row : table.rows) {
    std::vector<std::string> line;
    if (grouped) {
      line.push_back(row.group == last_group ? "" : row.group);
      last_group = row.group;
    }
    line.push_back(row.label);
    for (const auto& c : row.cells) line.push_back(cell_text(c));
    grid.push_back(std::move(line));
  }
  std::vector<std::size_t> widths(header.size(), 0);
  for (const auto& line : grid)
    for (std::size_t i = 0; i < line.size(); ++i) widths[i] = std::max(widths[i], line[i].size());

  std::ostringstream os;
  os << "Table " << table.id << ": " << table.caption << "\n";
  for (std::size_t r = 0; r < grid.size(); ++r) {
    for (std::size_t i = 0; i < grid[r].size(); ++i) {
      const auto& text = grid[r][i];
      if (i > 0) os << "  ";
      if (i + 1 < grid[r].size() || r == 0) {
        os << text << std::string(widths[i] - text.size(), ' ');
      } else {
        os << text;
      }
    }
    os << "\n";
    if (r == 0) {
      std::size_t total = 0;
      for (auto w : widths) total += w + 2;
      os << std::string(total - 2, '-') << "\n";
    }
  }
  return os.str();
}

nlohmann::json table_json(const Table& table) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.cells.size(); ++i) {
      nlohmann::json j;
      j["domain"] = table.domain.empty() ? row.label : table.domain;
      j["n"] = table.degrees[i];
      std::string basis = "cheb";
      int s = 2;
      std::string metric;
      if (table.id == 1) {
        metric = "cardinality_" + row.label;
      } else if (table.id == 2) {
        basis = row.label.substr(0, 3) == "Mon" ? "mon" : row.label.substr(0, 3) == "Che" ? "cheb" : "logan-shepp";
        s = std::stoi(row.label.substr(4));
        metric = "lebesgue";
      } else if (table.id == 4) {
        metric = "lebesgue";
      } else {
        metric = "error_" + row.label + "_" + row.group;
        std::replace(metric.begin(), metric.end(), ' ', '_');
      }
      j["basis"] = basis;
      j["s"] = s;
      j["metric"] = metric;
      j["value"] = row.cells[i] ? nlohmann::json(*row.cells[i]) : nlohmann::json(nullptr);
      rows.push_back(std::move(j));
    }
  }
  return {{"table", table.id}, {"caption", table.caption}, {"degrees", table.degrees}, {"rows", rows}};
}

}  // namespace wamfek
