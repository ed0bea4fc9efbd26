#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "wamfek/basis.hpp"
#include "wamfek/io.hpp"
#include "wamfek/mesh.hpp"

namespace wamfek {

inline constexpr std::array<int, 6> kTableDegrees{5, 10, 15, 20, 25, 30};

struct TableOptions {
  std::vector<int> degrees{kTableDegrees.begin(), kTableDegrees.end()};
  int refinements = 2;
  int control_factor = 4;
  double am_cap = kDefaultAmCap;
};

/// Measurements for one domain and degree with the product Chebyshev basis:
/// AFP Lebesgue constant and uniform errors of LS-on-WAM and interp-at-AFP
/// for the three test functions, all on one control mesh.
struct DomainRun {
  std::string domain;
  int n = 0;
  std::size_t wam_size = 0;
  std::size_t afp_size = 0;
  std::size_t control_size = 0;
  double lebesgue = 0.0;
  std::array<double, 3> ls_error{};
  std::array<double, 3> interp_error{};
};

DomainRun run_domain(const BuiltinDomain& dom, int n, const TableOptions& opts = {});

/// LS-on-AM uniform errors; nullopt when the AM guard refuses the degree.
std::optional<std::array<double, 3>> am_ls_errors(const BuiltinDomain& dom, int n, const TableOptions& opts = {});

/// AFP Lebesgue constant for a basis family; nullopt when the Vandermonde
/// matrix is numerically rank-deficient.
std::optional<double> afp_lebesgue(const BuiltinDomain& dom, int n, BasisFamily family, int refinements,
                                   int control_factor = 4);

enum class CellFormat { Integer, Scientific };

struct TableRow {
  std::string group;  // "test 1", a domain label, or empty
  std::string label;  // "LS WAM", "Che(2)", ...
  std::vector<std::optional<double>> cells;  // nullopt prints as "*"
};

struct Table {
  int id = 0;
  std::string caption;
  std::string domain;  // empty for multi-domain tables
  std::vector<int> degrees;
  CellFormat format = CellFormat::Scientific;
  std::vector<TableRow> rows;
};

/// Recomputes table 1..9 over opts.degrees.
Table compute_table(int id, const TableOptions& opts = {});

/// One significant digit, "5E-4" style.
std::string format_sci1(double value);

std::string format_table(const Table& table);

/// {"table", "caption", "rows": [{domain, n, basis, s, metric, value}, ...]}
nlohmann::json table_json(const Table& table);

}  // namespace wamfek
