// wamfek: meshes, approximate Fekete points, Lebesgue constants, errors and
// table reproductions from the command line.
//
// Exit codes: 0 success, 2 configuration error, 3 numerical failure.

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "wamfek/approx.hpp"
#include "wamfek/error.hpp"
#include "wamfek/fekete.hpp"
#include "wamfek/io.hpp"
#include "wamfek/mesh.hpp"
#include "wamfek/tables.hpp"

using namespace wamfek;
using nlohmann::json;

namespace {

struct Config {
  std::string domain = "disk";
  std::vector<int> degrees;
  std::string basis = "cheb";
  int refine = kDefaultRefinements;
  int control_factor = 4;
  std::uint64_t seed = 1;
  std::string out;
  std::string svg;
  double am_cap = kDefaultAmCap;
  bool am = false;
  int wam_constant_samples = 0;
  std::vector<int> functions{1, 2, 3};
  std::string method = "both";
  int table_id = 0;
  bool json_only = false;
};

void emit(const Config& cfg, std::string_view text) {
  if (cfg.out.empty()) {
    std::cout << text;
  } else {
    write_file(cfg.out, text);
  }
}

// JSON companion of a CSV: "<out>.json", or stderr when writing to stdout.
void emit_sidecar(const Config& cfg, const json& doc) {
  if (cfg.out.empty()) {
    std::cerr << doc.dump(2) << "\n";
  } else {
    write_file(cfg.out + ".json", doc.dump(2) + "\n");
  }
}

std::string csv(std::span<const Point2> points) {
  std::ostringstream os;
  write_points_csv(os, points);
  return os.str();
}

int single_degree(const Config& cfg) {
  if (cfg.degrees.size() != 1) throw ConfigError("this command takes exactly one --n");
  return cfg.degrees.front();
}

BasisSpec basis_for(const Config& cfg, const BuiltinDomain& dom, int n) {
  return BasisSpec::for_domain(parse_basis_family(cfg.basis), n, dom.domain);
}

void cmd_mesh(const Config& cfg) {
  const BuiltinDomain dom = resolve_domain(cfg.domain);
  const int n = single_degree(cfg);
  const Mesh mesh = cfg.am ? uniform_am(dom.domain, n, cfg.am_cap) : wam(dom.domain, n);
  json side = mesh_sidecar(mesh);
  if (cfg.wam_constant_samples > 0) {
    const Mesh control = control_mesh(dom.domain, n, cfg.control_factor);
    side["wam_constant_sampled"] = sampled_wam_constant(mesh, control, basis_for(cfg, dom, n),
                                                        cfg.wam_constant_samples, cfg.seed);
    side["wam_constant_samples"] = cfg.wam_constant_samples;
    side["seed"] = cfg.seed;
  }
  emit(cfg, csv(mesh.points));
  emit_sidecar(cfg, side);
  if (!cfg.svg.empty()) {
    const SvgLayer layer{mesh.points, "#1f4e9c"};
    write_file(cfg.svg, svg_scatter(dom.domain, std::span<const SvgLayer>(&layer, 1)));
  }
}

void cmd_afp(const Config& cfg) {
  const BuiltinDomain dom = resolve_domain(cfg.domain);
  const int n = single_degree(cfg);
  const Mesh mesh = wam(dom.domain, n);
  const BasisSpec spec = basis_for(cfg, dom, n);
  FeketeResult result = extract_afp(mesh, spec, cfg.refine);
  result.weights = cubature_weights(result, to_working_basis(result, moments(dom.domain, spec)));
  json report = afp_report(result);
  report["domain"] = dom.name.empty() ? json(domain_to_json(dom.domain)) : json(dom.name);
  emit(cfg, csv(result.points));
  emit_sidecar(cfg, report);
  if (!cfg.svg.empty()) {
    const SvgLayer layers[] = {{mesh.points, "#9aa5b1", 1.0}, {result.points, "#c0392b", 3.0}};
    write_file(cfg.svg, svg_scatter(dom.domain, layers));
  }
}

json row(const BuiltinDomain& dom, int n, const Config& cfg, const std::string& metric, std::optional<double> value) {
  return {{"domain", dom.name.empty() ? "custom" : dom.name},
          {"n", n},
          {"basis", cfg.basis},
          {"s", cfg.refine},
          {"metric", metric},
          {"value", value ? json(*value) : json(nullptr)}};
}

void cmd_leb(const Config& cfg) {
  const BuiltinDomain dom = resolve_domain(cfg.domain);
  json rows = json::array();
  for (int n : cfg.degrees) {
    const FeketeResult result = extract_afp(wam(dom.domain, n), basis_for(cfg, dom, n), cfg.refine);
    const double leb = lebesgue_constant(result, control_mesh(dom.domain, n, cfg.control_factor));
    rows.push_back(row(dom, n, cfg, "lebesgue", leb));
  }
  emit(cfg, rows.dump(2) + "\n");
}

void cmd_approx(const Config& cfg) {
  const BuiltinDomain dom = resolve_domain(cfg.domain);
  if (cfg.method != "ls" && cfg.method != "interp" && cfg.method != "both") {
    throw ConfigError("--method must be ls, interp or both");
  }
  std::vector<ScalarFunction> fs;
  for (int id : cfg.functions) fs.emplace_back(test_function(id, dom.unit_square_functions));
  const std::string points = cfg.am ? "AM" : "WAM";

  json rows = json::array();
  for (int n : cfg.degrees) {
    const BasisSpec spec = basis_for(cfg, dom, n);
    const Mesh mesh = cfg.am ? uniform_am(dom.domain, n, cfg.am_cap) : wam(dom.domain, n);
    const Mesh control = control_mesh(dom.domain, n, cfg.control_factor);
    if (cfg.method != "interp") {
      const auto fits = least_squares_fit(fs, mesh, spec, cfg.refine);
      for (std::size_t k = 0; k < fs.size(); ++k) {
        rows.push_back(row(dom, n, cfg, "error_LS_" + points + "_test_" + std::to_string(cfg.functions[k]),
                           uniform_error(fits[k], fs[k], control)));
      }
    }
    if (cfg.method != "ls") {
      const FeketeResult afp = extract_afp(mesh, spec, cfg.refine);
      for (std::size_t k = 0; k < fs.size(); ++k) {
        rows.push_back(row(dom, n, cfg, "error_interp_AFP_test_" + std::to_string(cfg.functions[k]),
                           uniform_error(interpolate(fs[k], afp), fs[k], control)));
      }
    }
  }
  emit(cfg, rows.dump(2) + "\n");
}

void cmd_table(const Config& cfg) {
  TableOptions opts;
  if (!cfg.degrees.empty()) opts.degrees = cfg.degrees;
  opts.refinements = cfg.refine;
  opts.control_factor = cfg.control_factor;
  opts.am_cap = cfg.am_cap;
  const Table table = compute_table(cfg.table_id, opts);
  const std::string text = format_table(table);
  const std::string doc = table_json(table).dump(2) + "\n";
  if (cfg.json_only) {
    emit(cfg, doc);
    return;
  }
  emit(cfg, text);
  if (!cfg.out.empty()) write_file(cfg.out + ".json", doc);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weakly admissible meshes and approximate Fekete points on 2-D domains"};
  app.require_subcommand(1);
  Config cfg;

  auto add_common = [&](CLI::App* sub, bool degree_list) {
    sub->add_option("--domain", cfg.domain,
                    "builtin name (disk, simplex, linear-trapezoid, cubic-trapezoid, convex-polygon, "
                    "nonconvex-polygon, square), inline JSON or a JSON file")
        ->capture_default_str();
    auto* n = sub->add_option("--n", cfg.degrees, degree_list ? "polynomial degree(s)" : "polynomial degree")
                  ->check(CLI::PositiveNumber);
    if (degree_list) {
      n->delimiter(',');
    } else {
      n->expected(1);
    }
    sub->add_option("--out", cfg.out, "output file (default: stdout)");
    sub->add_option("--am-cap", cfg.am_cap, "refuse uniform meshes with more projected entries")
        ->capture_default_str();
    sub->add_option("--control-factor", cfg.control_factor, "control mesh degree multiplier")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
  };
  auto add_basis = [&](CLI::App* sub) {
    sub->add_option("--basis", cfg.basis, "mon | cheb | logan-shepp")->capture_default_str();
    sub->add_option("--refine", cfg.refine, "basis refinement rounds s")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
  };

  auto* mesh = app.add_subcommand("mesh", "write a WAM (or --am uniform mesh) as CSV with a JSON sidecar");
  add_common(mesh, false);
  mesh->add_flag("--am", cfg.am, "uniform admissible mesh instead of the geometric WAM");
  mesh->add_option("--svg", cfg.svg, "SVG scatter plot");
  mesh->add_option("--wam-constant", cfg.wam_constant_samples,
                   "estimate the WAM constant from this many random polynomials");
  mesh->add_option("--seed", cfg.seed, "RNG seed for --wam-constant")->capture_default_str();
  mesh->add_option("--basis", cfg.basis, "basis for --wam-constant")->capture_default_str();
  mesh->get_option("--n")->required();

  auto* am = app.add_subcommand("am", "uniform admissible mesh (same as mesh --am)");
  add_common(am, false);
  am->add_option("--svg", cfg.svg, "SVG scatter plot");
  am->get_option("--n")->required();

  auto* afp = app.add_subcommand("afp", "extract approximate Fekete points");
  add_common(afp, false);
  add_basis(afp);
  afp->add_option("--svg", cfg.svg, "SVG overlay of mesh and selected points");
  afp->get_option("--n")->required();

  auto* leb = app.add_subcommand("leb", "Lebesgue constants of the extracted points (JSON rows)");
  add_common(leb, true);
  add_basis(leb);
  leb->get_option("--n")->required();

  auto* approx = app.add_subcommand("approx", "uniform errors of LS and interpolation (JSON rows)");
  add_common(approx, true);
  add_basis(approx);
  approx->add_option("--function", cfg.functions, "test function ids 1..3")->delimiter(',');
  approx->add_option("--method", cfg.method, "ls | interp | both")->capture_default_str();
  approx->add_flag("--am", cfg.am, "least squares on the uniform admissible mesh");
  approx->get_option("--n")->required();

  auto* table = app.add_subcommand("table", "recompute one of the reference tables 1..9");
  table->add_option("--id", cfg.table_id, "table id")->required()->check(CLI::Range(1, 9));
  table->add_option("--n", cfg.degrees, "degrees (default 5,10,...,30)")->delimiter(',')->check(CLI::PositiveNumber);
  table->add_option("--refine", cfg.refine, "basis refinement rounds s")->capture_default_str();
  table->add_option("--control-factor", cfg.control_factor, "control mesh degree multiplier")->capture_default_str();
  table->add_option("--am-cap", cfg.am_cap, "uniform mesh cap")->capture_default_str();
  table->add_option("--out", cfg.out, "text output; JSON goes to <out>.json");
  table->add_flag("--json", cfg.json_only, "print JSON instead of the text table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*mesh) cmd_mesh(cfg);
    if (*am) {
      cfg.am = true;
      cmd_mesh(cfg);
    }
    if (*afp) cmd_afp(cfg);
    if (*leb) cmd_leb(cfg);
    if (*approx) cmd_approx(cfg);
    if (*table) cmd_table(cfg);
  } catch (const ConfigError& e) {
    std::cerr << "wamfek: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "wamfek: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "wamfek: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
