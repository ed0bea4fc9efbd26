#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <variant>

#include "wamfek/approx.hpp"
#include "wamfek/error.hpp"
#include "wamfek/fekete.hpp"
#include "wamfek/io.hpp"
#include "wamfek/mesh.hpp"
#include "wamfek/tables.hpp"

namespace py = pybind11;
using namespace wamfek;

namespace {

using PointArray = Eigen::Matrix<double, Eigen::Dynamic, 2, Eigen::RowMajor>;

PointArray to_array(std::span<const Point2> pts) {
  PointArray out(static_cast<Eigen::Index>(pts.size()), 2);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    out(static_cast<Eigen::Index>(i), 0) = pts[i].x;
    out(static_cast<Eigen::Index>(i), 1) = pts[i].y;
  }
  return out;
}

using InputPoints = py::array_t<double, py::array::c_style | py::array::forcecast>;

std::vector<Point2> from_array(const InputPoints& a) {
  if (a.ndim() != 2 || a.shape(1) != 2) throw ConfigError("points must be an (M, 2) array");
  const auto view = a.unchecked<2>();
  std::vector<Point2> out(static_cast<std::size_t>(view.shape(0)));
  for (py::ssize_t i = 0; i < view.shape(0); ++i) out[static_cast<std::size_t>(i)] = {view(i, 0), view(i, 1)};
  return out;
}

py::object json_to_py(const nlohmann::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

BasisSpec spec_for(const BuiltinDomain& dom, int n, const std::string& basis) {
  return BasisSpec::for_domain(parse_basis_family(basis), n, dom.domain);
}

// A test-function id (1..3) or any callable f(x, y).
using FunctionArg = std::variant<int, std::function<double(double, double)>>;

ScalarFunction resolve_function(const FunctionArg& f, bool unit_square) {
  if (const int* id = std::get_if<int>(&f)) return test_function(*id, unit_square);
  auto fn = std::get<std::function<double(double, double)>>(f);
  return [fn](Point2 p) { return fn(p.x, p.y); };
}

}  // namespace

PYBIND11_MODULE(_wamfek, m) {
  m.doc() = "Weakly admissible meshes and approximate Fekete points";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  auto numerical = py::register_exception<NumericalError>(m, "NumericalError", base.ptr());
  py::register_exception<RankDeficientError>(m, "RankDeficientError", numerical.ptr());
  py::register_exception<MeshTooLargeError>(m, "MeshTooLargeError", numerical.ptr());

  m.def("builtin_domains", [] {
    std::vector<std::string> names;
    for (const auto& b : builtin_domains()) names.push_back(b.name);
    return names;
  });

  m.def(
      "domain_info",
      [](const std::string& domain) {
        const auto dom = resolve_domain(domain);
        py::dict out;
        out["name"] = dom.name;
        out["kind"] = std::string(dom.domain.kind_name());
        out["area"] = dom.domain.area();
        out["diameter"] = dom.domain.diameter();
        out["map_degree"] = dom.domain.map_degree();
        out["json"] = json_to_py(domain_to_json(dom.domain));
        return out;
      },
      py::arg("domain"));

  m.def(
      "wam", [](const std::string& domain, int n) { return to_array(wam(resolve_domain(domain).domain, n).points); },
      py::arg("domain"), py::arg("n"));

  m.def(
      "uniform_am",
      [](const std::string& domain, int n, double cap) {
        return to_array(uniform_am(resolve_domain(domain).domain, n, cap).points);
      },
      py::arg("domain"), py::arg("n"), py::arg("cap") = kDefaultAmCap);

  m.def(
      "control_mesh",
      [](const std::string& domain, int n, int factor) {
        return to_array(control_mesh(resolve_domain(domain).domain, n, factor).points);
      },
      py::arg("domain"), py::arg("n"), py::arg("factor") = 4);

  m.def(
      "afp",
      [](const std::string& domain, int n, const std::string& basis, int refine, bool weights) {
        const auto dom = resolve_domain(domain);
        const Mesh mesh = wam(dom.domain, n);
        FeketeResult r = extract_afp(mesh, spec_for(dom, n, basis), refine);
        if (weights) r.weights = cubature_weights(r, to_working_basis(r, moments(dom.domain, r.basis)));
        py::dict out;
        out["points"] = to_array(r.points);
        out["indices"] = r.indices;
        out["mesh_size"] = r.mesh_size;
        out["log_vdm_abs"] = r.log_vdm_abs;
        out["condition_history"] = r.rank_report.condition_history;
        if (r.weights) out["weights"] = *r.weights;
        return out;
      },
      py::arg("domain"), py::arg("n"), py::arg("basis") = "cheb", py::arg("refine") = kDefaultRefinements,
      py::arg("weights") = false);

  m.def(
      "lebesgue_constant",
      [](const std::string& domain, int n, const std::string& basis, int refine, int control_factor) {
        const auto dom = resolve_domain(domain);
        const auto r = extract_afp(wam(dom.domain, n), spec_for(dom, n, basis), refine);
        return lebesgue_constant(r, control_mesh(dom.domain, n, control_factor));
      },
      py::arg("domain"), py::arg("n"), py::arg("basis") = "cheb", py::arg("refine") = kDefaultRefinements,
      py::arg("control_factor") = 4);

  m.def(
      "fit",
      [](const std::string& domain, int n, const FunctionArg& f, const std::string& method, int refine,
         std::optional<InputPoints> points) {
        const auto dom = resolve_domain(domain);
        const ScalarFunction fn = resolve_function(f, dom.unit_square_functions);
        const BasisSpec spec = spec_for(dom, n, "cheb");
        const Mesh mesh = wam(dom.domain, n);
        PolyApprox p;
        if (method == "ls") {
          p = least_squares_fit(fn, mesh, spec, refine);
        } else if (method == "interp") {
          p = interpolate(fn, extract_afp(mesh, spec, refine));
        } else {
          throw ConfigError("fit: method must be 'ls' or 'interp'");
        }
        py::dict out;
        out["error"] = uniform_error(p, fn, control_mesh(dom.domain, n));
        out["coefficients"] = Eigen::VectorXd(p.coefficients);
        if (points) out["values"] = Eigen::VectorXd(p.evaluate(from_array(*points)));
        return out;
      },
      py::arg("domain"), py::arg("n"), py::arg("f"), py::arg("method") = "interp",
      py::arg("refine") = kDefaultRefinements, py::arg("points") = py::none());

  m.def(
      "run_domain",
      [](const std::string& domain, int n, int control_factor) {
        TableOptions opts;
        opts.control_factor = control_factor;
        const DomainRun r = run_domain(resolve_domain(domain), n, opts);
        py::dict out;
        out["domain"] = r.domain;
        out["n"] = r.n;
        out["wam_size"] = r.wam_size;
        out["afp_size"] = r.afp_size;
        out["control_size"] = r.control_size;
        out["lebesgue"] = r.lebesgue;
        out["ls_error"] = r.ls_error;
        out["interp_error"] = r.interp_error;
        return out;
      },
      py::arg("domain"), py::arg("n"), py::arg("control_factor") = 4);

  m.def(
      "table",
      [](int id, std::vector<int> degrees) {
        TableOptions opts;
        if (!degrees.empty()) opts.degrees = std::move(degrees);
        return json_to_py(table_json(compute_table(id, opts)));
      },
      py::arg("id"), py::arg("degrees") = std::vector<int>{});

  m.def(
      "format_table",
      [](int id, std::vector<int> degrees) {
        TableOptions opts;
        if (!degrees.empty()) opts.degrees = std::move(degrees);
        return format_table(compute_table(id, opts));
      },
      py::arg("id"), py::arg("degrees") = std::vector<int>{});

  m.def(
      "test_function",
      [](int id, double x, double y, bool unit_square) { return test_function(id, unit_square)({x, y}); },
      py::arg("id"), py::arg("x"), py::arg("y"), py::arg("unit_square") = false);
}
