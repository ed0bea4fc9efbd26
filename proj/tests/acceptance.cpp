// Acceptance run: one PASS/FAIL line per criterion on stdout, details on stderr.
#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <numeric>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "wamfek/approx.hpp"
#include "wamfek/error.hpp"
#include "wamfek/fekete.hpp"
#include "wamfek/io.hpp"
#include "wamfek/mesh.hpp"
#include "wamfek/tables.hpp"

using namespace wamfek;

namespace {

using Clock = std::chrono::steady_clock;
using Row = std::array<double, 6>;  // n = 5, 10, ..., 30

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

constexpr std::array<int, 6> kDegrees = kTableDegrees;

// Published values.
constexpr Row kAfpCount{21, 66, 136, 231, 351, 496};
constexpr std::array<double, 2> kAmCount{2032, 31700};
constexpr Row kDiskLebesgue{5, 24, 32, 42, 60, 81};

struct PaperErrors {
  const char* domain;
  std::array<Row, 3> ls;      // LS on the WAM, tests 1-3
  std::array<Row, 3> interp;  // interpolation at the AFP, tests 1-3
};

const std::array<PaperErrors, 6> kErrors{{
    {"disk",
     {{{5e-4, 1e-10, 3e-15, 7e-15, 6e-15, 2e-14}, {5e-1, 7e-2, 5e-2, 6e-3, 4e-3, 5e-4}, {2e-2, 1e-3, 7e-4, 1e-4, 2e-4, 4e-5}}},
     {{{1e-3, 3e-10, 2e-15, 2e-15, 2e-15, 3e-15}, {5e-1, 7e-2, 5e-2, 6e-3, 4e-3, 5e-4}, {2e-2, 1e-3, 7e-4, 1e-4, 2e-4, 4e-5}}}},
    {"simplex",
     {{{7e-7, 8e-15, 3e-15, 4e-15, 4e-15, 6e-15}, {2e-2, 5e-4, 1e-5, 4e-7, 1e-8, 4e-10}, {7e-4, 5e-6, 4e-7, 8e-8, 2e-8, 7e-9}}},
     {{{2e-6, 2e-14, 1e-15, 3e-15, 3e-15, 5e-15}, {5e-2, 2e-3, 4e-5, 2e-6, 3e-8, 2e-9}, {8e-4, 2e-5, 1e-6, 2e-7, 6e-8, 3e-8}}}},
    {"linear-trapezoid",
     {{{3e-3, 5e-9, 1e-13, 3e-15, 4e-15, 9e-15}, {2e-1, 2e-1, 1e-1, 3e-2, 1e-2, 5e-3}, {3e-2, 4e-3, 2e-3, 5e-4, 2e-4, 1e-4}}},
     {{{8e-3, 2e-8, 3e-13, 4e-15, 3e-15, 4e-15}, {3e-1, 2e-1, 2e-1, 3e-2, 2e-1, 1e-2}, {5e-2, 4e-3, 3e-3, 5e-4, 3e-4, 2e-4}}}},
    {"cubic-trapezoid",
     {{{2e-3, 6e-9, 6e-14, 3e-15, 4e-15, 5e-15}, {4e-1, 2e-1, 6e-2, 3e-2, 9e-3, 5e-3}, {3e-2, 3e-3, 9e-4, 5e-4, 2e-4, 2e-4}}},
     {{{6e-3, 1e-8, 1e-13, 5e-15, 3e-15, 4e-15}, {5e-1, 2e-1, 7e-2, 5e-2, 1e-2, 6e-3}, {6e-2, 5e-3, 9e-4, 7e-4, 2e-4, 2e-4}}}},
    {"convex-polygon",
     {{{7e-4, 1e-9, 7e-15, 9e-15, 1e-14, 2e-14}, {4e-1, 1e-1, 4e-2, 2e-2, 4e-3, 1e-3}, {2e-2, 2e-3, 6e-4, 3e-4, 1e-4, 9e-5}}},
     {{{1e-3, 4e-9, 6e-15, 4e-15, 4e-15, 5e-15}, {5e-1, 1e-1, 4e-2, 2e-2, 9e-3, 3e-3}, {2e-2, 2e-3, 6e-4, 3e-4, 1e-4, 8e-5}}}},
    {"nonconvex-polygon",
     {{{5e-4, 3e-10, 1e-14, 2e-14, 3e-14, 4e-13}, {4e-1, 2e-1, 5e-2, 2e-2, 5e-3, 1e-3}, {2e-2, 3e-3, 7e-4, 3e-4, 1e-4, 9e-5}}},
     {{{6e-4, 5e-10, 3e-15, 3e-15, 3e-15, 4e-15}, {6e-1, 2e-1, 5e-2, 2e-2, 5e-3, 2e-3}, {4e-2, 3e-3, 8e-4, 3e-4, 1e-4, 7e-5}}}},
}};

// LS on the uniform AM of the disk, n = 5, 10.
constexpr std::array<std::array<double, 2>, 3> kDiskAmErrors{{{9e-4, 3e-10}, {4e-1, 1e-1}, {2e-2, 2e-3}}};

bool within_orders(double computed, double paper) {
  const double slack = paper <= 1e-12 ? 100.0 : 10.0;
  return computed <= paper * slack && computed >= paper / slack;
}

void report(int id, bool ok, const std::string& summary, bool& all_ok) {
  std::printf("criterion %d: %s  %s\n", id, ok ? "PASS" : "FAIL", summary.c_str());
  std::fflush(stdout);
  all_ok = all_ok && ok;
}

void detail(const char* fmt, auto... args) {
  std::fprintf(stderr, "  ");
  std::fprintf(stderr, fmt, args...);
  std::fprintf(stderr, "\n");
}

BasisSpec cheb(int n, const Domain& d) { return BasisSpec::for_domain(BasisFamily::ProductChebyshev, n, d); }

const std::vector<BuiltinDomain>& table_domains() {
  static const std::vector<BuiltinDomain> six(builtin_domains().begin(), builtin_domains().begin() + 6);
  return six;
}

double log_abs_det_cols(const Eigen::MatrixXd& v, const std::vector<std::size_t>& cols) {
  Eigen::MatrixXd s(v.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t i = 0; i < cols.size(); ++i) s.col(static_cast<Eigen::Index>(i)) = v.col(static_cast<Eigen::Index>(cols[i]));
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(s);
  return lu.matrixLU().diagonal().cwiseAbs().array().log().sum();
}

bool criterion1() {
  bool ok = true;
  double worst_time = 0.0;
  const Domain simplex = Domain::triangle({0, 0}, {1, 0}, {0, 1});
  for (std::size_t i = 0; i < kDegrees.size(); ++i) {
    const int n = kDegrees[i];
    const auto t0 = Clock::now();
    const Mesh disk = disk_wam(n);
    const auto afp = extract_afp(disk, cheb(n, Domain::unit_disk()));
    const Mesh tri = wam(simplex, n);
    worst_time = std::max(worst_time, seconds_since(t0));
    const auto want_disk = static_cast<std::size_t>(2 * n * n + n + 1);
    const auto want_tri = static_cast<std::size_t>(2 * n * n + 2 * n);
    if (disk.size() != want_disk) detail("n=%d disk WAM %zu != %zu", n, disk.size(), want_disk);
    if (afp.size() != poly_dim(n) || static_cast<double>(afp.size()) != kAfpCount[i])
      detail("n=%d AFP %zu != %g", n, afp.size(), kAfpCount[i]);
    if (tri.size() != want_tri) detail("n=%d triangle WAM %zu != 2n^2+2n = %zu", n, tri.size(), want_tri);
    ok = ok && disk.size() == want_disk && afp.size() == poly_dim(n) && tri.size() == want_tri;
  }
  ok = ok && worst_time < 1.0;
  detail("slowest degree %.3f s", worst_time);
  return ok;
}

bool criterion2() {
  const Domain disk = Domain::unit_disk();
  bool ok = true;
  for (std::size_t i = 0; i < kAmCount.size(); ++i) {
    const int n = i == 0 ? 5 : 10;
    const double card = static_cast<double>(uniform_am(disk, n).size());
    const double rel = card / kAmCount[i] - 1.0;
    detail("n=%d AM %g vs %g (%+.1f%%)", n, card, kAmCount[i], 100.0 * rel);
    ok = ok && std::abs(rel) <= 0.3;
  }
  int first_refused = 0;
  for (int n = 1; n <= 30 && first_refused == 0; ++n) {
    try {
      (void)uniform_am(disk, n, 1e7);
    } catch (const MeshTooLargeError&) {
      first_refused = n;
    }
  }
  detail("AM guard first triggers at n=%d", first_refused);
  return ok && first_refused > 0 && first_refused < 30;
}

bool criterion3(const std::map<std::string, std::array<DomainRun, 6>>& runs, double worst_n30) {
  bool ok = true;
  const auto& disk = runs.at("disk");
  for (std::size_t i = 0; i < kDegrees.size(); ++i) {
    const double lam = std::round(disk[i].lebesgue);
    const bool good = lam <= 2.0 * kDiskLebesgue[i] && lam >= kDiskLebesgue[i] / 2.0;
    detail("disk n=%d Lebesgue %g vs %g%s", kDegrees[i], lam, kDiskLebesgue[i], good ? "" : "  <-- outside factor 2");
    ok = ok && good;
  }
  for (const auto& [name, row] : runs) {
    for (std::size_t i = 1; i < kDegrees.size(); ++i) {
      const double bound = 0.5 * static_cast<double>(row[i].afp_size);
      if (row[i].lebesgue > bound) {
        detail("%s n=%d Lebesgue %.1f > N/2 = %g", name.c_str(), kDegrees[i], row[i].lebesgue, bound);
        ok = false;
      }
    }
  }
  detail("slowest domain at n=30: %.1f s", worst_n30);
  return ok && worst_n30 < 60.0;
}

bool criterion4() {
  const Domain disk = Domain::unit_disk();
  int first_deficient = 0;
  for (int n = 20; n <= 35 && first_deficient == 0; ++n) {
    try {
      (void)extract_afp(disk_wam(n), {BasisFamily::Monomial, n, Rect{}}, 0);
    } catch (const RankDeficientError&) {
      first_deficient = n;
    }
  }
  detail("Mon(0) first rank-deficient at n=%d", first_deficient);
  bool refined_ok = true;
  for (int n = 1; n <= 30; ++n) {
    try {
      (void)extract_afp(disk_wam(n), {BasisFamily::Monomial, n, Rect{}}, 2);
    } catch (const RankDeficientError&) {
      detail("Mon(2) rank-deficient at n=%d", n);
      refined_ok = false;
    }
  }
  return first_deficient >= 20 && refined_ok;
}

bool criterion5(const std::map<std::string, std::array<DomainRun, 6>>& runs, int& checked, int& failed) {
  checked = failed = 0;
  const auto check = [&](const char* dom, const char* kind, int test, int n, double got, double paper) {
    ++checked;
    if (!within_orders(got, paper)) {
      ++failed;
      detail("%s test %d %s n=%d: %.1e vs paper %.0e", dom, test, kind, n, got, paper);
    }
  };
  for (const auto& paper : kErrors) {
    const auto& row = runs.at(paper.domain);
    for (std::size_t i = 0; i < kDegrees.size(); ++i)
      for (int t = 0; t < 3; ++t) {
        check(paper.domain, "LS WAM", t + 1, kDegrees[i], row[i].ls_error[static_cast<std::size_t>(t)], paper.ls[static_cast<std::size_t>(t)][i]);
        check(paper.domain, "interp AFP", t + 1, kDegrees[i], row[i].interp_error[static_cast<std::size_t>(t)],
              paper.interp[static_cast<std::size_t>(t)][i]);
      }
  }
  const BuiltinDomain& disk = table_domains().front();
  for (std::size_t i = 0; i < 2; ++i) {
    const int n = i == 0 ? 5 : 10;
    const auto am = am_ls_errors(disk, n);
    if (!am) {
      ++checked;
      ++failed;
      detail("disk LS AM n=%d refused by the memory guard", n);
      continue;
    }
    for (std::size_t t = 0; t < 3; ++t) check("disk", "LS AM", static_cast<int>(t) + 1, n, (*am)[t], kDiskAmErrors[t][i]);
  }
  return failed == 0;
}

bool criterion6() {
  bool ok = true;
  std::mt19937_64 rng(20240601);

  double worst_c = 0.0;
  for (const auto& b : builtin_domains())
    for (int n : kDegrees) {
      const double c = sampled_wam_constant(wam(b.domain, n), control_mesh(b.domain, n), cheb(n, b.domain), 200,
                                            static_cast<std::uint64_t>(n));
      if (c > worst_c) worst_c = c;
      if (c > 15.0) detail("%s n=%d sampled WAM constant %.2f > 15", b.name.c_str(), n, c);
    }
  detail("largest sampled WAM constant %.2f", worst_c);
  ok = ok && worst_c <= 15.0;

  int beaten = 0;
  for (const auto& b : builtin_domains())
    for (int n : {5, 8}) {
      const Mesh mesh = wam(b.domain, n);
      const auto afp = extract_afp(mesh, cheb(n, b.domain));
      const Eigen::MatrixXd v = working_basis_matrix(afp.basis, afp.transition, mesh.points).transpose();
      const double greedy = log_abs_det_cols(v, afp.indices);
      std::vector<std::size_t> all(mesh.size());
      for (int trial = 0; trial < 1000; ++trial) {
        std::iota(all.begin(), all.end(), std::size_t{0});
        std::shuffle(all.begin(), all.end(), rng);
        if (log_abs_det_cols(v, {all.begin(), all.begin() + static_cast<std::ptrdiff_t>(afp.size())}) > greedy) ++beaten;
      }
    }
  detail("random subsets beating the greedy determinant: %d", beaten);
  ok = ok && beaten == 0;

  int bound_violations = 0;
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    Eigen::MatrixXd a(3, 6);
    for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = unif(rng);
    double best = -1e300;
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t j = i + 1; j < 6; ++j)
        for (std::size_t k = j + 1; k < 6; ++k) best = std::max(best, log_abs_det_cols(a, {i, j, k}));
    if (greedy_columns(a).log_abs_det < best - std::log(6.0) - 1e-12) ++bound_violations;
  }
  detail("3x6 max-volume bound violations: %d / 1000", bound_violations);
  ok = ok && bound_violations == 0;

  double worst_area = 0.0;
  for (const char* name : {"disk", "simplex", "convex-polygon", "nonconvex-polygon"}) {
    const Domain& d = find_builtin(name)->domain;
    const double area = std::holds_alternative<Polygon>(d.kind())
                            ? std::abs(signed_area(std::get<Polygon>(d.kind()).vertices))
                            : (std::string(name) == "disk" ? std::numbers::pi : 0.5);
    for (int n : kDegrees) {
      const auto afp = extract_afp(wam(d, n), cheb(n, d));
      const double sum = cubature_weights(afp, to_working_basis(afp, moments(d, afp.basis))).sum();
      worst_area = std::max(worst_area, std::abs(sum - area));
    }
  }
  detail("largest cubature weight-sum error %.1e", worst_area);
  ok = ok && worst_area <= 1e-10;

  double worst_repro = 0.0;
  for (const auto& b : builtin_domains())
    for (int n : {5, 10, 15, 20}) {
      const BasisSpec spec = cheb(n, b.domain);
      Eigen::VectorXd c(static_cast<Eigen::Index>(spec.size()));
      for (Eigen::Index i = 0; i < c.size(); ++i) c(i) = unif(rng);
      const ScalarFunction p = [&](Point2 z) { return eval_basis(spec, z).dot(c); };
      const Mesh mesh = wam(b.domain, n);
      const Mesh control = control_mesh(b.domain, n, 2);
      double scale = 1.0;
      for (const auto& z : control.points) scale = std::max(scale, std::abs(p(z)));
      const auto afp = extract_afp(mesh, spec);
      worst_repro = std::max({worst_repro, uniform_error(interpolate(p, afp), p, control) / scale,
                              uniform_error(least_squares_fit(p, mesh, spec, 2), p, control) / scale});
    }
  detail("largest relative polynomial reproduction error %.1e", worst_repro);
  return ok && worst_repro <= 1e-10;
}

}  // namespace

int main() {
  const auto t_total = Clock::now();
  bool all_ok = true;

  report(1, criterion1(), "cardinalities: disk WAM 2n^2+n+1, AFP = Table 1, triangle WAM 2n^2+2n; < 1 s each", all_ok);
  report(2, criterion2(), "disk AM within 30% of Table 1 at n=5,10; memory guard before n=30", all_ok);

  // One Chebyshev s=2 run per domain and degree feeds criteria 3 and 5.
  std::map<std::string, std::array<DomainRun, 6>> runs;
  double worst_n30 = 0.0;
  for (const auto& b : table_domains()) {
    for (std::size_t i = 0; i < kDegrees.size(); ++i) {
      const auto t0 = Clock::now();
      runs[b.name][i] = run_domain(b, kDegrees[i]);
      if (kDegrees[i] == 30) worst_n30 = std::max(worst_n30, seconds_since(t0));
    }
  }
  const bool lebesgue_ok = criterion3(runs, worst_n30);
  report(3, lebesgue_ok, "disk Lebesgue within factor 2 of Table 2; Lambda <= N/2 on all six domains; n=30 < 60 s",
         all_ok);
  report(4, criterion4(), "Mon(0) rank-deficient for some n in [20,35]; Mon(2) full rank for n <= 30", all_ok);

  int checked = 0, failed = 0;
  const bool errors_ok = criterion5(runs, checked, failed);
  const double elapsed = seconds_since(t_total);
  report(5, errors_ok && elapsed < 900.0,
         "error tables within one order (two near eps): " + std::to_string(checked - failed) + "/" +
             std::to_string(checked) + " entries, " + std::to_string(static_cast<int>(elapsed)) + " s so far",
         all_ok);

  const bool props = criterion6();
  report(6, props, "sampled WAM C <= 15, determinant dominance, 3x6 bound, cubature sums, polynomial reproduction",
         all_ok);
  // Not reproducible at this scale; the determinant-dominance (6) and
  // Lebesgue-growth (3) checks stand in.
  report(7, props && lebesgue_ok, "asymptotic theory not reproducible; stand-in properties of criteria 3 and 6", all_ok);

  std::printf("total %.0f s\n", seconds_since(t_total));
  return all_ok ? 0 : 1;
}
