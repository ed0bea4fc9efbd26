#include <cmath>
#include <set>

#include "doctest.h"
#include "wamfek/basis.hpp"
#include "wamfek/error.hpp"
#include "wamfek/fekete.hpp"
#include "wamfek/io.hpp"
#include "wamfek/mesh.hpp"

using namespace wamfek;

namespace {

// Brute-force count of grid points (x_lo + i h, y_lo + j h) inside the disk.
std::size_t disk_grid_count(int n) {
  const double h = 1.0 / (n * n + 1.0);
  const auto steps = static_cast<long>(std::floor(2.0 / h + 1e-9));
  std::size_t count = 0;
  for (long i = 0; i <= steps; ++i) {
    for (long j = 0; j <= steps; ++j) {
      const double x = -1.0 + i * h, y = -1.0 + j * h;
      if (x * x + y * y <= 1.0 + 1e-10) ++count;
    }
  }
  return count;
}

std::size_t min_pair_distance_violations(const Mesh& m, double tol) {
  std::size_t bad = 0;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i + 1; j < m.size(); ++j)
      if (distance(m.points[i], m.points[j]) <= tol) ++bad;
  return bad;
}

}  // namespace

TEST_SUITE("mesh") {

TEST_CASE("chebyshev-lobatto nodes") {
  const auto c2 = chebyshev_lobatto(2);
  REQUIRE(c2.size() == 3);
  CHECK(c2[0] == 1.0);
  CHECK(c2[1] == 0.0);
  CHECK(c2[2] == -1.0);
  const auto c4 = chebyshev_lobatto(4);
  CHECK(c4[1] == doctest::Approx(std::sqrt(0.5)));
  CHECK(c4[2] == 0.0);
  CHECK(c4[1] == -c4[3]);
  CHECK_THROWS_AS(chebyshev_lobatto(0), ConfigError);
}

TEST_CASE("padua points") {
  const auto p1 = padua_points(1);
  REQUIRE(p1.size() == 3);
  const std::set<std::pair<double, double>> got{{p1[0].x, p1[0].y}, {p1[1].x, p1[1].y}, {p1[2].x, p1[2].y}};
  const std::set<std::pair<double, double>> want{{-1.0, 1.0}, {-1.0, -1.0}, {1.0, 0.0}};
  CHECK(got == want);
  CHECK(padua_points(8).size() == 45);
  CHECK(padua_points(16).size() == 153);
  for (int n = 1; n <= 20; ++n) CHECK(padua_points(n).size() == poly_dim(n));
}

TEST_CASE("padua points are unisolvent") {
  for (int n : {4, 8, 12}) {
    Mesh m;
    m.degree = n;
    m.points = padua_points(n);
    const BasisSpec spec{BasisFamily::ProductChebyshev, n, Rect{}};
    const auto v = vandermonde(spec, m);
    REQUIRE(v.rows() == v.cols());
    CHECK(condition_number(v.entries) < 1e6);
  }
}

TEST_CASE("disk WAM cardinality") {
  CHECK(disk_wam(1).size() == 4);
  CHECK(disk_wam(8).size() == 137);
  CHECK(disk_wam(30).size() == 1831);
  for (int n = 1; n <= 30; ++n) CHECK(disk_wam(n).size() == static_cast<std::size_t>(2 * n * n + n + 1));
  const Mesh m = disk_wam(8);
  CHECK(m.provenance == Provenance::PolarWAM);
  CHECK(m.duplicates_removed == 2 * 8);  // the r = 0 ring collapses to one point
}

TEST_CASE("triangle WAM cardinality") {
  const Domain simplex = Domain::triangle({0, 0}, {1, 0}, {0, 1});
  // card(B_2n) - card(C^odd_{2n+1}) + 1 = 2n^2 + 2n + 2
  for (int n : {1, 2, 3, 5, 8, 10, 20}) {
    const Mesh m = wam(simplex, n);
    CHECK(m.size() == static_cast<std::size_t>(2 * n * n + 2 * n + 2));
    CHECK(m.map_degree == 2);
    CHECK(m.provenance == Provenance::PaduaMapWAM);
  }
}

TEST_CASE("trapezoid WAM") {
  const Domain cubic = Domain::trapezoid(-1, 1, {-1.0}, {0.5, 0.0, 0.5, -0.5});
  const Mesh m = wam(cubic, 8);
  CHECK(m.map_degree == 4);
  CHECK(m.size() <= 561);
  CHECK(m.size() >= poly_dim(8));
  for (const auto& p : m.points) CHECK(cubic.contains(p));
}

TEST_CASE("mapped_wam rejects disk and polygon") {
  CHECK_THROWS_AS(mapped_wam(Domain::unit_disk(), 3), ConfigError);
  CHECK_THROWS_AS(mapped_wam(Domain::polygon({{0, 0}, {1, 0}, {0, 1}}), 3), ConfigError);
}

TEST_CASE("union WAM") {
  const Domain a = Domain::triangle({0, 0}, {1, 0}, {1, 1});
  const Domain b = Domain::triangle({0, 0}, {1, 1}, {0, 1});
  const Mesh ma = wam(a, 8), mb = wam(b, 8);
  SUBCASE("single mesh is unchanged") {
    const Mesh u = union_wam(std::span<const Mesh>(&ma, 1));
    CHECK(u.points == ma.points);
    CHECK(u.provenance == ma.provenance);
  }
  SUBCASE("shared edge points are merged") {
    const Mesh both[] = {ma, mb};
    const Mesh u = union_wam(both);
    CHECK(u.size() < ma.size() + mb.size());
    CHECK(u.size() <= 2 * 146);
    CHECK(min_pair_distance_violations(u, dedup_tolerance(std::sqrt(2.0))) == 0);
  }
  SUBCASE("mixed degrees are rejected") {
    const Mesh mixed[] = {ma, wam(b, 7)};
    CHECK_THROWS_AS(union_wam(mixed), ConfigError);
  }
}

TEST_CASE("polygon WAM") {
  for (const char* name : {"convex-polygon", "nonconvex-polygon"}) {
    const Domain& d = find_builtin(name)->domain;
    for (auto split : {PolygonSplit::Trapezoids, PolygonSplit::Triangles}) {
      const Mesh m = polygon_wam(d, 6, split);
      CHECK(m.size() >= poly_dim(6));
      CHECK(m.provenance == Provenance::UnionWAM);
      for (const auto& p : m.points) CHECK(d.contains(p, 1e-9));
    }
  }
}

TEST_CASE("dedup keeps the first occurrence") {
  std::vector<Point2> pts{{0, 0}, {1, 0}, {1e-14, 0}, {1, 1e-13}, {0.5, 0.5}};
  CHECK(dedup_in_place(pts, 1e-12) == 2);
  REQUIRE(pts.size() == 3);
  CHECK(pts[0] == Point2{0, 0});
  CHECK(pts[1] == Point2{1, 0});
  CHECK(pts[2] == Point2{0.5, 0.5});
  CHECK(dedup_tolerance(2.0) == doctest::Approx(3e-12));
}

TEST_CASE("every builtin WAM lies in its domain and is duplicate free") {
  for (const auto& b : builtin_domains()) {
    const Mesh m = wam(b.domain, 7);
    CHECK(m.degree == 7);
    for (const auto& p : m.points) CHECK(b.domain.contains(p, 1e-9));
    CHECK(min_pair_distance_violations(m, dedup_tolerance(b.domain.diameter())) == 0);
  }
}

TEST_CASE("tensor WAM") {
  const Mesh m = tensor_wam({0, 2, -1, 1}, 5);
  CHECK(m.size() == 36);
  CHECK(m.provenance == Provenance::TensorWAM);
}

TEST_CASE("control mesh") {
  const Mesh c = control_mesh(Domain::unit_disk(), 5);
  CHECK(c.degree == 5);
  CHECK(c.size() == disk_wam(20).size());
}

TEST_CASE("uniform admissible mesh") {
  const Domain disk = Domain::unit_disk();
  const Mesh am5 = uniform_am(disk, 5);
  CHECK(am5.size() == disk_grid_count(5));
  CHECK(am5.size() >= 1600);
  CHECK(am5.size() <= 2600);
  CHECK(am5.stepsize == doctest::Approx(1.0 / 26.0));
  CHECK(am5.provenance == Provenance::UniformAM);
  const Mesh am10 = uniform_am(disk, 10);
  const double ratio = static_cast<double>(am10.size()) / static_cast<double>(am5.size());
  CHECK(ratio >= 14.0);
  CHECK(ratio <= 18.0);
  CHECK(am_cardinality(disk, 5) == am5.size());
  CHECK(am_cardinality(disk, 10) == am10.size());
  CHECK(am_cardinality(disk, 20) == disk_grid_count(20));
  CHECK(projected_am_cardinality(disk, 10) == doctest::Approx(static_cast<double>(am10.size())).epsilon(0.02));
}

TEST_CASE("uniform AM memory guard") {
  const Domain disk = Domain::unit_disk();
  CHECK_NOTHROW(uniform_am(disk, 10));
  try {
    (void)uniform_am(disk, 15);
    FAIL("expected the guard to trigger");
  } catch (const MeshTooLargeError& e) {
    CHECK(e.projected() > 1e5);
  }
  CHECK_THROWS_AS(uniform_am(disk, 30), MeshTooLargeError);
  CHECK_NOTHROW(uniform_am(disk, 15, 1e9));
}

}  // TEST_SUITE
