#include <sstream>

#include "doctest.h"
#include "wamfek/error.hpp"
#include "wamfek/io.hpp"
#include "wamfek/tables.hpp"

using namespace wamfek;
using nlohmann::json;

TEST_SUITE("io") {

TEST_CASE("builtin domains") {
  const auto& all = builtin_domains();
  REQUIRE(all.size() == 7);
  CHECK(all.front().name == "disk");
  CHECK(find_builtin("nonconvex-polygon") != nullptr);
  CHECK(find_builtin("nonconvex-polygon")->unit_square_functions);
  CHECK_FALSE(find_builtin("simplex")->unit_square_functions);
  CHECK(find_builtin("hexagon") == nullptr);
}

TEST_CASE("domain JSON round trip") {
  for (const auto& b : builtin_domains()) {
    const json j = domain_to_json(b.domain);
    const Domain back = parse_domain(j);
    CHECK(back.kind_name() == b.domain.kind_name());
    CHECK(back.area() == doctest::Approx(b.domain.area()));
    CHECK(domain_to_json(back) == j);
  }
}

TEST_CASE("domain JSON parsing") {
  const Domain t = parse_domain(json::parse(R"({"kind":"triangle","vertices":[[0,0],[2,0],[0,2]]})"));
  CHECK(t.area() == doctest::Approx(2.0));
  const Domain s = parse_domain(json::parse(R"({"kind":"square","x_lo":0,"x_hi":1,"y_lo":0,"y_hi":3})"));
  CHECK(s.area() == doctest::Approx(3.0));
  const Domain tr = parse_domain(json::parse(R"({"kind":"trapezoid","a":0,"b":1,"g1":0,"g2":[1,1]})"));
  CHECK(tr.area() == doctest::Approx(1.5));
  CHECK_THROWS_AS(parse_domain(json::parse(R"({"kind":"annulus"})")), ConfigError);
  CHECK_THROWS_AS(parse_domain(json::parse(R"({"kind":"triangle","vertices":[[0,0],[1,0]]})")), ConfigError);
  CHECK_THROWS_AS(parse_domain(json::parse(R"({"kind":"polygon","vertices":[[0,0],[1,1],[1,0],[0,1]]})")), ConfigError);
  CHECK_THROWS_AS(parse_domain(json::parse(R"([1,2])")), ConfigError);
}

TEST_CASE("resolve_domain") {
  CHECK(resolve_domain("simplex").name == "simplex");
  const auto inline_dom = resolve_domain(R"({"kind":"disk","unit_square_functions":true})");
  CHECK(inline_dom.unit_square_functions);
  CHECK_THROWS_AS(resolve_domain("{\"kind\":"), ConfigError);
  CHECK_THROWS_AS(resolve_domain("/no/such/file.json"), ConfigError);
}

TEST_CASE("points CSV round trip is exact") {
  const std::vector<Point2> pts{{0.1, -0.2}, {1.0 / 3.0, 2.0 / 7.0}, {-1e-300, 5e300}};
  std::ostringstream os;
  write_points_csv(os, pts);
  CHECK(os.str().rfind("x,y\n", 0) == 0);
  std::istringstream is(os.str());
  CHECK(read_points_csv(is) == pts);
  std::istringstream bad("a,b\n1,2\n");
  CHECK_THROWS_AS(read_points_csv(bad), ConfigError);
}

TEST_CASE("mesh sidecar") {
  const json j = mesh_sidecar(wam(Domain::triangle({0, 0}, {1, 0}, {0, 1}), 4));
  CHECK(j["degree"] == 4);
  CHECK(j["provenance"] == "PaduaMapWAM");
  CHECK(j["map_degree"] == 2);
  CHECK(j["cardinality"] == 42);
  const json am = mesh_sidecar(uniform_am(Domain::unit_disk(), 3));
  CHECK(am.contains("stepsize"));
}

TEST_CASE("svg scatter") {
  const Mesh m = wam(Domain::unit_disk(), 3);
  const SvgLayer layer{m.points, "red"};
  const std::string svg = svg_scatter(Domain::unit_disk(), std::span<const SvgLayer>(&layer, 1));
  CHECK(svg.find("width=\"600\"") != std::string::npos);
  std::size_t circles = 0;
  for (auto pos = svg.find("<circle"); pos != std::string::npos; pos = svg.find("<circle", pos + 1)) ++circles;
  CHECK(circles == m.size() + 1);  // points plus the outline
}

}  // TEST_SUITE

TEST_SUITE("tables") {

TEST_CASE("one-digit scientific format") {
  CHECK(format_sci1(5e-4) == "5E-4");
  CHECK(format_sci1(2.2e-15) == "2E-15");
  CHECK(format_sci1(0.96) == "1E0");
  CHECK(format_sci1(3.4e2) == "3E2");
  CHECK(format_sci1(0.0) == "0");
}

TEST_CASE("table 1 on small degrees") {
  TableOptions opts;
  opts.degrees = {5, 10};
  const Table t = compute_table(1, opts);
  REQUIRE(t.rows.size() == 3);
  CHECK(t.rows[1].cells[0] == 56.0);
  CHECK(t.rows[2].cells[0] == 21.0);
  CHECK(t.rows[2].cells[1] == 66.0);
  REQUIRE(t.rows[0].cells[0].has_value());
  const std::string text = format_table(t);
  CHECK(text.find("n=10") != std::string::npos);
  const json j = table_json(t);
  CHECK(j["table"] == 1);
  CHECK(j["rows"].size() == 6);
  CHECK(j["rows"][0].contains("metric"));
}

TEST_CASE("AM counts are listed beyond the cap; AM fits are starred") {
  TableOptions opts;
  opts.degrees = {15};
  const Table t1 = compute_table(1, opts);
  REQUIRE(t1.rows[0].cells[0].has_value());
  CHECK(*t1.rows[0].cells[0] == doctest::Approx(159692).epsilon(0.3));
  const Table t3 = compute_table(3, opts);
  REQUIRE(t3.rows[0].label == "LS AM");
  CHECK_FALSE(t3.rows[0].cells[0].has_value());
  CHECK(format_table(t3).find('*') != std::string::npos);
  CHECK(table_json(t3)["rows"][0]["value"].is_null());
}

TEST_CASE("table 5 entry") {
  TableOptions opts;
  opts.degrees = {15};
  const Table t = compute_table(5, opts);
  // test 1, interp AFP
  REQUIRE(t.rows[1].label == "interp AFP");
  CHECK(*t.rows[1].cells[0] <= 1e-13);
}

TEST_CASE("unknown table id") { CHECK_THROWS_AS(compute_table(10), ConfigError); }

}  // TEST_SUITE
