#include <doctest.h>

#include <algorithm>

#include "generators.hpp"
#include "thales/corpus.hpp"
#include "thales/errors.hpp"
#include "thales/harness.hpp"
#include "thales/io.hpp"

using namespace thales;
using thales::testing::Rng;

namespace {

Point pt(long x, long y) { return {Constructible(x), Constructible(y)}; }
Point ptq(long xn, long xd, long yn, long yd) {
  return {Constructible::from_rational(xn, xd), Constructible::from_rational(yn, yd)};
}

std::size_t occurrences(const std::string& s, const std::string& what) {
  std::size_t n = 0;
  for (std::size_t pos = s.find(what); pos != std::string::npos; pos = s.find(what, pos + 1)) ++n;
  return n;
}

std::string error_of(std::string_view text) {
  try {
    parse_points(text, true);
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

Snapshot full_snapshot(Construction& c) {
  materialize_all_circles(c.reg);
  return snapshot_of(c);
}

}  // namespace

TEST_CASE("parse_points") {
  CHECK(parse_points("0,0\n1/2,3/4") == std::vector<Point>{pt(0, 0), ptq(1, 2, 3, 4)});
  CHECK(parse_points("0.25,1") == std::vector<Point>{ptq(1, 4, 1, 1)});
  CHECK(parse_points("# header\n\n  -3 , 2/6  # trailing\n") == std::vector<Point>{ptq(-3, 1, 1, 3)});
  CHECK(parse_points("").empty());
  CHECK(error_of("1,,2").rfind("line 1:", 0) == 0);
  CHECK(error_of("0,0\n\n1;2").rfind("line 3:", 0) == 0);
  CHECK(error_of("0,0\n1,2,3").rfind("line 2:", 0) == 0);
  CHECK(error_of("1/0,1").rfind("line 1:", 0) == 0);
  CHECK(error_of("0,0\n0/5,0.0").rfind("line 2:", 0) == 0);
  CHECK(parse_points("0,0\n0/5,0.0", false).size() == 1);
}

TEST_CASE("serialize_points round trip") {
  Rng rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Point> p;
    for (long i = rng.range(0, 10); i > 0; --i) p.push_back(testing::random_rational_point(rng, 5, 30));
    p = parse_points(serialize_points(p));  // drops repeats
    CHECK(parse_points(serialize_points(p)) == p);
  }
  CHECK_THROWS_AS(serialize_points({Point{sqrt(Constructible(2)), Constructible(0)}}), InputError);
}

TEST_CASE("corpora") {
  CHECK(grid(2) == std::vector<Point>{pt(0, 0), pt(0, 1), pt(1, 0), pt(1, 1)});
  CHECK(grid(3).size() == 9);
  CHECK(generate_corpus("grid:5") == grid(5));

  const auto r = random_rational(40, 17, 20);
  CHECK(r.size() == 40);
  CHECK(r == random_rational(40, 17, 20));
  CHECK(r != random_rational(40, 18, 20));
  for (const Point& p : r) {
    CHECK(p.x.rational().get_den() <= 20);
    CHECK(p.y.rational().get_den() <= 20);
    CHECK(abs(p.x.rational()) <= 2);
  }
  CHECK(generate_corpus("random:40:17:20") == r);

  const auto u = pythagorean_points(12);
  REQUIRE(u.size() == 12);
  CHECK(u[0] == ptq(3, 5, 4, 5));
  CHECK(u[1] == ptq(-3, 5, 4, 5));
  const Circle unit(pt(0, 0), Constructible(1));
  for (const Point& p : u) CHECK(on_circle(p, unit));

  const auto c = circle_rich(20, 5);
  CHECK(c.size() == 20);
  CHECK(std::find(c.begin(), c.end(), ptq(3, 5, 4, 5)) != c.end());
  CHECK(std::find(c.begin(), c.end(), ptq(-3, 5, 4, 5)) != c.end());
  CHECK(c == circle_rich(20, 5));

  CHECK_THROWS_AS(generate_corpus("grid"), InputError);
  CHECK_THROWS_AS(generate_corpus("grid:x"), InputError);
  CHECK_THROWS_AS(generate_corpus("hex:3"), InputError);
}

TEST_CASE("coloring dumps") {
  EngineConfig cfg;
  cfg.closure.max_level = 2;
  cfg.closure.point_budget_per_level = 10;
  Construction a = run_construction(grid(3), cfg);
  Construction b = run_construction(grid(3), cfg);
  const Snapshot sa = full_snapshot(a), sb = full_snapshot(b);
  const std::string csv = coloring_csv(sa);
  CHECK(csv == coloring_csv(sb));
  CHECK(csv.rfind("id,x,y,level,batch,color\n0,0,0,1,0,0\n", 0) == 0);
  CHECK(occurrences(csv, "\n") == sa.points.size() + 1);
  CHECK(coloring_json(sa).dump() == coloring_json(sb).dump());
  CHECK(registry_jsonl(a.reg) == registry_jsonl(b.reg));

  const auto j = coloring_json(sa);
  CHECK(j["points"].size() == sa.points.size());
  CHECK(j["lines"].size() == a.reg.lines().size());
  CHECK(j["circles"].size() == a.reg.circles().size());
  const Snapshot back = snapshot_from_json(nlohmann::json::parse(j.dump()));
  CHECK(coloring_json(back) == j);
  CHECK(count_errors(check_conditions(back, {})) == 0);
  CHECK_THROWS_AS(snapshot_from_json(nlohmann::json{{"points", 3}}), InputError);
  const auto first = nlohmann::json::parse(registry_jsonl(a.reg).substr(0, registry_jsonl(a.reg).find('\n')));
  CHECK(first["kind"] == "point");
  CHECK(first["rule"] == 0);
}

TEST_CASE("svg") {
  SUBCASE("empty state") {
    const std::string svg = render_svg(Snapshot{});
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(occurrences(svg, "<circle") == 0);
  }
  SUBCASE("three points") {
    EngineConfig cfg;
    cfg.closure.max_level = 1;
    Construction c = run_construction({pt(0, 0), pt(4, 0), pt(1, 3)}, cfg);
    const std::string svg = render_svg(full_snapshot(c));
    const std::size_t dots = occurrences(svg, "fill=\"hsl(");
    const std::size_t curves = occurrences(svg, "<line ") + occurrences(svg, "<circle ") - dots;
    CHECK(dots == 3);
    CHECK(curves == 7);
  }
  SUBCASE("witness") {
    Snapshot s;
    for (const Point& p : {pt(0, 0), pt(1, 0), pt(1, 1)}) s.points.push_back({p, 1, 0, 0});
    const auto w = find_mono_right_triangle({pt(0, 0), pt(1, 0), pt(1, 1)}, {0, 0, 0});
    const std::string svg = render_svg(s, w);
    CHECK(occurrences(svg, "<polygon") == 1);
    CHECK(occurrences(svg, "stroke=\"red\"") == 1);
  }
  SUBCASE("unwritable path") {
    CHECK_THROWS_AS(write_file("/nonexistent-dir/x.svg", "<svg/>"), IoError);
  }
}

TEST_CASE("report") {
  EngineConfig cfg;
  cfg.closure.max_level = 2;
  cfg.closure.point_budget_per_level = 5;
  Construction c = run_construction(grid(2), cfg);
  const Snapshot s = snapshot_of(c);
  const Verdict v = verify(s, {});
  const auto r = report_json({{"seed", 0}}, c, s, v);
  CHECK(r["config"]["seed"] == 0);
  CHECK(r["levels"].size() == 2);
  CHECK(r["errors"] == 0);
  CHECK(r["witness"].is_null());
  CHECK(r["diagnostics"]["oversized_circles"] == 0);
  CHECK_THROWS_AS(verify(s, {}, "some"), InputError);
}
