#include <doctest.h>

#include <algorithm>
#include <set>

#include "generators.hpp"
#include "thales/coloring.hpp"
#include "thales/corpus.hpp"
#include "thales/errors.hpp"
#include "thales/io.hpp"
#include "thales/registry.hpp"

using namespace thales;
using thales::testing::Rng;

namespace {

Point pt(long x, long y) { return {Constructible(x), Constructible(y)}; }
Point ptq(long xn, long xd, long yn, long yd) {
  return {Constructible::from_rational(xn, xd), Constructible::from_rational(yn, yd)};
}

int count_rule(const LevelRegistry& reg, Rule r) {
  return static_cast<int>(std::count_if(reg.lines().begin(), reg.lines().end(), [&](const LineRecord& l) { return l.rule == r; }));
}

LevelRegistry generated(const std::vector<Point>& seeds) {
  LevelRegistry reg = register_seed(seeds);
  generate_curves(reg, 1);
  reg.materialize_circles(1);
  return reg;
}

bool has_point(const LevelRegistry& reg, const std::vector<int>& ids, const Point& p) {
  return std::any_of(ids.begin(), ids.end(), [&](int id) { return reg.point(id).point == p; });
}

int parent_level(const LevelRegistry& reg, const std::string& ref) {
  const int id = std::stoi(ref.substr(1));
  if (ref[0] == 'P') return reg.level_of(id);
  if (ref[0] == 'L') return reg.lines()[static_cast<std::size_t>(id)].birth;
  return reg.circles()[static_cast<std::size_t>(id)].birth;
}

Construction small_run(std::uint64_t seed, CircleMode mode = CircleMode::lazy) {
  EngineConfig cfg;
  cfg.closure.max_level = 3;
  cfg.closure.point_budget_per_level = 12;
  cfg.closure.circle_mode = mode;
  return run_construction(random_rational(7, seed, 4), cfg);
}

}  // namespace

TEST_CASE("register_seed") {
  const LevelRegistry two = register_seed({pt(0, 0), pt(1, 0)});
  CHECK(two.point_count() == 2);
  CHECK(two.level_of(0) == 1);
  CHECK(two.level_of(1) == 1);
  CHECK(two.point(1).batch == 1);
  CHECK(two.lines().empty());
  CHECK(two.circles().empty());

  const LevelRegistry empty = register_seed({});
  CHECK(empty.point_count() == 0);
  CHECK(empty.lines().empty());

  const LevelRegistry g = register_seed(grid(5));
  CHECK(g.point_count() == 25);
  CHECK(g.level_end(1) == 25);
  for (int id = 0; id < 25; ++id) CHECK(g.point(id).batch == id);

  CHECK_THROWS_AS(register_seed({pt(0, 0), pt(0, 0)}), InputError);
}

TEST_CASE("generate_curves on two points") {
  const LevelRegistry reg = generated({pt(0, 0), pt(2, 0)});
  CHECK(count_rule(reg, Rule::connect) == 1);
  CHECK(reg.circles().size() == 1);
  CHECK(reg.circles()[0].circle == thales_circle(pt(0, 0), pt(2, 0)));
  // Perpendiculars x = 0 and x = 2 at the two points.
  CHECK(count_rule(reg, Rule::perpendicular) == 2);
}

TEST_CASE("generate_curves on three non-collinear points") {
  const Point a = pt(0, 0), b = pt(4, 0), c = pt(1, 3);
  const LevelRegistry reg = generated({a, b, c});
  // Oracle: C(3,2) lines and Thales circles, one circumcircle, two feet per line.
  CHECK(count_rule(reg, Rule::connect) == 3);
  CHECK(count_rule(reg, Rule::perpendicular) == 6);
  CHECK(reg.circles().size() == 4);
  std::set<Circle> expected{thales_circle(a, b), thales_circle(a, c), thales_circle(b, c), circumcircle(a, b, c)};
  std::set<Circle> got;
  for (const CircleRecord& r : reg.circles()) got.insert(r.circle);
  CHECK(got == expected);
  for (const LineRecord& l : reg.lines()) CHECK(l.birth == 1);
}

TEST_CASE("generate_curves on three collinear points") {
  const LevelRegistry reg = generated({pt(0, 0), pt(1, 0), pt(2, 0)});
  CHECK(count_rule(reg, Rule::connect) == 1);
  CHECK(reg.lines()[0].members == std::vector<int>{0, 1, 2});
  CHECK(count_rule(reg, Rule::perpendicular) == 3);
  CHECK(reg.circles().size() == 3);
  for (const CircleRecord& r : reg.circles()) CHECK(r.rule == Rule::connect);
}

TEST_CASE("generate_curves does not re-register") {
  LevelRegistry reg = register_seed({pt(0, 0), pt(1, 0), pt(0, 1)});
  const auto first = generate_curves(reg, 1);
  CHECK_FALSE(first.empty());
  CHECK(generate_curves(reg, 1).empty());
}

TEST_CASE("derive_points") {
  SUBCASE("budget 0") {
    LevelRegistry reg = generated({pt(0, 0), pt(2, 2), pt(0, 2), pt(2, 0)});
    CHECK(derive_points(reg, 1, 0).empty());
  }
  SUBCASE("crossing lines") {
    LevelRegistry reg = generated({pt(0, 0), pt(2, 2), pt(0, 2), pt(2, 0)});
    const auto ids = derive_points(reg, 1, 1000);
    CHECK(has_point(reg, ids, pt(1, 1)));
    for (int id : ids) CHECK(reg.level_of(id) == 2);
  }
  SUBCASE("antipode on the unit circle") {
    // (1,0), (0,1), (3/5,4/5) register the unit circle; antipodes come first.
    LevelRegistry reg = generated({pt(1, 0), pt(0, 1), ptq(3, 5, 4, 5)});
    const auto ids = derive_points(reg, 1, 1000);
    CHECK(has_point(reg, ids, pt(-1, 0)));
    LevelRegistry again = generated({pt(1, 0), pt(0, 1), ptq(3, 5, 4, 5)});
    const auto one = derive_points(again, 1, 1);
    REQUIRE(one.size() == 1);
    CHECK(again.point(one[0]).rule == Rule::antipode);
  }
  SUBCASE("needs the curves of the level") {
    LevelRegistry reg = register_seed({pt(0, 0), pt(1, 0)});
    CHECK_THROWS_AS(derive_points(reg, 1, 5), InternalError);
  }
}

TEST_CASE("prior_curves_through") {
  SUBCASE("seed point") {
    const LevelRegistry reg = register_seed({pt(0, 0)});
    CHECK(prior_curves_through(reg, 0).empty());
  }
  SUBCASE("level-2 point on no level-1 curve") {
    LevelRegistry reg = generated({pt(0, 0), pt(1, 0)});
    const int id = reg.add_point(pt(7, 3), 2, Rule::meet);
    CHECK(prior_curves_through(reg, id).empty());
  }
  SUBCASE("intersection points lie on both parents") {
    LevelRegistry reg = generated({pt(0, 0), pt(4, 0), pt(1, 3)});
    const auto ids = derive_points(reg, 1, 60);
    int meets = 0;
    for (int id : ids) {
      const PointRecord& p = reg.point(id);
      if (p.rule != Rule::meet) continue;
      ++meets;
      const auto curves = prior_curves_through(reg, id);
      CHECK(curves.size() >= 2);
      for (const Curve& e : curves) CHECK(on_curve(p.point, e));
    }
    CHECK(meets > 0);
  }
}

TEST_CASE("lazy circles_through agrees with the materialized registry") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    CAPTURE(seed);
    const Construction run = small_run(seed);
    LevelRegistry full = run.reg;
    materialize_all_circles(full);
    for (int x = 0; x < full.point_count(); ++x) {
      const int bound = full.level_of(x) - 1;
      if (bound < 1) continue;
      const Point& px = full.point(x).point;
      std::set<Circle> brute;
      for (const CircleRecord& c : full.circles()) {
        if (c.birth <= bound && on_circle(px, c.circle)) brute.insert(c.circle);
      }
      std::set<Circle> lazy;
      for (const CircleThrough& c : run.reg.circles_through(px, bound)) {
        REQUIRE(c.members.size() >= 2);
        const Circle circle = circumcircle(px, run.reg.point(c.members[0]).point, run.reg.point(c.members[1]).point);
        for (int m : c.members) CHECK(on_circle(run.reg.point(m).point, circle));
        CHECK(lazy.insert(circle).second);
        CHECK(c.birth.level == full.circle_birth(circle)->level);
      }
      CHECK(lazy == brute);
    }
  }
}

TEST_CASE("eager and lazy circle modes give the same coloring") {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    CAPTURE(seed);
    const Construction lazy = small_run(seed, CircleMode::lazy);
    const Construction eager = small_run(seed, CircleMode::eager);
    CHECK(coloring_csv(snapshot_of(lazy)) == coloring_csv(snapshot_of(eager)));
  }
}

TEST_CASE("registry invariants") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    CAPTURE(seed);
    Construction run = small_run(seed);
    LevelRegistry& reg = run.reg;
    materialize_all_circles(reg);

    SUBCASE("determinism") {
      Construction other = small_run(seed);
      materialize_all_circles(other.reg);
      CHECK(registry_jsonl(reg) == registry_jsonl(other.reg));
    }
    // Stratification soundness.
    for (const LineRecord& l : reg.lines()) {
      for (const std::string& p : l.parents) CHECK(parent_level(reg, p) <= l.birth);
    }
    for (const CircleRecord& c : reg.circles()) {
      for (const std::string& p : c.parents) CHECK(parent_level(reg, p) <= c.birth);
    }
    for (const PointRecord& p : reg.points()) {
      for (const std::string& parent : p.parents) CHECK(parent_level(reg, parent) < p.level);
    }
    // Dedup.
    std::set<Line> lines;
    for (const LineRecord& l : reg.lines()) CHECK(lines.insert(l.line).second);
    std::set<Circle> circles;
    for (const CircleRecord& c : reg.circles()) CHECK(circles.insert(c.circle).second);
    std::set<Point> points;
    for (const PointRecord& p : reg.points()) CHECK(points.insert(p.point).second);
    // Exhaustiveness of pair and triple curves, by re-enumeration.
    const int n = reg.point_count();
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const Point& a = reg.point(i).point;
        const Point& b = reg.point(j).point;
        CHECK(lines.count(line_through(a, b)));
        CHECK(circles.count(thales_circle(a, b)));
        for (int k = j + 1; k < n; k += 3) {
          const Point& c = reg.point(k).point;
          if (!collinear(a, b, c)) CHECK(circles.count(circumcircle(a, b, c)));
        }
      }
    }
    // Curve members are exactly the registered points on them.
    for (const LineRecord& l : reg.lines()) {
      std::vector<int> scan;
      for (int id = 0; id < n; ++id) {
        if (on_line(reg.point(id).point, l.line)) scan.push_back(id);
      }
      CHECK(l.members == scan);
    }
  }
}

TEST_CASE("seeded batch order is a permutation") {
  EngineConfig a, b;
  a.closure.max_level = b.closure.max_level = 2;
  a.closure.point_budget_per_level = b.closure.point_budget_per_level = 15;
  b.closure.seed = 99;
  const Construction plain = run_construction(grid(3), a);
  const Construction shuffled = run_construction(grid(3), b);
  std::set<Point> p1, p2;
  for (const PointRecord& p : plain.reg.points()) p1.insert(p.point);
  for (const PointRecord& p : shuffled.reg.points()) p2.insert(p.point);
  CHECK(p1 == p2);
  CHECK(coloring_csv(snapshot_of(run_construction(grid(3), b))) == coloring_csv(snapshot_of(shuffled)));
}
