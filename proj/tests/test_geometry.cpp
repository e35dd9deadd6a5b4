#include <doctest.h>

#include <algorithm>

#include "generators.hpp"
#include "thales/errors.hpp"
#include "thales/geometry.hpp"

using namespace thales;
using thales::testing::Rng;

namespace {

Constructible q(long n, long d = 1) { return Constructible::from_rational(n, d); }
Point pt(long x, long y) { return {Constructible(x), Constructible(y)}; }
Point ptq(Constructible x, Constructible y) { return {std::move(x), std::move(y)}; }
const Circle unit{pt(0, 0), Constructible(1)};

bool same_set(std::vector<Point> a, std::vector<Point> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

}  // namespace

TEST_CASE("line_through is canonical") {
  const Line diag = line_through(pt(0, 0), pt(2, 2));
  CHECK(diag.a() == Constructible(1));
  CHECK(diag.b() == Constructible(-1));
  CHECK(diag.c() == Constructible(0));

  const Line vertical = line_through(pt(0, 0), pt(0, 5));
  CHECK(vertical.a() == Constructible(1));
  CHECK(vertical.b() == Constructible(0));
  CHECK(vertical.c() == Constructible(0));

  const Line l = line_through(pt(1, 1), pt(2, 3));
  CHECK(l.a() == Constructible(1));
  CHECK(l.b() == q(-1, 2));
  CHECK(l.c() == q(-1, 2));
  // Oracle: substitute both defining points.
  CHECK((l.a() * Constructible(1) + l.b() * Constructible(1) + l.c()).is_zero());
  CHECK((l.a() * Constructible(2) + l.b() * Constructible(3) + l.c()).is_zero());

  CHECK(line_through(pt(2, 3), pt(1, 1)) == l);
  CHECK(line_through(pt(0, 1), pt(5, 1)).a().is_zero());
  CHECK_THROWS_AS(line_through(pt(1, 1), pt(1, 1)), DegenerateInput);
  CHECK_THROWS_AS(Line(Constructible(0), Constructible(0), Constructible(1)), DegenerateInput);
}

TEST_CASE("thales_circle") {
  CHECK(thales_circle(pt(0, 0), pt(2, 0)) == Circle(pt(1, 0), Constructible(1)));
  CHECK(thales_circle(pt(0, 0), pt(0, 2)) == Circle(pt(0, 1), Constructible(1)));
  const Circle c = thales_circle(pt(1, 1), pt(3, 5));
  CHECK(c == Circle(pt(2, 3), Constructible(5)));
  CHECK(on_circle(pt(1, 1), c));
  CHECK(on_circle(pt(3, 5), c));
  CHECK_THROWS_AS(thales_circle(pt(1, 1), pt(1, 1)), DegenerateInput);
}

TEST_CASE("circumcircle") {
  CHECK(circumcircle(pt(0, 0), pt(4, 0), pt(0, 4)) == Circle(pt(2, 2), Constructible(8)));
  CHECK(circumcircle(pt(1, 0), pt(0, 1), pt(-1, 0)) == unit);

  // Oracle: intersect two perpendicular bisectors, then check three incidences.
  const Point a = pt(0, 0), b = pt(1, 0), c = pt(0, 3);
  const Line bis_ab = perpendicular_through(line_through(a, b), midpoint(a, b));
  const Line bis_ac = perpendicular_through(line_through(a, c), midpoint(a, c));
  const auto center = intersect(bis_ab, bis_ac);
  REQUIRE(center.size() == 1);
  CHECK(center[0] == ptq(q(1, 2), q(3, 2)));
  const Circle cc = circumcircle(a, b, c);
  CHECK(cc.center() == center[0]);
  CHECK(cc.r2() == q(5, 2));
  CHECK(on_circle(a, cc));
  CHECK(on_circle(b, cc));
  CHECK(on_circle(c, cc));

  CHECK_THROWS_AS(circumcircle(pt(0, 0), pt(1, 1), pt(2, 2)), DegenerateInput);
  CHECK_THROWS_AS(circumcircle(pt(0, 0), pt(0, 0), pt(2, 1)), DegenerateInput);
  CHECK_THROWS_AS(Circle(pt(0, 0), Constructible(0)), DegenerateInput);
}

TEST_CASE("intersect") {
  const Line x_axis = line_through(pt(0, 0), pt(1, 0));
  const Line y_axis = line_through(pt(0, 0), pt(0, 1));
  CHECK(intersect(unit, x_axis) == std::vector<Point>{pt(-1, 0), pt(1, 0)});
  CHECK(intersect(x_axis, y_axis) == std::vector<Point>{pt(0, 0)});
  CHECK(intersect(x_axis, line_through(pt(0, 1), pt(1, 1))).empty());

  const Circle shifted(pt(1, 0), Constructible(1));
  const Constructible h = sqrt(Constructible(3)) / Constructible(2);
  const auto both = intersect(unit, shifted);
  CHECK(both == std::vector<Point>{ptq(q(1, 2), -h), ptq(q(1, 2), h)});
  // Oracle: the radical line is x = 1/2; substituting gives y^2 = 3/4.
  const Line radical_line = line_through(ptq(q(1, 2), Constructible(0)), ptq(q(1, 2), Constructible(1)));
  CHECK(intersect(unit, radical_line) == both);
  for (const Point& p : both) CHECK(square(p.y) == q(3, 4));

  CHECK(intersect(unit, Circle(pt(0, 0), Constructible(4))).empty());
  CHECK(intersect(unit, Circle(pt(2, 0), Constructible(1))) == std::vector<Point>{pt(1, 0)});
  CHECK(intersect(unit, line_through(pt(0, 1), pt(1, 1))) == std::vector<Point>{pt(0, 1)});
  CHECK_THROWS_AS(intersect(unit, unit), DegenerateInput);
  CHECK_THROWS_AS(intersect(x_axis, x_axis), DegenerateInput);
}

TEST_CASE("antipode") {
  CHECK(antipode(pt(1, 0), unit) == pt(-1, 0));
  CHECK(antipode(pt(0, 1), unit) == pt(0, -1));
  const Constructible h = sqrt(Constructible(3)) / Constructible(2);
  const Point p = antipode(ptq(q(1, 2), h), unit);
  CHECK(p == ptq(q(-1, 2), -h));
  CHECK(on_circle(p, unit));
  CHECK_THROWS_AS(antipode(pt(1, 1), unit), IncidenceError);
}

TEST_CASE("perpendicular_at") {
  const Line x_axis = line_through(pt(0, 0), pt(1, 0));
  CHECK(perpendicular_at(x_axis, pt(3, 0)) == line_through(pt(3, 0), pt(3, 1)));
  const Line diag = line_through(pt(0, 0), pt(1, 1));
  CHECK(perpendicular_at(diag, pt(0, 0)) == line_through(pt(0, 0), pt(1, -1)));

  const Line l(Constructible(1), q(-1, 2), q(-1, 2));
  const Line p = perpendicular_at(l, pt(1, 1));
  CHECK(p == Line(Constructible(1), Constructible(2), Constructible(-3)));
  CHECK(perpendicular(l, p));
  CHECK(on_line(pt(1, 1), p));
  CHECK_THROWS_AS(perpendicular_at(l, pt(0, 0)), IncidenceError);
}

TEST_CASE("predicates") {
  CHECK(on_curve(pt(1, 0), unit));
  CHECK_FALSE(on_curve(pt(1, 1), unit));
  CHECK(on_curve(ptq(q(1, 2), sqrt(Constructible(3)) / Constructible(2)), unit));
  CHECK(on_curve(pt(7, 0), line_through(pt(0, 0), pt(1, 0))));

  CHECK(is_right_angle(pt(0, 0), pt(1, 0), pt(1, 1)));
  CHECK_FALSE(is_right_angle(pt(0, 0), pt(1, 0), pt(2, 0)));
  CHECK(is_right_angle(pt(0, 0), pt(1, 1), pt(2, 0)));
  CHECK_THROWS_AS(is_right_angle(pt(0, 0), pt(0, 0), pt(2, 0)), DegenerateInput);

  CHECK(collinear(pt(0, 0), pt(1, 1), pt(2, 2)));
  CHECK_FALSE(collinear(pt(0, 0), pt(1, 0), pt(0, 1)));
  CHECK(collinear(pt(0, 0), pt(1, 2), pt(2, 4)));

  CHECK(Curve(line_through(pt(0, 0), pt(1, 0))) != Curve(unit));
}

TEST_CASE("interval filters never reject a true incidence") {
  const Constructible h = sqrt(Constructible(3)) / Constructible(2);
  CHECK(may_lie_on(ptq(q(1, 2), h), Curve(unit)));
  CHECK_FALSE(may_lie_on(pt(3, 3), Curve(unit)));
  CHECK(may_lie_on(pt(5, 5), Curve(line_through(pt(0, 0), pt(1, 1)))));
}

TEST_CASE("property: geometry kernel invariants on sampled configurations") {
  Rng rng(31337);
  int thales_hits = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const Point p = thales::testing::random_rational_point(rng, 6, 5);
    Point r = thales::testing::random_rational_point(rng, 6, 5);
    while (r == p) r = thales::testing::random_rational_point(rng, 6, 5);

    // Round trip.
    const Line l = line_through(p, r);
    const Circle t = thales_circle(p, r);
    REQUIRE(on_line(p, l));
    REQUIRE(on_line(r, l));
    REQUIRE(on_circle(p, t));
    REQUIRE(on_circle(r, t));

    // Thales: sample w on t by cutting with a line through the center.
    const Point dir = thales::testing::random_rational_point(rng, 4, 3);
    if (!(dir == Point{Constructible(0), Constructible(0)})) {
      const Line cut = line_through(t.center(), t.center() + dir);
      for (const Point& w : intersect(t, cut)) {
        if (w == p || w == r) continue;
        REQUIRE(is_right_angle(p, w, r));
        ++thales_hits;
      }
    }

    // Antipode involution.
    REQUIRE(antipode(antipode(p, t), t) == p);
    REQUIRE(antipode(p, t) == r);

    // Perpendicular meets l only at the foot.
    const Line perp = perpendicular_at(l, p);
    REQUIRE(intersect(l, perp) == std::vector<Point>{p});

    // Circumcircle incidences and intersect symmetry.
    const Point s = thales::testing::random_rational_point(rng, 6, 5);
    if (s == p || s == r || collinear(p, r, s)) continue;
    const Circle c = circumcircle(p, r, s);
    REQUIRE(on_curve(p, c));
    REQUIRE(on_curve(r, c));
    REQUIRE(on_curve(s, c));
    if (!(c == t)) REQUIRE(same_set(intersect(c, t), intersect(t, c)));
    REQUIRE(same_set(intersect(c, l), intersect(l, c)));
    REQUIRE(same_set(intersect(c, perp), intersect(perp, c)));
    for (const Point& m : intersect(c, perp)) {
      REQUIRE(on_circle(m, c));
      REQUIRE(on_line(m, perp));
    }
  }
  CHECK(thales_hits > 500);
}
