#include "thales/geometry.hpp"

#include <algorithm>

#include "thales/errors.hpp"

namespace thales {

Line::Line(Constructible a, Constructible b, Constructible c) {
  if (a.sign() != 0) {
    b_ = b / a;
    c_ = c / a;
    a_ = Constructible(1);
  } else if (b.sign() != 0) {
    a_ = Constructible();
    c_ = c / b;
    b_ = Constructible(1);
  } else {
    throw DegenerateInput("line with a = b = 0");
  }
}

Circle::Circle(Point center, Constructible r2) : center_(std::move(center)), r2_(std::move(r2)) {
  if (r2_.sign() <= 0) throw DegenerateInput("circle with nonpositive squared radius");
}

Constructible dot(const Point& u, const Point& v) { return u.x * v.x + u.y * v.y; }
Constructible cross(const Point& u, const Point& v) { return u.x * v.y - u.y * v.x; }
Point operator-(const Point& p, const Point& q) { return {p.x - q.x, p.y - q.y}; }
Point operator+(const Point& p, const Point& q) { return {p.x + q.x, p.y + q.y}; }

Point midpoint(const Point& p, const Point& q) {
  const Constructible half(Rational(1, 2));
  return {(p.x + q.x) * half, (p.y + q.y) * half};
}

Constructible distance2(const Point& p, const Point& q) {
  const Point d = p - q;
  return dot(d, d);
}

Line line_through(const Point& p, const Point& q) {
  if (p == q) throw DegenerateInput("line through coincident points");
  const Constructible a = p.y - q.y;
  const Constructible b = q.x - p.x;
  return Line(a, b, -(a * p.x + b * p.y));
}

Circle thales_circle(const Point& p, const Point& q) {
  if (p == q) throw DegenerateInput("Thales circle of coincident points");
  return Circle(midpoint(p, q), distance2(p, q) * Constructible(Rational(1, 4)));
}

Circle circumcircle(const Point& p, const Point& q, const Point& r) {
  if (p == q || q == r || p == r) throw DegenerateInput("circumcircle of coincident points");
  const Point b = q - p;
  const Point c = r - p;
  const Constructible det = cross(b, c);
  if (det.sign() == 0) throw DegenerateInput("circumcircle of collinear points");
  const Constructible b2 = dot(b, b);
  const Constructible c2 = dot(c, c);
  const Constructible d = det + det;
  const Point u{(c.y * b2 - b.y * c2) / d, (b.x * c2 - c.x * b2) / d};
  return Circle(p + u, dot(u, u));
}

namespace {

std::vector<Point> sorted(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

std::vector<Point> meet(const Line& l, const Line& m) {
  const Constructible det = l.a() * m.b() - m.a() * l.b();
  if (det.sign() == 0) {
    if (l == m) throw DegenerateInput("intersection of identical curves");
    return {};
  }
  return {Point{(l.b() * m.c() - m.b() * l.c()) / det, (l.c() * m.a() - m.c() * l.a()) / det}};
}

std::vector<Point> meet(const Line& l, const Circle& c) {
  const Point& o = c.center();
  const Constructible n2 = l.a() * l.a() + l.b() * l.b();
  const Constructible s = l.a() * o.x + l.b() * o.y + l.c();
  const Constructible k = s / n2;
  const Point foot{o.x - k * l.a(), o.y - k * l.b()};
  const Constructible h2 = c.r2() - s * k;
  const int sh = h2.sign();
  if (sh < 0) return {};
  if (sh == 0) return {foot};
  const Constructible t = sqrt(h2 / n2);
  const Point step{-t * l.b(), t * l.a()};
  return sorted({foot + step, foot - step});
}

std::vector<Point> meet(const Circle& c, const Circle& d) {
  if (c == d) throw DegenerateInput("intersection of identical curves");
  const Point& p = c.center();
  const Point& q = d.center();
  if (p == q) return {};
  // Radical axis: difference of the two circle equations.
  const Constructible a = (q.x - p.x) * Constructible(2);
  const Constructible b = (q.y - p.y) * Constructible(2);
  const Constructible k = dot(p, p) - dot(q, q) - c.r2() + d.r2();
  return meet(Line(a, b, k), c);
}

}  // namespace

std::vector<Point> intersect(const Curve& e0, const Curve& e1) {
  return std::visit(
      [](const auto& u, const auto& v) -> std::vector<Point> {
        using U = std::decay_t<decltype(u)>;
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<U, Circle> && std::is_same_v<V, Line>) {
          return meet(v, u);
        } else {
          return meet(u, v);
        }
      },
      e0, e1);
}

Point antipode(const Point& x, const Circle& c) {
  if (!on_circle(x, c)) throw IncidenceError("antipode of a point not on the circle");
  const Point& o = c.center();
  return {o.x + o.x - x.x, o.y + o.y - x.y};
}

Line perpendicular_through(const Line& l, const Point& x) {
  return Line(-l.b(), l.a(), l.b() * x.x - l.a() * x.y);
}

Line perpendicular_at(const Line& l, const Point& x) {
  if (!on_line(x, l)) throw IncidenceError("perpendicular at a point not on the line");
  return perpendicular_through(l, x);
}

bool on_line(const Point& p, const Line& l) { return (l.a() * p.x + l.b() * p.y + l.c()).sign() == 0; }

bool on_circle(const Point& p, const Circle& c) { return (distance2(p, c.center()) - c.r2()).sign() == 0; }

bool on_curve(const Point& p, const Curve& e) {
  return std::visit(
      [&](const auto& v) {
        if constexpr (std::is_same_v<std::decay_t<decltype(v)>, Line>) {
          return on_line(p, v);
        } else {
          return on_circle(p, v);
        }
      },
      e);
}

bool is_right_angle(const Point& x, const Point& y, const Point& z) {
  if (x == y || y == z || x == z) throw DegenerateInput("right-angle test on coincident points");
  return dot(x - y, z - y).sign() == 0;
}

bool collinear(const Point& p, const Point& q, const Point& r) { return cross(q - p, r - p).sign() == 0; }

bool perpendicular(const Line& l, const Line& m) { return (l.a() * m.a() + l.b() * m.b()).sign() == 0; }

bool may_lie_on(const Point& p, const Line& l) {
  const Interval v = l.a().bounds() * p.x.bounds() + l.b().bounds() * p.y.bounds() + l.c().bounds();
  return v.contains_zero();
}

bool may_lie_on(const Point& p, const Circle& c) {
  const Interval dx = p.x.bounds() - c.center().x.bounds();
  const Interval dy = p.y.bounds() - c.center().y.bounds();
  return (square(dx) + square(dy) - c.r2().bounds()).contains_zero();
}

bool may_lie_on(const Point& p, const Curve& e) {
  return std::visit([&](const auto& v) { return may_lie_on(p, v); }, e);
}

std::string to_string(const Point& p) { return "(" + to_string(p.x) + ", " + to_string(p.y) + ")"; }

std::string to_string(const Line& l) {
  return "line(" + to_string(l.a()) + ", " + to_string(l.b()) + ", " + to_string(l.c()) + ")";
}

std::string to_string(const Circle& c) { return "circle(" + to_string(c.center()) + ", " + to_string(c.r2()) + ")"; }

std::string to_string(const Curve& e) {
  return std::visit([](const auto& v) { return to_string(v); }, e);
}

}  // namespace thales
