#pragma once

#include <compare>
#include <string>
#include <variant>
#include <vector>

#include "thales/constructible.hpp"

namespace thales {

struct Point {
  Constructible x;
  Constructible y;

  friend bool operator==(const Point& p, const Point& q) { return p.x == q.x && p.y == q.y; }
  friend std::strong_ordering operator<=>(const Point& p, const Point& q) {
    if (auto c = p.x <=> q.x; c != 0) return c;
    return p.y <=> q.y;
  }
};

/// {(x, y) : a*x + b*y + c = 0}, scaled so the first nonzero of (a, b) is 1.
class Line {
 public:
  /// Throws DegenerateInput when a = b = 0.
  Line(Constructible a, Constructible b, Constructible c);

  const Constructible& a() const { return a_; }
  const Constructible& b() const { return b_; }
  const Constructible& c() const { return c_; }

  friend bool operator==(const Line& l, const Line& m) { return l.a_ == m.a_ && l.b_ == m.b_ && l.c_ == m.c_; }
  friend std::strong_ordering operator<=>(const Line& l, const Line& m) {
    if (auto r = l.a_ <=> m.a_; r != 0) return r;
    if (auto r = l.b_ <=> m.b_; r != 0) return r;
    return l.c_ <=> m.c_;
  }

 private:
  Constructible a_, b_, c_;
};

/// Circle stored by center and squared radius.
class Circle {
 public:
  /// Throws DegenerateInput unless r2 > 0.
  Circle(Point center, Constructible r2);

  const Point& center() const { return center_; }
  const Constructible& r2() const { return r2_; }

  friend bool operator==(const Circle& c, const Circle& d) { return c.center_ == d.center_ && c.r2_ == d.r2_; }
  friend std::strong_ordering operator<=>(const Circle& c, const Circle& d) {
    if (auto r = c.center_ <=> d.center_; r != 0) return r;
    return c.r2_ <=> d.r2_;
  }

 private:
  Point center_;
  Constructible r2_;
};

/// Lines order before circles; variant comparison gives exactly that.
using Curve = std::variant<Line, Circle>;

inline bool is_line(const Curve& e) { return std::holds_alternative<Line>(e); }
inline bool is_circle(const Curve& e) { return std::holds_alternative<Circle>(e); }

Constructible dot(const Point& u, const Point& v);
Constructible cross(const Point& u, const Point& v);
Point operator-(const Point& p, const Point& q);
Point operator+(const Point& p, const Point& q);
Point midpoint(const Point& p, const Point& q);
Constructible distance2(const Point& p, const Point& q);

Line line_through(const Point& p, const Point& q);
Circle thales_circle(const Point& p, const Point& q);
Circle circumcircle(const Point& p, const Point& q, const Point& r);

/// Exact intersection, sorted by (x, y). Throws DegenerateInput when e0 == e1.
std::vector<Point> intersect(const Curve& e0, const Curve& e1);

/// Reflection of x through the center; throws IncidenceError if x is not on c.
Point antipode(const Point& x, const Circle& c);
/// Line through x orthogonal to l; throws IncidenceError if x is not on l.
Line perpendicular_at(const Line& l, const Point& x);
/// Line through x orthogonal to l, without the incidence requirement.
Line perpendicular_through(const Line& l, const Point& x);

bool on_line(const Point& p, const Line& l);
bool on_circle(const Point& p, const Circle& c);
bool on_curve(const Point& p, const Curve& e);

/// Right angle at the middle argument. Throws DegenerateInput on coincident points.
bool is_right_angle(const Point& x, const Point& y, const Point& z);
bool collinear(const Point& p, const Point& q, const Point& r);

bool perpendicular(const Line& l, const Line& m);

// Interval filters: false means "certainly not", true means "check exactly".
bool may_lie_on(const Point& p, const Line& l);
bool may_lie_on(const Point& p, const Circle& c);
bool may_lie_on(const Point& p, const Curve& e);

std::string to_string(const Point& p);
std::string to_string(const Line& l);
std::string to_string(const Circle& c);
std::string to_string(const Curve& e);

}  // namespace thales
