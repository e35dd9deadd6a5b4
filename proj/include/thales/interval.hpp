#pragma once

#include <gmpxx.h>

namespace thales {

/// Closed double interval with outward rounding on every operation.
///
/// Only used as a filter: an interval that excludes zero decides a sign,
/// anything else falls through to exact arithmetic.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  static Interval point(double v) { return {v, v}; }
  static Interval entire();
  static Interval from_rational(const mpq_class& q);

  bool contains_zero() const { return lo <= 0.0 && hi >= 0.0; }
  bool positive() const { return lo > 0.0; }
  bool negative() const { return hi < 0.0; }
  bool overlaps(const Interval& o) const { return lo <= o.hi && o.lo <= hi; }
  double mid() const { return 0.5 * lo + 0.5 * hi; }
  double width() const { return hi - lo; }
  /// -1, +1, or 0 when the interval straddles zero (undecided).
  int certain_sign() const { return positive() ? 1 : (negative() ? -1 : 0); }
};

Interval operator+(const Interval& x, const Interval& y);
Interval operator-(const Interval& x, const Interval& y);
Interval operator-(const Interval& x);
Interval operator*(const Interval& x, const Interval& y);
Interval operator/(const Interval& x, const Interval& y);
Interval sqrt(const Interval& x);
Interval square(const Interval& x);

}  // namespace thales
