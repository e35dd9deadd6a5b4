#include "thales/interval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace thales {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double down(double v) { return std::nextafter(v, -kInf); }
double up(double v) { return std::nextafter(v, kInf); }

Interval widen(double lo, double hi) {
  if (std::isnan(lo) || std::isnan(hi)) return Interval::entire();
  return {down(lo), up(hi)};
}

}  // namespace

Interval Interval::entire() { return {-kInf, kInf}; }

Interval Interval::from_rational(const mpq_class& q) {
  const int s = sgn(q);
  if (s == 0) return {0.0, 0.0};
  // mpq_get_d truncates towards zero, so one ulp away from zero covers q.
  const double d = q.get_d();
  if (std::isinf(d)) return s > 0 ? Interval{std::numeric_limits<double>::max(), kInf}
                                   : Interval{-kInf, -std::numeric_limits<double>::max()};
  if (s > 0) return {d, up(d)};
  return {down(d), d};
}

Interval operator+(const Interval& x, const Interval& y) { return widen(x.lo + y.lo, x.hi + y.hi); }

Interval operator-(const Interval& x, const Interval& y) { return widen(x.lo - y.hi, x.hi - y.lo); }

Interval operator-(const Interval& x) { return {-x.hi, -x.lo}; }

Interval operator*(const Interval& x, const Interval& y) {
  // 0 * inf is NaN in IEEE; treat exact zero endpoints specially.
  auto prod = [](double a, double b) { return (a == 0.0 || b == 0.0) ? 0.0 : a * b; };
  const double p[4] = {prod(x.lo, y.lo), prod(x.lo, y.hi), prod(x.hi, y.lo), prod(x.hi, y.hi)};
  return widen(*std::min_element(p, p + 4), *std::max_element(p, p + 4));
}

Interval operator/(const Interval& x, const Interval& y) {
  if (y.contains_zero()) return Interval::entire();
  const double q[4] = {x.lo / y.lo, x.lo / y.hi, x.hi / y.lo, x.hi / y.hi};
  return widen(*std::min_element(q, q + 4), *std::max_element(q, q + 4));
}

Interval sqrt(const Interval& x) {
  const double lo = x.lo <= 0.0 ? 0.0 : down(std::sqrt(x.lo));
  const double hi = x.hi <= 0.0 ? 0.0 : up(std::sqrt(x.hi));
  return {std::max(lo, 0.0), hi};
}

Interval square(const Interval& x) {
  if (x.contains_zero()) {
    const double m = std::max(-x.lo, x.hi);
    return {0.0, up(m * m)};
  }
  const double a = std::min(std::fabs(x.lo), std::fabs(x.hi));
  const double b = std::max(std::fabs(x.lo), std::fabs(x.hi));
  return {std::max(0.0, down(a * a)), up(b * b)};
}

}  // namespace thales
