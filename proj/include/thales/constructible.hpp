#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>

#include <gmpxx.h>

#include "thales/interval.hpp"

namespace thales {

using Rational = mpq_class;
using Integer = mpz_class;

class Radical;

/// Exact real number from a tower of quadratic extensions over the rationals.
///
/// A value is either a rational or `a + b*sqrt(d)` where `sqrt(d)` is an
/// interned Radical and `a`, `b`, `d` only involve radicals created before
/// it. Radicals are ordered by creation id, so every pair of values has a
/// common tower whose top is the younger of their two top radicals.
///
/// The representation is not guaranteed to be unique (two radicals may be
/// dependent, e.g. sqrt(6) next to sqrt(2) and sqrt(3)), so equality and
/// ordering always go through sign(x - y). The sign is decided by an
/// interval filter when the cached enclosure excludes zero, and otherwise by
/// an exact descent on norms: sign(a + b*sqrt(d)) follows from sign(a),
/// sign(b) and sign(a^2 - b^2 d), which lives one radical lower.
///
/// Values are immutable and cheap to copy; they can be shared across
/// threads.
class Constructible {
 public:
  Constructible();
  Constructible(long value);  // NOLINT(google-explicit-constructor)
  explicit Constructible(Rational q);

  /// n/d in lowest terms; throws InputError when d == 0.
  static Constructible from_rational(const Integer& n, const Integer& d);

  bool is_rational() const;
  /// Precondition: is_rational().
  const Rational& rational() const;

  /// Top radical of the representation, nullptr for rationals.
  const Radical* radical() const;
  /// Coefficients of `a + b*sqrt(d)`; for rationals a() is the value and b() is 0.
  Constructible a() const;
  Constructible b() const;

  /// Number of nested radicals along the deepest path (0 for rationals).
  int nesting() const;

  /// Cached outward-rounded enclosure, fixed at construction.
  const Interval& bounds() const;

  /// Exact sign in {-1, 0, +1}.
  int sign() const;
  bool is_zero() const { return sign() == 0; }

  double approx() const { return bounds().mid(); }

  friend Constructible operator+(const Constructible& x, const Constructible& y);
  friend Constructible operator-(const Constructible& x, const Constructible& y);
  friend Constructible operator*(const Constructible& x, const Constructible& y);
  /// Throws ArithmeticError on division by zero.
  friend Constructible operator/(const Constructible& x, const Constructible& y);
  friend Constructible operator-(const Constructible& x);

  Constructible& operator+=(const Constructible& y) { return *this = *this + y; }
  Constructible& operator-=(const Constructible& y) { return *this = *this - y; }
  Constructible& operator*=(const Constructible& y) { return *this = *this * y; }
  Constructible& operator/=(const Constructible& y) { return *this = *this / y; }

  friend bool operator==(const Constructible& x, const Constructible& y);
  friend std::strong_ordering operator<=>(const Constructible& x, const Constructible& y);

  /// Identity of the shared representation (not of the value).
  const void* node_id() const { return node_.get(); }

  struct Node;

 private:
  explicit Constructible(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Constructible quadratic(Constructible a, Constructible b, const Radical* r);
  static Constructible inverse(const Constructible& y);
  friend Constructible sqrt(const Constructible& x);
  friend std::optional<Constructible> exact_sqrt_in_tower(const Constructible& x);
  friend struct ConstructibleAccess;

  std::shared_ptr<const Node> node_;
};

/// Interned square root of a positive radicand.
class Radical {
 public:
  std::uint32_t id() const { return id_; }
  const Constructible& radicand() const { return radicand_; }
  /// Enclosure of sqrt(radicand).
  const Interval& bounds() const { return bounds_; }

  Radical(std::uint32_t id, Constructible radicand);

 private:
  std::uint32_t id_;
  Constructible radicand_;
  Interval bounds_;
};

/// Nonnegative square root; throws ArithmeticError for negative input.
///
/// Stays inside the current tower when the input is already a square there
/// (perfect rational squares, denestable `a + b*sqrt(d)` with a square norm)
/// and otherwise interns a new radical. Rational radicands are reduced to
/// their square-free integer part, so sqrt(8) becomes 2*sqrt(2).
Constructible sqrt(const Constructible& x);

/// Square root if it exists without adjoining a new radical.
std::optional<Constructible> exact_sqrt_in_tower(const Constructible& x);

int compare(const Constructible& x, const Constructible& y);
Constructible abs(const Constructible& x);
Constructible square(const Constructible& x);

/// Number of radicals interned so far in this process.
std::size_t radical_count();

/// Deterministic text form, e.g. "1/2+3*sqrt(2)". Not meant for parsing.
std::string to_string(const Constructible& x);
std::string to_string(const Rational& q);

/// Monotone refinement of an isolating interval with exact rational ends.
///
/// Starts from the cached double enclosure; each refine() recomputes the
/// enclosure with MPFR at doubled precision and intersects it with the
/// previous one, so the interval never grows.
class IsolatingInterval {
 public:
  explicit IsolatingInterval(Constructible x);

  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  Rational width() const { return hi_ - lo_; }
  long precision() const { return precision_; }
  bool excludes_zero() const { return sgn(lo_) > 0 || sgn(hi_) < 0; }
  /// Sign implied by the interval, 0 when it still straddles zero.
  int interval_sign() const { return sgn(lo_) > 0 ? 1 : (sgn(hi_) < 0 ? -1 : 0); }

  void refine();
  /// Refines until width < bound or the precision cap (bits) is reached.
  void refine_to_width(const Rational& bound, long max_precision = 1 << 14);

 private:
  Constructible value_;
  Rational lo_, hi_;
  long precision_ = 53;
  bool seeded_ = true;
};

}  // namespace thales
