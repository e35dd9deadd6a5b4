#include "thales/constructible.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <deque>
#include <map>
#include <mutex>
#include <vector>

#include <mpfr.h>

#include "thales/errors.hpp"

namespace thales {

struct Constructible::Node {
  Rational q;                        // value when radical == nullptr
  const Radical* radical = nullptr;  // top radical otherwise
  std::shared_ptr<const Node> a, b;  // value = a + b*sqrt(radical->radicand())
  Interval bounds;
  int nesting = 0;
  mutable std::atomic<signed char> sign_cache{2};  // 2 = not yet known
};

struct ConstructibleAccess {
  static const Constructible::Node& node(const Constructible& c) { return *c.node_; }
  static Constructible wrap(std::shared_ptr<const Constructible::Node> n) { return Constructible(std::move(n)); }
  static Constructible quadratic(Constructible a, Constructible b, const Radical* r) {
    return Constructible::quadratic(std::move(a), std::move(b), r);
  }
};

namespace {

using Node = Constructible::Node;
using NodePtr = std::shared_ptr<const Node>;

NodePtr rational_node(Rational q) {
  auto n = std::make_shared<Node>();
  q.canonicalize();
  n->bounds = Interval::from_rational(q);
  n->q = std::move(q);
  n->sign_cache.store(static_cast<signed char>(sgn(n->q)));
  return n;
}

const NodePtr& zero_node() {
  static const NodePtr z = rational_node(Rational(0));
  return z;
}

struct RadicalTable {
  std::mutex mutex;
  std::deque<Radical> radicals;
  std::map<Integer, const Radical*> by_integer;
  // Nested radicands keyed by the lower end of their enclosure; lookups only
  // scan keys within the widest enclosure seen so far.
  std::multimap<double, const Radical*> nested;
  double widest = 0.0;
};

RadicalTable& table() {
  static RadicalTable t;
  return t;
}

const Radical* intern_integer(const Integer& m) {
  auto& t = table();
  std::lock_guard lock(t.mutex);
  if (auto it = t.by_integer.find(m); it != t.by_integer.end()) return it->second;
  t.radicals.emplace_back(static_cast<std::uint32_t>(t.radicals.size()), Constructible(Rational(m)));
  const Radical* r = &t.radicals.back();
  t.by_integer.emplace(m, r);
  return r;
}

const Radical* intern_nested(const Constructible& d) {
  auto& t = table();
  std::lock_guard lock(t.mutex);
  const Interval& b = d.bounds();
  const bool finite = std::isfinite(b.lo) && std::isfinite(b.hi) && std::isfinite(t.widest);
  auto it = finite ? t.nested.lower_bound(b.lo - t.widest) : t.nested.begin();
  for (; it != t.nested.end() && (!finite || it->first <= b.hi); ++it) {
    const Radical* r = it->second;
    if (r->radicand().bounds().overlaps(b) && r->radicand() == d) return r;
  }
  t.radicals.emplace_back(static_cast<std::uint32_t>(t.radicals.size()), d);
  const Radical* r = &t.radicals.back();
  t.nested.emplace(b.lo, r);
  t.widest = std::max(t.widest, b.width());
  return r;
}

Integer integer_sqrt(const Integer& n) {
  Integer r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

/// n = s^2 * m with m free of small square factors; m may keep squares of
/// primes beyond the trial bound, which costs canonicity but never exactness.
std::pair<Integer, Integer> split_square(Integer n) {
  if (mpz_perfect_square_p(n.get_mpz_t())) return {integer_sqrt(n), Integer(1)};
  Integer s = 1;
  for (unsigned long p = 2; p < 2000; p += (p == 2 ? 1 : 2)) {
    const Integer p2 = Integer(p) * p;
    if (p2 > n) break;
    while (mpz_divisible_p(n.get_mpz_t(), p2.get_mpz_t())) {
      n /= p2;
      s *= p;
    }
  }
  if (n > 1 && mpz_perfect_square_p(n.get_mpz_t())) return {s * integer_sqrt(n), Integer(1)};
  return {s, n};
}

std::optional<Rational> rational_sqrt(const Rational& q) {
  if (sgn(q) < 0) return std::nullopt;
  const mpz_srcptr num = q.get_num_mpz_t();
  const mpz_srcptr den = q.get_den_mpz_t();
  if (!mpz_perfect_square_p(num) || !mpz_perfect_square_p(den)) return std::nullopt;
  return Rational(integer_sqrt(Integer(num)), integer_sqrt(Integer(den)));
}

// Directed-rounding MPFR interval, RAII over mpfr_t.
struct BigInterval {
  mpfr_t lo, hi;
  explicit BigInterval(long prec) {
    mpfr_init2(lo, prec);
    mpfr_init2(hi, prec);
  }
  ~BigInterval() {
    mpfr_clear(lo);
    mpfr_clear(hi);
  }
  BigInterval(const BigInterval&) = delete;
  BigInterval& operator=(const BigInterval&) = delete;
};

void enclose_mul(const BigInterval& x, const BigInterval& y, long prec, BigInterval& out) {
  mpfr_t t;
  mpfr_init2(t, prec);
  const mpfr_srcptr xs[2] = {x.lo, x.hi};
  const mpfr_srcptr ys[2] = {y.lo, y.hi};
  bool first = true;
  for (auto xv : xs) {
    for (auto yv : ys) {
      mpfr_mul(t, xv, yv, MPFR_RNDD);
      if (first || mpfr_cmp(t, out.lo) < 0) mpfr_set(out.lo, t, MPFR_RNDD);
      mpfr_mul(t, xv, yv, MPFR_RNDU);
      if (first || mpfr_cmp(t, out.hi) > 0) mpfr_set(out.hi, t, MPFR_RNDU);
      first = false;
    }
  }
  mpfr_clear(t);
}

void enclose(const Node& n, long prec, BigInterval& out) {
  if (n.radical == nullptr) {
    mpfr_set_q(out.lo, n.q.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(out.hi, n.q.get_mpq_t(), MPFR_RNDU);
    return;
  }
  BigInterval a(prec), b(prec), root(prec), prod(prec);
  enclose(*n.a, prec, a);
  enclose(*n.b, prec, b);
  enclose(ConstructibleAccess::node(n.radical->radicand()), prec, root);
  if (mpfr_sgn(root.lo) < 0) mpfr_set_zero(root.lo, 1);
  mpfr_sqrt(root.lo, root.lo, MPFR_RNDD);
  mpfr_sqrt(root.hi, root.hi, MPFR_RNDU);
  enclose_mul(b, root, prec, prod);
  mpfr_add(out.lo, a.lo, prod.lo, MPFR_RNDD);
  mpfr_add(out.hi, a.hi, prod.hi, MPFR_RNDU);
}

int node_sign(const Node& n);

Constructible make(const NodePtr& p) { return ConstructibleAccess::wrap(p); }

}  // namespace

// ---------------------------------------------------------------------------
// Radical

Radical::Radical(std::uint32_t id, Constructible radicand)
    : id_(id), radicand_(std::move(radicand)), bounds_(thales::sqrt(radicand_.bounds())) {}

std::size_t radical_count() {
  auto& t = table();
  std::lock_guard lock(t.mutex);
  return t.radicals.size();
}

// ---------------------------------------------------------------------------
// Construction and accessors

Constructible::Constructible() : node_(zero_node()) {}

Constructible::Constructible(long value) : node_(value == 0 ? zero_node() : rational_node(Rational(value))) {}

Constructible::Constructible(Rational q) : node_(rational_node(std::move(q))) {}

Constructible Constructible::from_rational(const Integer& n, const Integer& d) {
  if (d == 0) throw InputError("zero denominator in rational literal");
  return Constructible(Rational(n, d));
}

bool Constructible::is_rational() const { return node_->radical == nullptr; }

const Rational& Constructible::rational() const {
  if (!is_rational()) throw InternalError("rational() on an irrational value");
  return node_->q;
}

const Radical* Constructible::radical() const { return node_->radical; }

Constructible Constructible::a() const { return is_rational() ? *this : Constructible(node_->a); }

Constructible Constructible::b() const { return is_rational() ? Constructible() : Constructible(node_->b); }

int Constructible::nesting() const { return node_->nesting; }

const Interval& Constructible::bounds() const { return node_->bounds; }

Constructible Constructible::quadratic(Constructible a, Constructible b, const Radical* r) {
  // b = 0 collapses to the lower field; this is the structural normalization
  // that keeps values in the smallest tower that represents them.
  if (b.sign() == 0) return a;
  auto n = std::make_shared<Node>();
  n->radical = r;
  n->bounds = a.bounds() + b.bounds() * r->bounds();
  n->nesting = std::max({a.nesting(), b.nesting(), r->radicand().nesting() + 1});
  n->a = std::move(a.node_);
  n->b = std::move(b.node_);
  return Constructible(NodePtr(std::move(n)));
}

// ---------------------------------------------------------------------------
// Sign

namespace {

int node_sign(const Node& n) {
  const signed char cached = n.sign_cache.load(std::memory_order_relaxed);
  if (cached != 2) return cached;
  int s;
  if (n.radical == nullptr) {
    s = sgn(n.q);
  } else if (const int f = n.bounds.certain_sign(); f != 0) {
    s = f;
  } else {
    const int sa = node_sign(*n.a);
    const int sb = node_sign(*n.b);
    if (sb == 0) {
      s = sa;
    } else if (sa == 0 || sa == sb) {
      s = sb;
    } else {
      const Constructible a = make(n.a);
      const Constructible b = make(n.b);
      // a^2 - b^2 d decides which of the two opposite-signed terms dominates.
      const int norm = (a * a - b * b * n.radical->radicand()).sign();
      s = norm > 0 ? sa : (norm < 0 ? sb : 0);
    }
  }
  n.sign_cache.store(static_cast<signed char>(s), std::memory_order_relaxed);
  return s;
}

}  // namespace

int Constructible::sign() const { return node_sign(*node_); }

// ---------------------------------------------------------------------------
// Arithmetic

namespace {

const Radical* younger(const Radical* x, const Radical* y) {
  if (x == nullptr) return y;
  if (y == nullptr) return x;
  return x->id() >= y->id() ? x : y;
}

/// Coefficients of v with respect to radical r, which is at least as young as v's top.
std::pair<Constructible, Constructible> split(const Constructible& v, const Radical* r) {
  if (v.radical() == r) return {v.a(), v.b()};
  return {v, Constructible()};
}

}  // namespace

Constructible operator+(const Constructible& x, const Constructible& y) {
  if (x.is_rational() && y.is_rational()) return Constructible(x.rational() + y.rational());
  if (x.is_rational() && sgn(x.rational()) == 0) return y;
  if (y.is_rational() && sgn(y.rational()) == 0) return x;
  const Radical* r = younger(x.radical(), y.radical());
  auto [xa, xb] = split(x, r);
  auto [ya, yb] = split(y, r);
  return ConstructibleAccess::quadratic(xa + ya, xb + yb, r);
}

Constructible operator-(const Constructible& x) {
  if (x.is_rational()) return Constructible(-x.rational());
  return ConstructibleAccess::quadratic(-x.a(), -x.b(), x.radical());
}

Constructible operator-(const Constructible& x, const Constructible& y) {
  if (x.is_rational() && y.is_rational()) return Constructible(x.rational() - y.rational());
  return x + (-y);
}

Constructible operator*(const Constructible& x, const Constructible& y) {
  if (x.is_rational() && y.is_rational()) return Constructible(x.rational() * y.rational());
  const Radical* r = younger(x.radical(), y.radical());
  auto [xa, xb] = split(x, r);
  auto [ya, yb] = split(y, r);
  if (y.radical() != r) return ConstructibleAccess::quadratic(xa * y, xb * y, r);
  if (x.radical() != r) return ConstructibleAccess::quadratic(x * ya, x * yb, r);
  const Constructible& d = r->radicand();
  return ConstructibleAccess::quadratic(xa * ya + xb * yb * d, xa * yb + xb * ya, r);
}

Constructible Constructible::inverse(const Constructible& y) {
  if (y.sign() == 0) throw ArithmeticError("division by zero");
  if (y.is_rational()) return Constructible(1 / y.rational());
  const Constructible ya = y.a();
  const Constructible yb = y.b();
  const Constructible norm = ya * ya - yb * yb * y.radical()->radicand();
  // A zero norm with y != 0 means sqrt(d) already lives below r and
  // ya = yb*sqrt(d), hence y = 2*ya.
  if (norm.sign() == 0) return inverse(ya + ya);
  return quadratic(ya / norm, -yb / norm, y.radical());
}

Constructible operator/(const Constructible& x, const Constructible& y) {
  if (x.is_rational() && y.is_rational()) {
    if (sgn(y.rational()) == 0) throw ArithmeticError("division by zero");
    return Constructible(x.rational() / y.rational());
  }
  return x * Constructible::inverse(y);
}

Constructible abs(const Constructible& x) { return x.sign() < 0 ? -x : x; }

Constructible square(const Constructible& x) { return x * x; }

// ---------------------------------------------------------------------------
// Comparison

int compare(const Constructible& x, const Constructible& y) {
  if (x.node_id() == y.node_id()) return 0;
  if (x.is_rational() && y.is_rational()) {
    const int c = cmp(x.rational(), y.rational());
    return (c > 0) - (c < 0);
  }
  const Interval& bx = x.bounds();
  const Interval& by = y.bounds();
  if (bx.hi < by.lo) return -1;
  if (by.hi < bx.lo) return 1;
  return (x - y).sign();
}

bool operator==(const Constructible& x, const Constructible& y) { return compare(x, y) == 0; }

std::strong_ordering operator<=>(const Constructible& x, const Constructible& y) {
  const int c = compare(x, y);
  return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

// ---------------------------------------------------------------------------
// Square roots

std::optional<Constructible> exact_sqrt_in_tower(const Constructible& x) {
  const int s = x.sign();
  if (s < 0) return std::nullopt;
  if (s == 0) return Constructible();
  if (x.is_rational()) {
    if (auto r = rational_sqrt(x.rational())) return Constructible(*r);
    return std::nullopt;
  }
  // sqrt(a + b sqrt d) = u + v sqrt d  iff  u^2 + v^2 d = a, 2uv = b, which
  // forces u^2 = (a +- q)/2 with q^2 = a^2 - b^2 d.
  const Constructible a = x.a();
  const Constructible b = x.b();
  const Radical* r = x.radical();
  const auto q = exact_sqrt_in_tower(a * a - b * b * r->radicand());
  if (!q) return std::nullopt;
  for (const Constructible& h : {(a + *q) / 2, (a - *q) / 2}) {
    auto u = exact_sqrt_in_tower(h);
    if (!u || u->sign() == 0) continue;
    const Constructible v = b / (*u + *u);
    return abs(Constructible::quadratic(*u, v, r));
  }
  return std::nullopt;
}

Constructible sqrt(const Constructible& x) {
  const int s = x.sign();
  if (s < 0) throw ArithmeticError("square root of a negative value");
  if (s == 0) return Constructible();
  if (x.is_rational()) {
    const Rational& q = x.rational();
    // sqrt(p/q) = sqrt(p*q)/q
    auto [outside, inside] = split_square(Integer(q.get_num() * q.get_den()));
    const Rational factor(outside, q.get_den());
    if (inside == 1) return Constructible(factor);
    return Constructible::quadratic(Constructible(), Constructible(factor), intern_integer(inside));
  }
  if (auto r = exact_sqrt_in_tower(x)) return *r;
  // Denest sqrt(a + b sqrt d) = sqrt((a+q)/2) + sgn(b) sqrt((a-q)/2) when
  // q = sqrt(a^2 - b^2 d) exists below the top radical.
  const Constructible a = x.a();
  const Constructible b = x.b();
  if (auto q = exact_sqrt_in_tower(a * a - b * b * x.radical()->radicand())) {
    const Constructible h1 = (a + *q) / 2;
    const Constructible h2 = (a - *q) / 2;
    if (h1.sign() >= 0 && h2.sign() >= 0) {
      const Constructible second = sqrt(h2);
      return b.sign() > 0 ? sqrt(h1) + second : sqrt(h1) - second;
    }
  }
  return Constructible::quadratic(Constructible(), Constructible(1), intern_nested(x));
}

// ---------------------------------------------------------------------------
// Text

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

namespace {

bool is_atom(const Constructible& x) { return x.is_rational() && x.rational().get_den() == 1; }

std::string factor(const Constructible& x) {
  if (is_atom(x) && sgn(x.rational()) >= 0) return to_string(x);
  return "(" + to_string(x) + ")";
}

}  // namespace

std::string to_string(const Constructible& x) {
  if (x.is_rational()) return to_string(x.rational());
  const Constructible a = x.a();
  const Constructible b = x.b();
  const std::string root = "sqrt(" + to_string(x.radical()->radicand()) + ")";
  std::string term;
  if (b.is_rational() && b.rational() == 1) {
    term = root;
  } else if (b.is_rational() && b.rational() == -1) {
    term = "-" + root;
  } else {
    term = factor(b) + "*" + root;
  }
  if (a.is_rational() && sgn(a.rational()) == 0) return term;
  if (term.front() == '-') return to_string(a) + term;
  return to_string(a) + "+" + term;
}

// ---------------------------------------------------------------------------
// Isolating intervals

IsolatingInterval::IsolatingInterval(Constructible x) : value_(std::move(x)) {
  if (value_.is_rational()) {
    lo_ = hi_ = value_.rational();
    return;
  }
  const Interval& b = value_.bounds();
  if (std::isfinite(b.lo) && std::isfinite(b.hi)) {
    lo_ = Rational(b.lo);
    hi_ = Rational(b.hi);
  } else {
    precision_ = 32;
    seeded_ = false;
    refine();
  }
}

void IsolatingInterval::refine() {
  if (value_.is_rational()) return;
  precision_ *= 2;
  BigInterval e(precision_);
  enclose(ConstructibleAccess::node(value_), precision_, e);
  Rational lo, hi;
  mpfr_get_q(lo.get_mpq_t(), e.lo);
  mpfr_get_q(hi.get_mpq_t(), e.hi);
  if (seeded_) {
    if (lo < lo_) lo = lo_;
    if (hi > hi_) hi = hi_;
  }
  lo_ = std::move(lo);
  hi_ = std::move(hi);
  seeded_ = true;
}

void IsolatingInterval::refine_to_width(const Rational& bound, long max_precision) {
  while (width() >= bound && precision_ < max_precision) refine();
}

}  // namespace thales
