#include "thales/corpus.hpp"

#include <numeric>
#include <set>
#include <string>

#include "thales/errors.hpp"
#include "thales/rng.hpp"

namespace thales {
namespace {

Constructible frac(long p, long q) { return Constructible::from_rational(p, q); }

Rational quarter(long p) {
  Rational q(p, 4);
  q.canonicalize();
  return q;
}

// Unit-circle points in parametrization order, including reflections.
std::vector<std::pair<Rational, Rational>> unit_points(std::size_t count) {
  std::vector<std::pair<Rational, Rational>> out;
  for (long q = 2; out.size() < count; ++q) {
    for (long p = 1; p < q && out.size() < count; ++p) {
      if (std::gcd(p, q) != 1) continue;
      const Rational h(q * q + p * p);
      const Rational x = Rational(q * q - p * p) / h;
      const Rational y = Rational(2 * p * q) / h;
      for (auto [sx, sy] : {std::pair{1, 1}, {-1, 1}, {1, -1}, {-1, -1}}) {
        if (out.size() < count) out.emplace_back(Rational(x * sx), Rational(y * sy));
      }
    }
  }
  return out;
}

long parse_long(std::string_view s, std::string_view spec) {
  try {
    std::size_t used = 0;
    const long v = std::stol(std::string(s), &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw InputError("bad corpus spec '" + std::string(spec) + "'");
}

}  // namespace

std::vector<Point> grid(int n) {
  if (n < 1) throw InputError("grid size must be positive");
  std::vector<Point> out;
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) out.push_back(Point{Constructible(x), Constructible(y)});
  }
  return out;
}

std::vector<Point> random_rational(int n, std::uint64_t seed, long denom_bound) {
  if (n < 1 || denom_bound < 1) throw InputError("corpus parameters must be positive");
  SplitMix64 rng(seed);
  std::set<Point> seen;
  std::vector<Point> out;
  while (static_cast<int>(out.size()) < n) {
    const long q1 = rng.range(1, denom_bound);
    const long q2 = rng.range(1, denom_bound);
    Point p{frac(rng.range(-2 * q1, 2 * q1), q1), frac(rng.range(-2 * q2, 2 * q2), q2)};
    if (seen.insert(p).second) out.push_back(std::move(p));
  }
  return out;
}

std::vector<Point> pythagorean_points(int count) {
  if (count < 0) throw InputError("point count must be nonnegative");
  std::vector<Point> out;
  for (const auto& [x, y] : unit_points(static_cast<std::size_t>(count))) out.push_back(Point{Constructible(x), Constructible(y)});
  return out;
}

std::vector<Point> circle_rich(int n, std::uint64_t seed) {
  if (n < 1) throw InputError("corpus size must be positive");
  SplitMix64 rng(seed);
  std::set<Point> seen;
  std::vector<Point> out;
  // Up to 8 points per circle; the first circle is the unit circle.
  for (int circle = 0; static_cast<int>(out.size()) < n; ++circle) {
    Rational cx, cy, r(1);
    if (circle > 0) {
      cx = quarter(rng.range(-8, 8));
      cy = quarter(rng.range(-8, 8));
      r = quarter(rng.range(1, 8));
    }
    for (const auto& [x, y] : unit_points(8)) {
      if (static_cast<int>(out.size()) == n) break;
      Point p{Constructible(Rational(cx + r * x)), Constructible(Rational(cy + r * y))};
      if (seen.insert(p).second) out.push_back(std::move(p));
    }
  }
  return out;
}

std::vector<Point> generate_corpus(std::string_view spec) {
  std::vector<std::string_view> parts;
  for (std::size_t start = 0;;) {
    const std::size_t colon = spec.find(':', start);
    parts.push_back(spec.substr(start, colon == std::string_view::npos ? std::string_view::npos : colon - start));
    if (colon == std::string_view::npos) break;
    start = colon + 1;
  }
  const std::string_view kind = parts[0];
  if (kind == "grid" && parts.size() == 2) return grid(static_cast<int>(parse_long(parts[1], spec)));
  if (kind == "random" && parts.size() == 4) {
    return random_rational(static_cast<int>(parse_long(parts[1], spec)), static_cast<std::uint64_t>(parse_long(parts[2], spec)),
                           parse_long(parts[3], spec));
  }
  if (kind == "circle" && parts.size() == 3) {
    return circle_rich(static_cast<int>(parse_long(parts[1], spec)), static_cast<std::uint64_t>(parse_long(parts[2], spec)));
  }
  throw InputError("bad corpus spec '" + std::string(spec) + "'");
}

}  // namespace thales
