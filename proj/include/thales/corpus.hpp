#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "thales/geometry.hpp"

namespace thales {

/// n x n lattice {0..n-1}^2, x-major: grid(2) = (0,0),(0,1),(1,0),(1,1).
std::vector<Point> grid(int n);

/// n distinct points with coordinates p/q, 1 <= q <= denom_bound, in the
/// square [-2, 2]^2.
std::vector<Point> random_rational(int n, std::uint64_t seed, long denom_bound);

/// The first `count` rational points of the unit circle from the Pythagorean
/// parametrization ((q^2-p^2)/(q^2+p^2), 2pq/(q^2+p^2)), 0 < p < q coprime,
/// in (q, p) order, each with its three reflections (x,y),(-x,y),(x,-y),(-x,-y).
/// Starts (3/5,4/5), (-3/5,4/5), (3/5,-4/5), (-3/5,-4/5), (4/5,3/5), ...
std::vector<Point> pythagorean_points(int count);

/// n points on a few rational circles: the unit circle first, then circles
/// with seeded centers and radii, filled with scaled Pythagorean points.
std::vector<Point> circle_rich(int n, std::uint64_t seed);

/// "grid:N", "random:N:SEED:DENOM" or "circle:N:SEED". Throws InputError.
std::vector<Point> generate_corpus(std::string_view spec);

}  // namespace thales
