#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "thales/geometry.hpp"
#include "thales/palette.hpp"

namespace thales {

struct SnapshotPoint {
  Point point;
  int level = 0;
  int batch = 0;
  Color color = -1;
};

struct SnapshotLine {
  Line line;
  int birth = 0;
  Palette palette;
};

struct SnapshotCircle {
  Circle circle;
  int birth = 0;
  Palette palette;
};

/// Finished state as seen by the verifier: points with levels and colors,
/// the engine's lines and listed circles with their births and palettes.
struct Snapshot {
  std::vector<SnapshotPoint> points;
  std::vector<SnapshotLine> lines;
  std::vector<SnapshotCircle> circles;
  /// Birth and palette of a circle that is not listed; may be empty.
  std::function<std::optional<std::pair<int, Palette>>(const Circle&)> circle_lookup;
};

}  // namespace thales
