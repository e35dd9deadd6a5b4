#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "thales/snapshot.hpp"

namespace thales {

enum class ViolationKind {
  mono_right_triangle,
  cond_6,
  cond_7,
  cond_8,
  cond_9,
  cond_10,
  cond_11,
  cond_12,
  claim_2_strict,
  palette_missing,
  palette_mismatch,
  registry_mismatch,
};

enum class Severity { error, warning };

std::string to_string(ViolationKind k);
std::string to_string(Severity s);

/// A witness that can be re-checked on its own: point indices refer to the
/// snapshot, curves are given in text form.
struct Violation {
  ViolationKind kind = ViolationKind::cond_6;
  Severity severity = Severity::error;
  std::vector<int> points;
  std::vector<std::string> curves;
  std::vector<Color> colors;
  std::string detail;
};

struct VerifyOptions {
  /// CLAIM_2_STRICT findings (a point on two older curves, or a COND_11 hit
  /// at a point younger than both lines) become errors.
  bool strict = false;
  unsigned workers = 1;
  /// Recompute every circle from all pairs and triples. When false only the
  /// circles listed in the snapshot are checked (for runs too large for the
  /// cubic recomputation).
  bool all_circles = true;
  /// Listed mode only: also check this many circles through random point
  /// triples (and a quarter as many Thales circles of random pairs), taking
  /// the engine's palettes from the snapshot lookup.
  std::size_t sample_circles = 0;
  std::uint64_t sample_seed = 1;
};

/// Exhaustive search over same-color triples; the witness is the lowest
/// (i < j < k, then right-angle vertex) in index order. points[1] of the
/// witness is the right-angle vertex.
std::optional<Violation> find_mono_right_triangle(const std::vector<Point>& points, const std::vector<Color>& colors,
                                                  unsigned workers = 1);

/// Re-derives every incidence, birth and palette from the points alone and
/// checks COND_6 through COND_12, CLAIM_2_STRICT, and the palette definitions against
/// the snapshot. Never reads engine provenance.
std::vector<Violation> check_conditions(const Snapshot& snap, const VerifyOptions& opts = {});

std::size_t count_errors(const std::vector<Violation>& v);
std::map<std::string, std::size_t> tally(const std::vector<Violation>& v);

nlohmann::json to_json(const Violation& v, const Snapshot& snap);

}  // namespace thales
