#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "thales/coloring.hpp"
#include "thales/verifier.hpp"

namespace thales {

/// Snapshots with more points than this are checked in listed-circle mode
/// unless told otherwise; the full circle recomputation is cubic.
inline constexpr std::size_t kAllCirclesLimit = 120;

struct Verdict {
  std::optional<Violation> witness;
  std::vector<Violation> violations;
  bool all_circles = true;

  std::size_t errors() const { return (witness ? 1 : 0) + count_errors(violations); }
};

/// Oracle plus condition checks. `circles`: "all", "listed" or "auto".
Verdict verify(const Snapshot& snap, const VerifyOptions& opts, const std::string& circles = "auto");

struct MutationStats {
  Mutant mutant = Mutant::none;
  std::size_t points = 0;
  std::optional<Violation> witness;
  std::map<std::string, std::size_t> counts;
  std::size_t errors = 0;
};

/// Reruns the construction with one enforcement disabled and verifies it.
MutationStats mutation_suite(const std::vector<Point>& seeds, const EngineConfig& cfg, const VerifyOptions& opts = {});

nlohmann::json to_json(const MutationStats& s, const Snapshot& snap);
/// Header, per-level stats, engine diagnostics, tallies and witnesses.
nlohmann::json report_json(const nlohmann::json& header, const Construction& c, const Snapshot& snap, const Verdict& v);

}  // namespace thales
