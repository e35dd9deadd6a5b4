#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "thales/coloring.hpp"
#include "thales/verifier.hpp"

namespace thales {

/// One point per line as "x,y"; coordinates in parse_rational syntax
/// ("p/q" or an exact decimal), blanks around them ignored, '#' starts a
/// comment. Errors name the line. A repeated point is an error when
/// `strict`, otherwise later copies are dropped.
std::vector<Point> parse_points(std::string_view text, bool strict = false);
std::vector<Point> read_points(const std::string& path, bool strict = false);
/// Inverse of parse_points for rational points; throws InputError on a
/// point with an irrational coordinate.
std::string serialize_points(const std::vector<Point>& points);

/// id,x,y,level,batch,color with exact coordinates, in id order.
std::string coloring_csv(const Snapshot& snap);

/// Materializes every registered circle so listings are complete.
void materialize_all_circles(LevelRegistry& reg);

/// One JSON object per point, line and materialized circle:
/// {kind, id, level, batch_index, rule, parents, value}. Curves carry
/// batch_index null.
std::string registry_jsonl(const LevelRegistry& reg);

/// Points plus every line and listed circle with its birth and palette
/// complement. Coordinates and curve coefficients are exact expression
/// trees; "text" fields are for reading only.
nlohmann::json coloring_json(const Snapshot& snap);
/// Inverse of coloring_json. Throws InputError on malformed documents.
Snapshot snapshot_from_json(const nlohmann::json& j);

/// Points colored by index, curves through at least two points drawn
/// faintly, the witness triangle (if any) stroked on top.
std::string render_svg(const Snapshot& snap, const std::optional<Violation>& witness = std::nullopt);
/// Throws IoError when the file cannot be written.
void write_file(const std::string& path, const std::string& content);

}  // namespace thales
