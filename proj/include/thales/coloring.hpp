#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "thales/palette.hpp"
#include "thales/registry.hpp"
#include "thales/snapshot.hpp"

namespace thales {

/// Enforcements that mutation runs can switch off. `all` replaces the whole
/// rule by the constant coloring 0.
enum class Mutant { none, gap_rule, cond_7, cond_12, phi_cases, all };

std::string to_string(Mutant m);
/// Accepts the upper-case tags GAP_RULE, COND_7, COND_12, PHI_CASES, ALL, NONE.
/// Throws InputError on anything else.
Mutant parse_mutant(std::string_view tag);

struct EngineConfig {
  ClosureConfig closure;
  Mutant mutant = Mutant::none;
  /// When x lands on an older circle that already holds its antipode x*,
  /// also avoid f(x*) if f(x*) is in the circle's palette. Stands in for the
  /// antipode closure that a budget cuts off.
  bool antipode_guard = true;
};

struct ColorState {
  std::vector<Color> f;           // by point id, -1 while uncolored
  std::vector<Palette> line_phi;  // by line id
  /// Explicit circle palettes. Circles missing here get the palette rule
  /// evaluated on the registry.
  std::map<Circle, Palette> circle_phi;
  Mutant mutant = Mutant::none;
  bool antipode_guard = true;

  // Diagnostics.
  std::size_t multi_prior_points = 0;  // points on >= 2 older curves
  std::size_t guard_exclusions = 0;    // colors removed by the antipode guard
  std::size_t oversized_circles = 0;   // circles with more than two early points
  std::size_t oversized_lines = 0;     // lines with more than one early point
};

/// Circle palette from the colors of its early points A.
Palette circle_palette_rule(const std::vector<Color>& early, Mutant mutant = Mutant::none);
/// Line palette from the colors of its early points B and of its same-level points N.
Palette line_palette_rule(const std::vector<Color>& early, const std::vector<Color>& batch,
                          Mutant mutant = Mutant::none);

/// Palette of c when born at `level`: A = colored points of level < level on c.
Palette assign_phi_circle(const ColorState& state, const LevelRegistry& reg, const Circle& c, int level);
/// Palette of l when born at `level`, from its points of level < level and == level.
Palette assign_phi_line(const ColorState& state, const LevelRegistry& reg, const Line& l, int level);

/// Palette of a registered curve; nullopt when the curve is not registered.
std::optional<Palette> phi(const ColorState& state, const LevelRegistry& reg, const Curve& e);

/// Colors ruled out for x by the perpendicular condition: for each older
/// line L through x, the colors of older points on the perpendicular to L at x.
std::vector<Color> disqualified_colors(const ColorState& state, const LevelRegistry& reg, int point_id);

/// Colors the batch of `level` in enumeration order.
void color_batch(ColorState& state, const LevelRegistry& reg, int level);
/// Assigns palettes to the given (newly born) lines.
void assign_line_palettes(ColorState& state, const LevelRegistry& reg, const std::vector<int>& line_ids);

struct LevelStats {
  int level = 0;
  int points = 0;
  int lines = 0;
  bool budget_exhausted = false;
  Color max_color = -1;
};

struct Construction {
  LevelRegistry reg;
  ColorState state;
  std::vector<LevelStats> levels;
};

/// Per level: derive (from level 2 on), color the batch, generate curves,
/// assign line palettes; then a completion pass over all colored points.
Construction run_construction(const std::vector<Point>& seeds, const EngineConfig& cfg);

/// Verifier view of a construction. Lists the materialized circles; any other
/// circle is answered through the registry.
Snapshot snapshot_of(const Construction& c);

}  // namespace thales
