#include "thales/coloring.hpp"

#include <algorithm>

#include "thales/errors.hpp"

namespace thales {
namespace {

Color color_of(const ColorState& state, int id) {
  const auto u = static_cast<std::size_t>(id);
  if (u >= state.f.size() || state.f[u] < 0) throw InternalError("point " + point_ref(id) + " is not colored yet");
  return state.f[u];
}

std::vector<Color> colors_of(const ColorState& state, const std::vector<int>& ids) {
  std::vector<Color> out;
  out.reserve(ids.size());
  for (int id : ids) out.push_back(color_of(state, id));
  return out;
}

// Older points y with (y - x).dir == 0, i.e. on the perpendicular at x.
void perpendicular_colors(const ColorState& state, const LevelRegistry& reg, const Point& x, int bound,
                          const std::vector<int>& line_ids, int self, std::vector<Color>& out) {
  const int end = reg.level_end(bound);
  const Interval xb = x.x.bounds(), yb = x.y.bounds();
  for (int lid : line_ids) {
    const LineRecord& l = reg.lines()[static_cast<std::size_t>(lid)];
    int w = -1;
    for (int m : l.members) {
      if (m != self && m < end) {
        w = m;
        break;
      }
    }
    if (w < 0) throw InternalError("older line " + line_ref(lid) + " without an older point");
    const Point dir = reg.point(w).point - x;
    const Interval ix = reg.point(w).bx - xb, iy = reg.point(w).by - yb;
    for (int y = 0; y < end; ++y) {
      if (y == w) continue;
      const PointRecord& py = reg.point(y);
      if (!((py.bx - xb) * ix + (py.by - yb) * iy).contains_zero()) continue;
      if (dot(py.point - x, dir).sign() == 0) out.push_back(color_of(state, y));
    }
  }
}

Palette group_palette(const ColorState& state, const LevelRegistry& reg, const Point& x, const CircleThrough& c) {
  if (!state.circle_phi.empty()) {
    const Circle circle = circumcircle(x, reg.point(c.members[0]).point, reg.point(c.members[1]).point);
    if (auto it = state.circle_phi.find(circle); it != state.circle_phi.end()) return it->second;
  }
  return circle_palette_rule(colors_of(state, c.birth.early), state.mutant);
}

}  // namespace

std::string to_string(Mutant m) {
  switch (m) {
    case Mutant::none: return "NONE";
    case Mutant::gap_rule: return "GAP_RULE";
    case Mutant::cond_7: return "COND_7";
    case Mutant::cond_12: return "COND_12";
    case Mutant::phi_cases: return "PHI_CASES";
    case Mutant::all: return "ALL";
  }
  return "NONE";
}

Mutant parse_mutant(std::string_view tag) {
  for (Mutant m : {Mutant::none, Mutant::gap_rule, Mutant::cond_7, Mutant::cond_12, Mutant::phi_cases, Mutant::all}) {
    if (tag == to_string(m)) return m;
  }
  throw InputError("unknown mutant '" + std::string(tag) + "'");
}

Palette circle_palette_rule(const std::vector<Color>& early, Mutant mutant) {
  if (mutant == Mutant::phi_cases) return Palette::full();
  if (early.size() == 2 && early[0] == early[1]) return Palette::full();
  return Palette(early);
}

Palette line_palette_rule(const std::vector<Color>& early, const std::vector<Color>& batch, Mutant mutant) {
  if (mutant == Mutant::phi_cases) return Palette::full();
  if (early.size() == 1 && std::find(batch.begin(), batch.end(), early[0]) != batch.end()) {
    std::vector<Color> rest;
    for (Color c : batch) {
      if (c != early[0]) rest.push_back(c);
    }
    return Palette(rest);
  }
  std::vector<Color> all = early;
  all.insert(all.end(), batch.begin(), batch.end());
  return Palette(all);
}

Palette assign_phi_circle(const ColorState& state, const LevelRegistry& reg, const Circle& c, int level) {
  std::vector<Color> early;
  for (int id : reg.members_of(c)) {
    if (reg.level_of(id) < level) early.push_back(color_of(state, id));
  }
  return circle_palette_rule(early, state.mutant);
}

Palette assign_phi_line(const ColorState& state, const LevelRegistry& reg, const Line& l, int level) {
  std::vector<int> members;
  if (auto id = reg.find_line(l)) {
    members = reg.lines()[static_cast<std::size_t>(*id)].members;
  } else {
    for (int id = 0; id < reg.point_count(); ++id) {
      if (on_line(reg.point(id).point, l)) members.push_back(id);
    }
  }
  std::vector<Color> early, batch;
  for (int id : members) {
    const int lv = reg.level_of(id);
    if (lv < level) early.push_back(color_of(state, id));
    if (lv == level) batch.push_back(color_of(state, id));
  }
  return line_palette_rule(early, batch, state.mutant);
}

std::optional<Palette> phi(const ColorState& state, const LevelRegistry& reg, const Curve& e) {
  if (const Line* l = std::get_if<Line>(&e)) {
    auto id = reg.find_line(*l);
    if (!id || static_cast<std::size_t>(*id) >= state.line_phi.size()) return std::nullopt;
    return state.line_phi[static_cast<std::size_t>(*id)];
  }
  const Circle& c = std::get<Circle>(e);
  if (auto it = state.circle_phi.find(c); it != state.circle_phi.end()) return it->second;
  auto birth = reg.circle_birth(c);
  if (!birth || birth->level > reg.curve_level()) return std::nullopt;
  return circle_palette_rule(colors_of(state, birth->early), state.mutant);
}

std::vector<Color> disqualified_colors(const ColorState& state, const LevelRegistry& reg, int point_id) {
  const PointRecord& x = reg.point(point_id);
  const int bound = x.level - 1;
  std::vector<Color> out;
  perpendicular_colors(state, reg, x.point, bound, reg.lines_through(x.point, bound), point_id, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void color_batch(ColorState& state, const LevelRegistry& reg, int level) {
  const int begin = reg.level_begin(level);
  const int end = reg.level_end(level);
  const int bound = level - 1;
  if (state.f.size() < static_cast<std::size_t>(reg.point_count())) state.f.resize(static_cast<std::size_t>(reg.point_count()), -1);
  const Color gap = state.mutant == Mutant::gap_rule ? 1 : 2;
  Color batch_max = -1;
  for (int id = begin; id < end; ++id) {
    if (state.mutant == Mutant::all) {
      state.f[static_cast<std::size_t>(id)] = 0;
      continue;
    }
    const Point& x = reg.point(id).point;
    std::vector<Color> forbidden;
    const std::vector<int> lines = bound >= 1 ? reg.lines_through(x, bound) : std::vector<int>{};
    const std::vector<CircleThrough> circles = bound >= 1 ? reg.circles_through(x, bound) : std::vector<CircleThrough>{};
    if (lines.size() + circles.size() >= 2) ++state.multi_prior_points;

    if (state.mutant != Mutant::cond_7) {
      for (int lid : lines) {
        if (static_cast<std::size_t>(lid) >= state.line_phi.size()) throw InternalError("line " + line_ref(lid) + " has no palette");
        const auto& comp = state.line_phi[static_cast<std::size_t>(lid)].complement();
        forbidden.insert(forbidden.end(), comp.begin(), comp.end());
      }
    }
    for (const CircleThrough& c : circles) {
      const Palette p = group_palette(state, reg, x, c);
      if (state.mutant != Mutant::cond_7) forbidden.insert(forbidden.end(), p.complement().begin(), p.complement().end());
      if (!state.antipode_guard || c.members.size() < 2) continue;
      // x* is antipodal to x iff another member b sees x and x* at a right angle.
      for (int a : c.members) {
        const int b = a == c.members[0] ? c.members[1] : c.members[0];
        const Point& pa = reg.point(a).point;
        const Point& pb = reg.point(b).point;
        if (dot(x - pb, pa - pb).sign() != 0) continue;
        const Color fa = color_of(state, a);
        if (p.contains(fa)) {
          forbidden.push_back(fa);
          ++state.guard_exclusions;
        }
        break;
      }
    }
    if (state.mutant != Mutant::cond_12 && !lines.empty()) perpendicular_colors(state, reg, x, bound, lines, id, forbidden);

    std::sort(forbidden.begin(), forbidden.end());
    Color c = id == begin ? 0 : batch_max + gap;
    while (std::binary_search(forbidden.begin(), forbidden.end(), c)) ++c;
    state.f[static_cast<std::size_t>(id)] = c;
    batch_max = std::max(batch_max, c);
  }
}

void assign_line_palettes(ColorState& state, const LevelRegistry& reg, const std::vector<int>& line_ids) {
  if (state.line_phi.size() < reg.lines().size()) state.line_phi.resize(reg.lines().size());
  for (int lid : line_ids) {
    const LineRecord& l = reg.lines()[static_cast<std::size_t>(lid)];
    std::vector<Color> early, batch;
    for (int id : l.members) {
      const int lv = reg.level_of(id);
      if (lv < l.birth) early.push_back(color_of(state, id));
      if (lv == l.birth) batch.push_back(color_of(state, id));
    }
    if (early.size() > 1) ++state.oversized_lines;
    state.line_phi[static_cast<std::size_t>(lid)] = line_palette_rule(early, batch, state.mutant);
  }
}

Construction run_construction(const std::vector<Point>& seeds, const EngineConfig& cfg) {
  if (cfg.closure.max_level < 1) throw InputError("max_level must be at least 1");
  Construction out{register_seed(seeds, cfg.closure), ColorState{}, {}};
  LevelRegistry& reg = out.reg;
  ColorState& state = out.state;
  state.mutant = cfg.mutant;
  state.antipode_guard = cfg.antipode_guard;

  for (int n = 1; n <= cfg.closure.max_level; ++n) {
    LevelStats stats;
    stats.level = n;
    if (n > 1) {
      const auto fresh = reg.derive_points(n - 1, cfg.closure.point_budget_per_level);
      stats.budget_exhausted = fresh.size() >= cfg.closure.point_budget_per_level;
    }
    color_batch(state, reg, n);
    const auto lines = reg.generate_curves(n);
    assign_line_palettes(state, reg, lines);
    stats.points = reg.level_end(n) - reg.level_begin(n);
    stats.lines = static_cast<int>(lines.size());
    for (int id = reg.level_begin(n); id < reg.level_end(n); ++id) stats.max_color = std::max(stats.max_color, state.f[static_cast<std::size_t>(id)]);
    out.levels.push_back(stats);
  }
  // Completion pass: every colored pair and triple gets its curves.
  assign_line_palettes(state, reg, reg.generate_curves(std::max(reg.top_level(), reg.curve_level())));
  return out;
}

Snapshot snapshot_of(const Construction& c) {
  Snapshot snap;
  const LevelRegistry& reg = c.reg;
  const ColorState& state = c.state;
  for (int id = 0; id < reg.point_count(); ++id) {
    const PointRecord& p = reg.point(id);
    snap.points.push_back({p.point, p.level, p.batch, state.f[static_cast<std::size_t>(id)]});
  }
  for (std::size_t i = 0; i < reg.lines().size(); ++i) {
    snap.lines.push_back({reg.lines()[i].line, reg.lines()[i].birth, state.line_phi.at(i)});
  }
  for (const CircleRecord& r : reg.circles()) {
    if (auto p = phi(state, reg, r.circle)) snap.circles.push_back({r.circle, r.birth, *p});
  }
  snap.circle_lookup = [&reg, &state](const Circle& circle) -> std::optional<std::pair<int, Palette>> {
    auto birth = reg.circle_birth(circle);
    if (!birth || birth->level > reg.curve_level()) return std::nullopt;
    if (auto it = state.circle_phi.find(circle); it != state.circle_phi.end()) return std::make_pair(birth->level, it->second);
    return std::make_pair(birth->level, circle_palette_rule(colors_of(state, birth->early), state.mutant));
  };
  return snap;
}

}  // namespace thales
