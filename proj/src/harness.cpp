#include "thales/harness.hpp"

#include "thales/errors.hpp"

namespace thales {

Verdict verify(const Snapshot& snap, const VerifyOptions& opts, const std::string& circles) {
  if (circles != "all" && circles != "listed" && circles != "auto") throw InputError("circle mode must be all, listed or auto");
  Verdict v;
  std::vector<Point> points;
  std::vector<Color> colors;
  for (const SnapshotPoint& p : snap.points) {
    points.push_back(p.point);
    colors.push_back(p.color);
  }
  v.witness = find_mono_right_triangle(points, colors, opts.workers);
  VerifyOptions o = opts;
  o.all_circles = circles == "all" || (circles == "auto" && snap.points.size() <= kAllCirclesLimit);
  v.all_circles = o.all_circles;
  v.violations = check_conditions(snap, o);
  return v;
}

MutationStats mutation_suite(const std::vector<Point>& seeds, const EngineConfig& cfg, const VerifyOptions& opts) {
  Construction c = run_construction(seeds, cfg);
  const Snapshot snap = snapshot_of(c);
  const Verdict v = verify(snap, opts);
  MutationStats s;
  s.mutant = cfg.mutant;
  s.points = snap.points.size();
  s.witness = v.witness;
  s.counts = tally(v.violations);
  if (v.witness) ++s.counts[to_string(ViolationKind::mono_right_triangle)];
  s.errors = v.errors();
  return s;
}

nlohmann::json to_json(const MutationStats& s, const Snapshot& snap) {
  nlohmann::json j{{"mutant", to_string(s.mutant)}, {"points", s.points}, {"errors", s.errors}, {"counts", s.counts}};
  j["witness"] = s.witness ? to_json(*s.witness, snap) : nlohmann::json(nullptr);
  return j;
}

nlohmann::json report_json(const nlohmann::json& header, const Construction& c, const Snapshot& snap, const Verdict& v) {
  nlohmann::json levels = nlohmann::json::array();
  for (const LevelStats& s : c.levels) {
    levels.push_back({{"level", s.level},
                      {"points", s.points},
                      {"lines", s.lines},
                      {"budget_exhausted", s.budget_exhausted},
                      {"max_color", s.max_color}});
  }
  nlohmann::json violations = nlohmann::json::array();
  for (const Violation& x : v.violations) violations.push_back(to_json(x, snap));
  // Circles with more than two earlier points exist only because the run is
  // not closed; their palettes exclude every earlier color.
  std::size_t oversized_circles = 0;
  for (const CircleRecord& r : c.reg.circles()) {
    if (const auto birth = c.reg.circle_birth(r.circle); birth && birth->early.size() > 2) ++oversized_circles;
  }
  return {{"config", header},
          {"levels", levels},
          {"points", snap.points.size()},
          {"lines", snap.lines.size()},
          {"circles_listed", snap.circles.size()},
          {"diagnostics",
           {{"multi_prior_points", c.state.multi_prior_points},
            {"guard_exclusions", c.state.guard_exclusions},
            {"oversized_lines", c.state.oversized_lines},
            {"oversized_circles", oversized_circles}}},
          {"all_circles_checked", v.all_circles},
          {"witness", v.witness ? to_json(*v.witness, snap) : nlohmann::json(nullptr)},
          {"errors", v.errors()},
          {"tally", tally(v.violations)},
          {"violations", violations}};
}

}  // namespace thales
