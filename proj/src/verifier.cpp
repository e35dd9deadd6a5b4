#include "thales/verifier.hpp"

#include <algorithm>
#include <atomic>
#include <climits>
#include <deque>
#include <mutex>
#include <set>
#include <thread>

#include "thales/exact_io.hpp"
#include "thales/rng.hpp"

namespace thales {
namespace {

struct Incidence {
  int birth = INT_MAX;
  std::vector<int> members;
};

void normalize(std::vector<int>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

// Everything the checks need about the point set, computed once.
struct Points {
  explicit Points(const Snapshot& s) : snap(s) {
    for (std::size_t i = 0; i < s.points.size(); ++i) {
      bx.push_back(s.points[i].point.x.bounds());
      by.push_back(s.points[i].point.y.bounds());
    }
  }
  int size() const { return static_cast<int>(snap.points.size()); }
  const Point& p(int i) const { return snap.points[static_cast<std::size_t>(i)].point; }
  int level(int i) const { return snap.points[static_cast<std::size_t>(i)].level; }
  Color color(int i) const { return snap.points[static_cast<std::size_t>(i)].color; }

  bool on(int i, const Line& l) const {
    const auto u = static_cast<std::size_t>(i);
    const Interval v = l.a().bounds() * bx[u] + l.b().bounds() * by[u] + l.c().bounds();
    return v.contains_zero() && on_line(p(i), l);
  }
  bool on(int i, const Circle& c) const {
    const auto u = static_cast<std::size_t>(i);
    const Interval v = square(bx[u] - c.center().x.bounds()) + square(by[u] - c.center().y.bounds()) - c.r2().bounds();
    return v.contains_zero() && on_circle(p(i), c);
  }
  template <class C>
  std::vector<int> scan(const C& curve) const {
    std::vector<int> out;
    for (int i = 0; i < size(); ++i) {
      if (on(i, curve)) out.push_back(i);
    }
    return out;
  }

  const Snapshot& snap;
  std::vector<Interval> bx, by;
};

std::map<Line, Incidence> recompute_lines(const Points& pts) {
  std::map<Line, Incidence> lines;
  for (int i = 0; i < pts.size(); ++i) {
    for (int j = i + 1; j < pts.size(); ++j) {
      Incidence& inc = lines[line_through(pts.p(i), pts.p(j))];
      inc.birth = std::min(inc.birth, std::max(pts.level(i), pts.level(j)));
      inc.members.push_back(i);
      inc.members.push_back(j);
    }
  }
  for (auto& [l, inc] : lines) normalize(inc.members);
  // Perpendiculars: relax births until nothing improves.
  std::deque<std::map<Line, Incidence>::iterator> work;
  for (auto it = lines.begin(); it != lines.end(); ++it) work.push_back(it);
  while (!work.empty()) {
    auto it = work.front();
    work.pop_front();
    const std::vector<int> members = it->second.members;
    const int birth = it->second.birth;
    for (int x : members) {
      const int cand = std::max(birth, pts.level(x));
      Line perp = perpendicular_through(it->first, pts.p(x));
      auto found = lines.find(perp);
      if (found == lines.end()) {
        Incidence inc{cand, pts.scan(perp)};
        work.push_back(lines.emplace(std::move(perp), std::move(inc)).first);
      } else if (cand < found->second.birth) {
        found->second.birth = cand;
        work.push_back(found);
      }
    }
  }
  return lines;
}

std::map<Circle, Incidence> recompute_circles(const Points& pts) {
  std::map<Circle, Incidence> circles;
  const int n = pts.size();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      Incidence& inc = circles[thales_circle(pts.p(i), pts.p(j))];
      inc.birth = std::min(inc.birth, std::max(pts.level(i), pts.level(j)));
      inc.members.push_back(i);
      inc.members.push_back(j);
      for (int k = j + 1; k < n; ++k) {
        if (collinear(pts.p(i), pts.p(j), pts.p(k))) continue;
        Incidence& c = circles[circumcircle(pts.p(i), pts.p(j), pts.p(k))];
        c.birth = std::min(c.birth, std::max({pts.level(i), pts.level(j), pts.level(k)}));
        c.members.push_back(i);
        c.members.push_back(j);
        c.members.push_back(k);
      }
    }
  }
  for (auto& [c, inc] : circles) normalize(inc.members);
  return circles;
}

// Member pairs through the center: x + y = 2o.
std::vector<std::pair<int, int>> diametral_pairs(const Points& pts, const Circle& c, const std::vector<int>& members) {
  std::vector<std::pair<int, int>> out;
  const Constructible ox = c.center().x + c.center().x, oy = c.center().y + c.center().y;
  for (std::size_t a = 0; a < members.size(); ++a) {
    const auto u = static_cast<std::size_t>(members[a]);
    for (std::size_t b = a + 1; b < members.size(); ++b) {
      const auto v = static_cast<std::size_t>(members[b]);
      if (!(pts.bx[u] + pts.bx[v] - ox.bounds()).contains_zero() || !(pts.by[u] + pts.by[v] - oy.bounds()).contains_zero()) continue;
      if (pts.p(members[a]).x + pts.p(members[b]).x == ox && pts.p(members[a]).y + pts.p(members[b]).y == oy) {
        out.emplace_back(members[a], members[b]);
      }
    }
  }
  return out;
}

// Birth of a listed circle from a scan: the earliest level at which it holds
// three points, or a diametral pair.
Incidence scan_circle(const Points& pts, const Circle& c) {
  Incidence inc{INT_MAX, pts.scan(c)};
  if (inc.members.size() >= 3) {
    std::vector<int> levels;
    for (int m : inc.members) levels.push_back(pts.level(m));
    std::sort(levels.begin(), levels.end());
    inc.birth = levels[2];
  }
  for (auto [x, y] : diametral_pairs(pts, c, inc.members)) inc.birth = std::min(inc.birth, std::max(pts.level(x), pts.level(y)));
  return inc;
}

Palette expected_circle_palette(const Points& pts, const Incidence& inc) {
  std::vector<Color> a;
  for (int m : inc.members) {
    if (pts.level(m) < inc.birth) a.push_back(pts.color(m));
  }
  if (a.size() == 2 && a[0] == a[1]) return Palette::full();
  return Palette(a);
}

Palette expected_line_palette(const Points& pts, const Incidence& inc) {
  std::vector<Color> b, n;
  for (int m : inc.members) {
    if (pts.level(m) < inc.birth) b.push_back(pts.color(m));
    if (pts.level(m) == inc.birth) n.push_back(pts.color(m));
  }
  const bool case2 = b.size() == 1 && std::count(n.begin(), n.end(), b[0]) > 0;
  if (case2) {
    n.erase(std::remove(n.begin(), n.end(), b[0]), n.end());
    return Palette(n);
  }
  b.insert(b.end(), n.begin(), n.end());
  return Palette(b);
}

// Canonical normal of the direction perpendicular to l.
std::pair<Constructible, Constructible> perpendicular_normal(const Line& l) {
  if (l.b().sign() != 0) return {Constructible(1), -(l.a() / l.b())};
  return {Constructible(0), Constructible(1)};
}

struct LineAt {
  const Line* line;
  int birth;
  const Palette* palette;
};

struct Checker {
  const Snapshot& snap;
  const VerifyOptions& opts;
  const Points pts;
  std::vector<Violation> out;
  std::vector<int> older_curves;               // per point: curves born before it
  std::vector<std::vector<LineAt>> lines_at;   // per point: lines through it
  std::map<Line, Incidence> lines;

  Checker(const Snapshot& s, const VerifyOptions& o) : snap(s), opts(o), pts(s) {
    older_curves.assign(s.points.size(), 0);
    lines_at.resize(s.points.size());
  }

  void report(ViolationKind k, std::vector<int> points, std::vector<std::string> curves, std::vector<Color> colors,
              std::string detail, Severity sev = Severity::error) {
    out.push_back(Violation{k, sev, std::move(points), std::move(curves), std::move(colors), std::move(detail)});
  }

  void check_batches() {
    std::map<int, std::vector<int>> by_level;
    for (int i = 0; i < pts.size(); ++i) by_level[pts.level(i)].push_back(i);
    for (auto& [level, ids] : by_level) {
      std::sort(ids.begin(), ids.end(), [&](int a, int b) { return snap.points[a].batch < snap.points[b].batch; });
      std::vector<std::pair<Color, int>> colors;
      for (int id : ids) colors.emplace_back(pts.color(id), id);
      std::sort(colors.begin(), colors.end());
      for (std::size_t k = 1; k < colors.size(); ++k) {
        const auto& [c0, p0] = colors[k - 1];
        const auto& [c1, p1] = colors[k];
        if (c0 == c1) {
          report(ViolationKind::cond_6, {p0, p1}, {}, {c0, c1}, "level " + std::to_string(level) + ": batch not injective");
        } else if (c1 - c0 < 2) {
          report(ViolationKind::cond_6, {p0, p1}, {}, {c0, c1}, "level " + std::to_string(level) + ": gap below 2");
        }
      }
    }
  }

  void check_palette(const std::string& name, int birth, const std::optional<std::pair<int, Palette>>& engine,
                     const Palette& expected, const std::vector<int>& members) {
    if (!engine) {
      report(ViolationKind::palette_missing, members, {name}, {}, "no palette for a registered curve");
      return;
    }
    if (engine->first != birth) {
      report(ViolationKind::registry_mismatch, {}, {name}, {},
             "birth " + std::to_string(engine->first) + " recorded, " + std::to_string(birth) + " recomputed");
    }
    if (!(engine->second == expected)) {
      report(ViolationKind::palette_mismatch, {}, {name}, {},
             to_string(engine->second) + " recorded, " + to_string(expected) + " recomputed");
    }
  }

  void check_membership(const std::string& name, int birth, const Palette& phi, const std::vector<int>& members,
                        std::size_t limit) {
    std::map<Color, std::vector<int>> by_color;
    for (int m : members) {
      by_color[pts.color(m)].push_back(m);
      if (pts.level(m) > birth) {
        ++older_curves[static_cast<std::size_t>(m)];
        if (!phi.contains(pts.color(m))) {
          report(ViolationKind::cond_7, {m}, {name}, {pts.color(m)}, "color outside the palette of an older curve");
        }
      }
    }
    for (const auto& [color, ids] : by_color) {
      if (ids.size() > limit && !phi.contains(color)) {
        report(limit == 1 ? ViolationKind::cond_10 : ViolationKind::cond_9, ids, {name}, {color},
               std::to_string(ids.size()) + " points of an excluded color");
      }
    }
  }

  void check_lines() {
    std::map<Line, const SnapshotLine*> engine;
    for (const SnapshotLine& l : snap.lines) engine.emplace(l.line, &l);
    lines = recompute_lines(pts);
    for (const auto& [l, inc] : lines) {
      const std::string name = to_string(l);
      auto it = engine.find(l);
      std::optional<std::pair<int, Palette>> eng;
      if (it != engine.end()) eng.emplace(it->second->birth, it->second->palette);
      check_palette(name, inc.birth, eng, expected_line_palette(pts, inc), inc.members);
      if (!eng) continue;
      const Palette& phi = it->second->palette;
      check_membership(name, inc.birth, phi, inc.members, 1);
      for (int x : inc.members) {
        lines_at[static_cast<std::size_t>(x)].push_back(LineAt{&l, inc.birth, &phi});
        if (pts.level(x) <= inc.birth) continue;
        const Line perp = perpendicular_through(l, pts.p(x));
        for (int y = 0; y < pts.size(); ++y) {
          if (pts.level(y) >= pts.level(x) || pts.color(y) != pts.color(x) || !pts.on(y, perp)) continue;
          report(ViolationKind::cond_12, {x, y}, {name, to_string(perp)}, {pts.color(x)},
                 "older point on the perpendicular shares the color");
        }
      }
    }
    for (const SnapshotLine& l : snap.lines) {
      if (!lines.count(l.line)) report(ViolationKind::registry_mismatch, {}, {to_string(l.line)}, {}, "line is not derivable");
    }
  }

  void check_circle(const Circle& c, const Incidence& inc, const std::optional<std::pair<int, Palette>>& eng) {
    const std::string name = to_string(c);
    check_palette(name, inc.birth, eng, expected_circle_palette(pts, inc), inc.members);
    if (!eng) return;
    const Palette& phi = eng->second;
    check_membership(name, inc.birth, phi, inc.members, 2);
    for (auto [x, y] : diametral_pairs(pts, c, inc.members)) {
      if (pts.color(x) == pts.color(y) && phi.contains(pts.color(x))) {
        report(ViolationKind::cond_8, {x, y}, {name}, {pts.color(x)}, "antipodal pair colored inside the palette");
      }
    }
  }

  void check_circles() {
    std::map<Circle, const SnapshotCircle*> listed;
    for (const SnapshotCircle& c : snap.circles) listed.emplace(c.circle, &c);
    auto engine = [&](const Circle& c) -> std::optional<std::pair<int, Palette>> {
      if (auto it = listed.find(c); it != listed.end()) return std::make_pair(it->second->birth, it->second->palette);
      if (snap.circle_lookup) return snap.circle_lookup(c);
      return std::nullopt;
    };
    if (opts.all_circles) {
      const std::map<Circle, Incidence> circles = recompute_circles(pts);
      for (const auto& [c, inc] : circles) check_circle(c, inc, engine(c));
      for (const SnapshotCircle& c : snap.circles) {
        if (!circles.count(c.circle)) report(ViolationKind::registry_mismatch, {}, {to_string(c.circle)}, {}, "circle is not derivable");
      }
      return;
    }
    for (const SnapshotCircle& c : snap.circles) {
      const Incidence inc = scan_circle(pts, c.circle);
      if (inc.birth == INT_MAX) {
        report(ViolationKind::registry_mismatch, {}, {to_string(c.circle)}, {}, "circle is not derivable");
        continue;
      }
      check_circle(c.circle, inc, engine(c.circle));
    }
    const long n = pts.size();
    if (opts.sample_circles == 0 || n < 3) return;
    SplitMix64 rng(opts.sample_seed);
    std::set<Circle> sampled;
    for (std::size_t t = 0; t < opts.sample_circles + opts.sample_circles / 4; ++t) {
      const int i = static_cast<int>(rng.range(0, n - 1));
      const int j = static_cast<int>(rng.range(0, n - 1));
      const int k = static_cast<int>(rng.range(0, n - 1));
      if (i == j || j == k || i == k) continue;
      Circle c = t < opts.sample_circles ? (collinear(pts.p(i), pts.p(j), pts.p(k)) ? thales_circle(pts.p(i), pts.p(j))
                                                                                    : circumcircle(pts.p(i), pts.p(j), pts.p(k)))
                                         : thales_circle(pts.p(i), pts.p(j));
      if (listed.count(c) || !sampled.insert(c).second) continue;
      check_circle(c, scan_circle(pts, c), engine(c));
    }
  }

  void check_perpendicular_pairs() {
    for (int x = 0; x < pts.size(); ++x) {
      auto& at = lines_at[static_cast<std::size_t>(x)];
      std::map<std::pair<Constructible, Constructible>, std::vector<std::size_t>> by_normal;
      for (std::size_t k = 0; k < at.size(); ++k) by_normal[{at[k].line->a(), at[k].line->b()}].push_back(k);
      const Color i = pts.color(x);
      for (std::size_t k = 0; k < at.size(); ++k) {
        auto it = by_normal.find(perpendicular_normal(*at[k].line));
        if (it == by_normal.end()) continue;
        for (std::size_t k2 : it->second) {
          if (k2 < k) continue;
          const LineAt& l = at[k];
          const LineAt& m = at[k2];
          if (!l.palette->contains(i) || !m.palette->contains(i)) continue;
          const bool forced = pts.level(x) > l.birth && pts.level(x) > m.birth;
          std::vector<std::string> names{to_string(*l.line), to_string(*m.line)};
          if (forced && !opts.strict) {
            report(ViolationKind::claim_2_strict, {x}, std::move(names), {i},
                   "COND_11 fails at a point younger than both lines", Severity::warning);
          } else {
            report(ViolationKind::cond_11, {x}, std::move(names), {i}, "color in both perpendicular palettes");
          }
        }
      }
    }
  }

  void check_claim_2() {
    for (int x = 0; x < pts.size(); ++x) {
      const int n = older_curves[static_cast<std::size_t>(x)];
      if (n < 2) continue;
      report(ViolationKind::claim_2_strict, {x}, {}, {pts.color(x)}, std::to_string(n) + " older curves through the point",
             opts.strict ? Severity::error : Severity::warning);
    }
  }
};

}  // namespace

std::string to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::mono_right_triangle: return "MONO_RIGHT_TRIANGLE";
    case ViolationKind::cond_6: return "COND_6";
    case ViolationKind::cond_7: return "COND_7";
    case ViolationKind::cond_8: return "COND_8";
    case ViolationKind::cond_9: return "COND_9";
    case ViolationKind::cond_10: return "COND_10";
    case ViolationKind::cond_11: return "COND_11";
    case ViolationKind::cond_12: return "COND_12";
    case ViolationKind::claim_2_strict: return "CLAIM_2_STRICT";
    case ViolationKind::palette_missing: return "PALETTE_MISSING";
    case ViolationKind::palette_mismatch: return "PALETTE_MISMATCH";
    case ViolationKind::registry_mismatch: return "REGISTRY_MISMATCH";
  }
  return "?";
}

std::string to_string(Severity s) { return s == Severity::error ? "error" : "warning"; }

std::optional<Violation> find_mono_right_triangle(const std::vector<Point>& points, const std::vector<Color>& colors,
                                                  unsigned workers) {
  std::map<Color, std::vector<int>> buckets;
  for (std::size_t i = 0; i < points.size() && i < colors.size(); ++i) {
    if (colors[i] >= 0) buckets[colors[i]].push_back(static_cast<int>(i));
  }
  std::vector<Interval> bx, by;
  for (const Point& p : points) {
    bx.push_back(p.x.bounds());
    by.push_back(p.y.bounds());
  }
  auto right_at = [&](int a, int v, int c) {
    const auto ua = static_cast<std::size_t>(a), uv = static_cast<std::size_t>(v), uc = static_cast<std::size_t>(c);
    if (!((bx[ua] - bx[uv]) * (bx[uc] - bx[uv]) + (by[ua] - by[uv]) * (by[uc] - by[uv])).contains_zero()) return false;
    if (points[ua] == points[uv] || points[uc] == points[uv] || points[ua] == points[uc]) return false;
    return is_right_angle(points[ua], points[uv], points[uc]);
  };

  // One task per (bucket, first index); a task reports its lowest witness.
  struct Task {
    const std::vector<int>* ids;
    std::size_t a;
  };
  std::vector<Task> tasks;
  for (const auto& [color, ids] : buckets) {
    for (std::size_t a = 0; a + 2 < ids.size(); ++a) tasks.push_back({&ids, a});
  }
  using Witness = std::array<int, 4>;  // i, j, k, vertex slot
  std::optional<Witness> best;
  std::mutex mu;
  std::atomic<int> best_i{INT_MAX};
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t t; (t = next.fetch_add(1)) < tasks.size();) {
      const auto& ids = *tasks[t].ids;
      const int i = ids[tasks[t].a];
      if (i > best_i.load()) continue;
      std::optional<Witness> found;
      for (std::size_t b = tasks[t].a + 1; b < ids.size() && !found; ++b) {
        for (std::size_t c = b + 1; c < ids.size() && !found; ++c) {
          const int j = ids[b], k = ids[c];
          if (right_at(j, i, k)) found = Witness{i, j, k, 0};
          else if (right_at(i, j, k)) found = Witness{i, j, k, 1};
          else if (right_at(i, k, j)) found = Witness{i, j, k, 2};
        }
      }
      if (!found) continue;
      std::lock_guard<std::mutex> lock(mu);
      if (!best || *found < *best) best = found;
      best_i = std::min(best_i.load(), i);
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(tasks.size())));
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < n; ++w) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();

  if (!best) return std::nullopt;
  const auto [i, j, k, slot] = *best;
  std::vector<int> pts;
  if (slot == 0) pts = {j, i, k};
  if (slot == 1) pts = {i, j, k};
  if (slot == 2) pts = {i, k, j};
  const Color c = colors[static_cast<std::size_t>(i)];
  return Violation{ViolationKind::mono_right_triangle, Severity::error, pts, {}, {c, c, c}, "right angle at the middle point"};
}

std::vector<Violation> check_conditions(const Snapshot& snap, const VerifyOptions& opts) {
  Checker ck(snap, opts);
  ck.check_batches();
  ck.check_lines();
  ck.check_circles();
  ck.check_perpendicular_pairs();
  ck.check_claim_2();
  return std::move(ck.out);
}

std::size_t count_errors(const std::vector<Violation>& v) {
  return static_cast<std::size_t>(std::count_if(v.begin(), v.end(), [](const Violation& x) { return x.severity == Severity::error; }));
}

std::map<std::string, std::size_t> tally(const std::vector<Violation>& v) {
  std::map<std::string, std::size_t> out;
  for (const Violation& x : v) ++out[to_string(x.kind) + (x.severity == Severity::warning ? " (warning)" : "")];
  return out;
}

nlohmann::json to_json(const Violation& v, const Snapshot& snap) {
  nlohmann::json pts = nlohmann::json::array();
  for (int id : v.points) {
    nlohmann::json p{{"index", id}};
    if (id >= 0 && static_cast<std::size_t>(id) < snap.points.size()) {
      const SnapshotPoint& sp = snap.points[static_cast<std::size_t>(id)];
      p["x"] = to_json(sp.point.x);
      p["y"] = to_json(sp.point.y);
      p["text"] = to_string(sp.point);
      p["level"] = sp.level;
      p["color"] = sp.color;
    }
    pts.push_back(std::move(p));
  }
  return nlohmann::json{{"kind", to_string(v.kind)}, {"severity", to_string(v.severity)}, {"points", pts},
                        {"curves", v.curves},       {"colors", v.colors},                 {"detail", v.detail}};
}

}  // namespace thales
