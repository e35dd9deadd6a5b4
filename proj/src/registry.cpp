#include "thales/registry.hpp"

#include <algorithm>
#include <climits>
#include <set>

#include "thales/errors.hpp"
#include "thales/rng.hpp"

namespace thales {
namespace {

struct CircleBox {
  Interval cx, cy, r2;
};

CircleBox box(const Circle& c) { return {c.center().x.bounds(), c.center().y.bounds(), c.r2().bounds()}; }

bool maybe_on(const PointRecord& p, const CircleBox& b) {
  return (square(p.bx - b.cx) + square(p.by - b.cy) - b.r2).contains_zero();
}

const std::vector<int> kNoIds;

}  // namespace

std::string point_ref(int id) { return "P" + std::to_string(id); }
std::string line_ref(int id) { return "L" + std::to_string(id); }
std::string circle_ref(int id) { return "C" + std::to_string(id); }
int rule_tag(Rule r) { return static_cast<int>(r); }

LevelRegistry::LevelRegistry(ClosureConfig cfg) : cfg_(cfg) {}

int LevelRegistry::add_point(Point p, int level, Rule rule, std::vector<std::string> parents) {
  if (level < 1) throw InternalError("point level must be >= 1");
  if (level < top_level()) throw InternalError("points must be added level by level");
  if (level <= curve_level_) throw InternalError("point added below the generated curve level");
  if (point_index_.count(p)) throw InputError("duplicate point " + to_string(p));
  while (top_level() < level) level_end_.push_back(static_cast<int>(points_.size()));
  const int id = static_cast<int>(points_.size());
  PointRecord rec;
  rec.bx = p.x.bounds();
  rec.by = p.y.bounds();
  rec.point = std::move(p);
  rec.level = level;
  rec.batch = id - level_end_[static_cast<std::size_t>(level - 1)];
  rec.rule = rule;
  rec.parents = std::move(parents);
  point_index_.emplace(rec.point, id);
  points_.push_back(std::move(rec));
  level_end_[static_cast<std::size_t>(level)] = id + 1;
  return id;
}

std::optional<int> LevelRegistry::find_point(const Point& p) const {
  auto it = point_index_.find(p);
  if (it == point_index_.end()) return std::nullopt;
  return it->second;
}

int LevelRegistry::level_begin(int level) const { return level_end(level - 1); }

int LevelRegistry::level_end(int level) const {
  if (level <= 0) return 0;
  if (level >= top_level()) return point_count();
  return level_end_[static_cast<std::size_t>(level)];
}

std::optional<int> LevelRegistry::find_line(const Line& l) const {
  auto it = line_index_.find(l);
  if (it == line_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> LevelRegistry::find_circle(const Circle& c) const {
  auto it = circle_index_.find(c);
  if (it == circle_index_.end()) return std::nullopt;
  return it->second;
}

const std::vector<int>& LevelRegistry::circles_of_level(int level) const {
  if (level < 0 || static_cast<std::size_t>(level) >= circles_by_level_.size()) return kNoIds;
  return circles_by_level_[static_cast<std::size_t>(level)];
}

int LevelRegistry::add_line(LineRecord rec) {
  const int id = static_cast<int>(lines_.size());
  line_index_.emplace(rec.line, id);
  lines_.push_back(std::move(rec));
  return id;
}

void LevelRegistry::add_member(int line_id, int point_id) {
  auto& m = lines_[static_cast<std::size_t>(line_id)].members;
  auto it = std::lower_bound(m.begin(), m.end(), point_id);
  if (it == m.end() || *it != point_id) m.insert(it, point_id);
}

std::vector<int> LevelRegistry::generate_curves(int level) {
  std::vector<int> fresh;
  for (int b = curve_level_ + 1; b <= level; ++b) {
    generate_level(b, fresh);
    curve_level_ = b;
    if (cfg_.circle_mode == CircleMode::eager) materialize_circles(b);
  }
  return fresh;
}

void LevelRegistry::generate_level(int b, std::vector<int>& fresh) {
  const int begin = level_begin(b);
  const int end = level_end(b);
  for (int i = 0; i < end; ++i) {
    for (int j = std::max(i + 1, begin); j < end; ++j) {
      Line l = line_through(points_[static_cast<std::size_t>(i)].point, points_[static_cast<std::size_t>(j)].point);
      if (auto id = find_line(l)) {
        add_member(*id, i);
        add_member(*id, j);
        continue;
      }
      LineRecord rec{std::move(l), b, CurveKey{b, 0, {i, j, -1}, 0}, Rule::connect, {point_ref(i), point_ref(j)}, {i, j}};
      fresh.push_back(add_line(std::move(rec)));
    }
  }
  // A perpendicular created here carries exactly one registered point (any
  // second one would have made it a connecting line), so one pass closes it.
  for (std::size_t id = 0; id < lines_.size(); ++id) {
    if (lines_[id].birth > b) continue;
    const bool new_line = lines_[id].birth == b;
    const std::vector<int> members = lines_[id].members;
    for (int m : members) {
      const int lm = level_of(m);
      if (lm > b || (!new_line && lm != b)) continue;
      Line perp = perpendicular_through(lines_[id].line, points_[static_cast<std::size_t>(m)].point);
      if (find_line(perp)) continue;
      const int lid = static_cast<int>(id);
      LineRecord rec{std::move(perp), b, CurveKey{b, 2, {lid, m, -1}, 0}, Rule::perpendicular,
                     {line_ref(lid), point_ref(m)}, {m}};
      fresh.push_back(add_line(std::move(rec)));
    }
  }
}

std::vector<int> LevelRegistry::scan_members(const Circle& c, int begin, int end) const {
  const CircleBox b = box(c);
  std::vector<int> out;
  for (int id = begin; id < end; ++id) {
    const PointRecord& p = points_[static_cast<std::size_t>(id)];
    if (maybe_on(p, b) && on_circle(p.point, c)) out.push_back(id);
  }
  return out;
}

std::vector<std::pair<int, int>> LevelRegistry::diameters(const Circle& c, const std::vector<int>& members) const {
  // A member pair is a diameter iff its midpoint is the center.
  std::vector<std::pair<int, int>> out;
  const Point& o = c.center();
  const Interval ox = o.x.bounds() + o.x.bounds(), oy = o.y.bounds() + o.y.bounds();
  for (std::size_t a = 0; a < members.size(); ++a) {
    const PointRecord& p = points_[static_cast<std::size_t>(members[a])];
    for (std::size_t b = a + 1; b < members.size(); ++b) {
      const PointRecord& q = points_[static_cast<std::size_t>(members[b])];
      if (!(p.bx + q.bx - ox).contains_zero() || !(p.by + q.by - oy).contains_zero()) continue;
      if (p.point.x + q.point.x == o.x + o.x && p.point.y + q.point.y == o.y + o.y) out.emplace_back(members[a], members[b]);
    }
  }
  return out;
}

std::optional<CircleBirth> LevelRegistry::birth_from(const std::vector<int>& members,
                                                     const std::vector<std::pair<int, int>>& antipodal) const {
  int birth = INT_MAX;
  if (members.size() >= 3) birth = level_of(members[2]);
  for (auto [a, b] : antipodal) birth = std::min(birth, std::max(level_of(a), level_of(b)));
  if (birth == INT_MAX) return std::nullopt;

  CircleBirth out;
  out.level = birth;
  std::optional<std::pair<int, int>> first;
  for (auto [a, b] : antipodal) {
    std::pair<int, int> p{std::min(a, b), std::max(a, b)};
    if (std::max(level_of(a), level_of(b)) == birth && (!first || p < *first)) first = p;
  }
  if (first) {
    out.key = CurveKey{birth, 0, {first->first, first->second, -1}, 1};
  } else {
    out.key = CurveKey{birth, 1, {members[0], members[1], members[2]}, 1};
  }
  for (int m : members) {
    if (level_of(m) < birth) out.early.push_back(m);
  }
  return out;
}

bool LevelRegistry::advance(Cursor& cur, int level) const {
  const int begin = level_begin(level);
  const int end = level_end(level);
  if (cur.phase == 0) {
    if (!cur.started) {
      cur.started = true;
      cur.i = 0;
      cur.j = std::max(1, begin);
    } else {
      ++cur.j;
    }
    while (cur.i < end) {
      if (cur.j < end) return true;
      ++cur.i;
      cur.j = std::max(cur.i + 1, begin);
    }
    cur.phase = 1;
    cur.started = false;
  }
  if (!cur.started) {
    cur.started = true;
    cur.i = 0;
    cur.j = 1;
    cur.k = std::max(2, begin);
  } else {
    ++cur.k;
  }
  while (cur.i < end) {
    while (cur.j < end) {
      if (cur.k < end) return true;
      ++cur.j;
      cur.k = std::max(cur.j + 1, begin);
    }
    ++cur.i;
    cur.j = cur.i + 1;
    cur.k = std::max(cur.j + 1, begin);
  }
  return false;
}

bool LevelRegistry::materialize_next_circle(int level) {
  if (level < 1 || level > curve_level_) return false;
  const auto lv = static_cast<std::size_t>(level);
  if (cursors_.size() <= lv) cursors_.resize(lv + 1);
  if (circles_by_level_.size() <= lv) circles_by_level_.resize(lv + 1);
  const int end = level_end(level);
  while (!cursors_[lv].done) {
    Cursor& cur = cursors_[lv];
    if (!advance(cur, level)) {
      cur.done = true;
      break;
    }
    const int i = cur.i, j = cur.j, k = cur.k;
    const Point& pi = points_[static_cast<std::size_t>(i)].point;
    const Point& pj = points_[static_cast<std::size_t>(j)].point;
    std::optional<Circle> c;
    CurveKey want;
    Rule rule;
    std::vector<std::string> parents;
    if (cur.phase == 0) {
      c = thales_circle(pi, pj);
      want = CurveKey{level, 0, {i, j, -1}, 1};
      rule = Rule::connect;
      parents = {point_ref(i), point_ref(j)};
    } else {
      const Point& pk = points_[static_cast<std::size_t>(k)].point;
      if (collinear(pi, pj, pk)) continue;
      c = circumcircle(pi, pj, pk);
      // Not the first generator if another registered point precedes k.
      const CircleBox b = box(*c);
      bool earlier = false;
      for (int id = 0; id < k && !earlier; ++id) {
        if (id == i || id == j) continue;
        const PointRecord& p = points_[static_cast<std::size_t>(id)];
        earlier = maybe_on(p, b) && on_circle(p.point, *c);
      }
      if (earlier) continue;
      want = CurveKey{level, 1, {i, j, k}, 1};
      rule = Rule::circumscribe;
      parents = {point_ref(i), point_ref(j), point_ref(k)};
    }
    std::vector<int> members = scan_members(*c, 0, end);
    auto birth = birth_from(members, diameters(*c, members));
    if (!birth || birth->key != want) continue;
    if (circle_index_.count(*c)) throw InternalError("circle materialized twice: " + to_string(*c));
    const int id = static_cast<int>(circles_.size());
    circle_index_.emplace(*c, id);
    circles_.push_back(CircleRecord{std::move(*c), level, want, rule, std::move(parents), std::move(members), end});
    circles_by_level_[lv].push_back(id);
    return true;
  }
  return false;
}

void LevelRegistry::materialize_circles(int level) {
  while (materialize_next_circle(level)) {
  }
}

bool LevelRegistry::circles_complete(int level) const {
  const auto lv = static_cast<std::size_t>(level);
  return lv < cursors_.size() && cursors_[lv].done;
}

void LevelRegistry::refresh_members(int circle_id, int end) {
  CircleRecord& rec = circles_.at(static_cast<std::size_t>(circle_id));
  if (end <= rec.scanned) return;
  const std::vector<int> more = scan_members(rec.circle, rec.scanned, end);
  rec.members.insert(rec.members.end(), more.begin(), more.end());
  rec.scanned = end;
}

std::vector<int> LevelRegistry::derive_points(int level, std::size_t budget) {
  if (level != curve_level_) throw InternalError("derive_points needs the curves of level " + std::to_string(level));
  struct Candidate {
    Point p;
    Rule rule;
    std::vector<std::string> parents;
  };
  std::vector<Candidate> found;
  std::set<Point> seen;
  auto offer = [&](const Point& p, Rule rule, std::vector<std::string> parents) {
    if (found.size() >= budget) return true;
    if (find_point(p) || seen.count(p)) return false;
    seen.insert(p);
    found.push_back({p, rule, std::move(parents)});
    return found.size() >= budget;
  };

  const int end = level_end(level);
  bool full = budget == 0;
  for (int b = 1; b <= level && !full; ++b) {
    for (std::size_t idx = 0; !full; ++idx) {
      if (idx >= circles_of_level(b).size() && !materialize_next_circle(b)) break;
      const int cid = circles_by_level_[static_cast<std::size_t>(b)][idx];
      refresh_members(cid, end);
      const CircleRecord& rec = circles_[static_cast<std::size_t>(cid)];
      const std::vector<int> members = rec.members;
      for (int m : members) {
        if (m >= end) continue;
        const Circle& c = circles_[static_cast<std::size_t>(cid)].circle;
        if (offer(antipode(points_[static_cast<std::size_t>(m)].point, c), Rule::antipode, {circle_ref(cid), point_ref(m)})) {
          full = true;
          break;
        }
      }
    }
  }

  if (!full) {
    for (int b = 1; b <= level; ++b) materialize_circles(b);
    struct Entry {
      CurveKey key;
      int id;
    };
    std::vector<Entry> order;
    for (std::size_t i = 0; i < lines_.size(); ++i) {
      if (lines_[i].birth <= level) order.push_back({lines_[i].key, static_cast<int>(i)});
    }
    for (std::size_t i = 0; i < circles_.size(); ++i) {
      if (circles_[i].birth <= level) order.push_back({circles_[i].key, static_cast<int>(i)});
    }
    std::sort(order.begin(), order.end(), [](const Entry& a, const Entry& b) { return a.key < b.key; });
    auto curve = [&](const Entry& e) -> Curve {
      if (e.key.kind == 0) return lines_[static_cast<std::size_t>(e.id)].line;
      return circles_[static_cast<std::size_t>(e.id)].circle;
    };
    auto ref = [](const Entry& e) { return e.key.kind == 0 ? line_ref(e.id) : circle_ref(e.id); };
    for (std::size_t k1 = 1; k1 < order.size() && !full; ++k1) {
      const Curve e1 = curve(order[k1]);
      for (std::size_t k0 = 0; k0 < k1 && !full; ++k0) {
        for (const Point& p : intersect(curve(order[k0]), e1)) {
          if (offer(p, Rule::meet, {ref(order[k0]), ref(order[k1])})) {
            full = true;
            break;
          }
        }
      }
    }
  }

  if (cfg_.seed != 0 && found.size() > 1) {
    SplitMix64 rng(cfg_.seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(level));
    for (std::size_t i = found.size() - 1; i > 0; --i) {
      std::swap(found[i], found[static_cast<std::size_t>(rng.next() % (i + 1))]);
    }
  }
  std::vector<int> ids;
  ids.reserve(found.size());
  for (Candidate& c : found) ids.push_back(add_point(std::move(c.p), level + 1, c.rule, std::move(c.parents)));
  return ids;
}

std::vector<int> LevelRegistry::lines_through(const Point& x, int bound) const {
  std::vector<int> ids;
  const int end = level_end(bound);
  for (int w = 0; w < end; ++w) {
    const Point& p = points_[static_cast<std::size_t>(w)].point;
    if (p == x) continue;
    auto id = find_line(line_through(x, p));
    if (id && lines_[static_cast<std::size_t>(*id)].birth <= bound) ids.push_back(*id);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

// Circles through x are grouped by pivot: translate x to the origin; the
// circles through 0 and d_i form a pencil parametrized by
//   t = (|d_j|^2 - d_i.d_j) / (2 cross(d_i, d_j)),
// so points j sharing t with pivot i lie on one circle with x and p_i.
// Double intervals sort the keys; exact arithmetic decides ties.
std::vector<CircleThrough> LevelRegistry::circles_through(const Point& x, int bound) const {
  const int m = level_end(bound);
  const auto um = static_cast<std::size_t>(m);
  std::vector<Interval> dx(um), dy(um), s(um);
  std::vector<char> excluded(um, 0);
  std::vector<std::optional<Point>> exact(um);
  const Interval xb = x.x.bounds(), yb = x.y.bounds();
  for (std::size_t j = 0; j < um; ++j) {
    dx[j] = points_[j].bx - xb;
    dy[j] = points_[j].by - yb;
    s[j] = square(dx[j]) + square(dy[j]);
    if (dx[j].contains_zero() && dy[j].contains_zero() && points_[j].point == x) excluded[j] = 1;
  }
  auto d = [&](int j) -> const Point& {
    auto& slot = exact[static_cast<std::size_t>(j)];
    if (!slot) slot = points_[static_cast<std::size_t>(j)].point - x;
    return *slot;
  };
  auto right_angle = [&](int a, int b) {
    const auto ua = static_cast<std::size_t>(a), ub = static_cast<std::size_t>(b);
    if (!(dx[ua] * dx[ub] + dy[ua] * dy[ub]).contains_zero()) return false;
    return dot(d(a), d(b)).sign() == 0;
  };

  std::vector<CircleThrough> out;
  auto emit = [&](std::vector<int> members) {
    std::vector<std::pair<int, int>> antipodal;
    for (std::size_t p = 0; p < members.size(); ++p) {
      for (std::size_t q = p + 1; q < members.size(); ++q) {
        if (right_angle(members[p], members[q])) antipodal.emplace_back(members[p], members[q]);
      }
    }
    auto birth = birth_from(members, antipodal);
    if (!birth) return;
    out.push_back(CircleThrough{std::move(members), std::move(antipodal), std::move(*birth)});
  };

  std::vector<char> done(um * um, 0);
  struct Entry {
    Interval t;
    int j;
  };
  std::vector<Entry> entries;
  for (int i = 0; i < m; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    if (excluded[ui]) continue;
    entries.clear();
    for (int j = i + 1; j < m; ++j) {
      const auto uj = static_cast<std::size_t>(j);
      if (excluded[uj] || done[ui * um + uj]) continue;
      const Interval cr = dx[ui] * dy[uj] - dy[ui] * dx[uj];
      Interval t;
      if (cr.contains_zero()) {
        const Constructible c = cross(d(i), d(j));
        if (c.sign() == 0) continue;
        t = ((dot(d(j), d(j)) - dot(d(i), d(j))) / (c + c)).bounds();
      } else {
        t = (s[uj] - (dx[ui] * dx[uj] + dy[ui] * dy[uj])) / (cr + cr);
      }
      entries.push_back({t, j});
    }
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.t.lo < b.t.lo; });

    std::size_t a = 0;
    while (a < entries.size()) {
      std::size_t b = a + 1;
      double hi = entries[a].t.hi;
      while (b < entries.size() && entries[b].t.lo <= hi) hi = std::max(hi, entries[b++].t.hi);
      if (b - a == 1) {
        if (right_angle(i, entries[a].j)) emit({i, entries[a].j});
        a = b;
        continue;
      }
      std::vector<std::pair<Constructible, int>> keys;
      for (std::size_t e = a; e < b; ++e) {
        const int j = entries[e].j;
        keys.emplace_back((dot(d(j), d(j)) - dot(d(i), d(j))) / (cross(d(i), d(j)) * Constructible(2)), j);
      }
      std::sort(keys.begin(), keys.end(), [](const auto& u, const auto& v) {
        const int c = compare(u.first, v.first);
        return c != 0 ? c < 0 : u.second < v.second;
      });
      std::size_t g = 0;
      while (g < keys.size()) {
        std::size_t h = g + 1;
        while (h < keys.size() && compare(keys[h].first, keys[g].first) == 0) ++h;
        if (h - g == 1) {
          if (right_angle(i, keys[g].second)) emit({i, keys[g].second});
        } else {
          std::vector<int> members{i};
          for (std::size_t e = g; e < h; ++e) members.push_back(keys[e].second);
          std::sort(members.begin(), members.end());
          for (std::size_t p = 1; p < members.size(); ++p) {
            for (std::size_t q = p + 1; q < members.size(); ++q) {
              done[static_cast<std::size_t>(members[p]) * um + static_cast<std::size_t>(members[q])] = 1;
            }
          }
          emit(std::move(members));
        }
        g = h;
      }
      a = b;
    }
  }
  std::sort(out.begin(), out.end(), [](const CircleThrough& u, const CircleThrough& v) { return u.birth.key < v.birth.key; });
  return out;
}

std::vector<int> LevelRegistry::members_of(const Circle& c) const { return scan_members(c, 0, point_count()); }

std::optional<CircleBirth> LevelRegistry::circle_birth(const Circle& c) const {
  const std::vector<int> members = members_of(c);
  return birth_from(members, diameters(c, members));
}

LevelRegistry register_seed(const std::vector<Point>& seeds, ClosureConfig cfg) {
  LevelRegistry reg(cfg);
  for (const Point& p : seeds) reg.add_point(p, 1);
  return reg;
}

std::vector<int> generate_curves(LevelRegistry& reg, int level) { return reg.generate_curves(level); }

std::vector<int> derive_points(LevelRegistry& reg, int level, std::size_t budget) {
  return reg.derive_points(level, budget);
}

std::vector<Curve> prior_curves_through(const LevelRegistry& reg, int point_id) {
  const PointRecord& rec = reg.point(point_id);
  const int bound = rec.level - 1;
  std::vector<std::pair<CurveKey, Curve>> found;
  for (int id : reg.lines_through(rec.point, bound)) {
    const LineRecord& l = reg.lines()[static_cast<std::size_t>(id)];
    found.emplace_back(l.key, l.line);
  }
  for (const CircleThrough& c : reg.circles_through(rec.point, bound)) {
    const Point& a = reg.point(c.members[0]).point;
    const Point& b = reg.point(c.members[1]).point;
    found.emplace_back(c.birth.key, circumcircle(rec.point, a, b));
  }
  std::sort(found.begin(), found.end(), [](const auto& u, const auto& v) { return u.first < v.first; });
  std::vector<Curve> out;
  for (auto& f : found) out.push_back(std::move(f.second));
  return out;
}

}  // namespace thales
