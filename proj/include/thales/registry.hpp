#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "thales/geometry.hpp"

namespace thales {

/// Provenance rule. 0 marks a seed; 1..5 are the closure rules:
/// connecting line / Thales circle, circumcircle, intersection, antipode,
/// perpendicular.
enum class Rule : int { seed = 0, connect = 1, circumscribe = 2, meet = 3, antipode = 4, perpendicular = 5 };

/// lazy: circles are registered implicitly and materialized on demand;
/// eager: every circle is materialized when its level's curves are generated.
/// Both yield the same registry order, births and colors.
enum class CircleMode { lazy, eager };

struct ClosureConfig {
  int max_level = 3;
  std::size_t point_budget_per_level = 200;
  /// 0 keeps derived batches in derivation order; anything else shuffles the
  /// enumeration {x_j} of each derived batch with this seed.
  std::uint64_t seed = 0;
  CircleMode circle_mode = CircleMode::lazy;
};

/// Position in registry order. Within a level: pair generators (the pair's
/// line before its Thales circle), then triples, then perpendiculars.
struct CurveKey {
  int level = 0;
  int phase = 0;
  std::array<int, 3> tuple{-1, -1, -1};
  int kind = 0;  // 0 line, 1 circle

  friend auto operator<=>(const CurveKey&, const CurveKey&) = default;
};

struct PointRecord {
  Point point;
  int level = 0;
  int batch = 0;
  Rule rule = Rule::seed;
  std::vector<std::string> parents;
  Interval bx, by;
};

struct LineRecord {
  Line line;
  int birth = 0;
  CurveKey key;
  Rule rule = Rule::connect;
  std::vector<std::string> parents;
  std::vector<int> members;  // registered points on the line, ascending
};

struct CircleRecord {
  Circle circle;
  int birth = 0;
  CurveKey key;
  Rule rule = Rule::connect;
  std::vector<std::string> parents;
  std::vector<int> members;  // points with id < scanned lying on the circle
  int scanned = 0;
};

/// Birth data of a circle computed from its registered points.
struct CircleBirth {
  int level = 0;
  CurveKey key;
  std::vector<int> early;  // members born strictly before the circle
};

/// Circle through a query point, described by the registered points it
/// carries up to the query bound.
struct CircleThrough {
  std::vector<int> members;
  std::vector<std::pair<int, int>> antipodal;  // member pairs forming a diameter
  CircleBirth birth;
};

/// Birth-level bookkeeping for points and curves.
///
/// Points are stored level-major: ids of level n form a contiguous range,
/// and within a level the id order is the batch enumeration. Lines are
/// materialized eagerly with complete member lists. A circle is registered
/// at level n as soon as it carries three points of level <= n or a
/// diametral pair of such points; circles are materialized lazily in
/// registry order (see materialize_next_circle), and every query about
/// them is answered from the point set alone.
class LevelRegistry {
 public:
  explicit LevelRegistry(ClosureConfig cfg = {});

  const ClosureConfig& config() const { return cfg_; }

  /// Throws InputError on a duplicate point and InternalError when the
  /// level would break level-major order or precedes generated curves.
  int add_point(Point p, int level, Rule rule = Rule::seed, std::vector<std::string> parents = {});
  std::optional<int> find_point(const Point& p) const;
  int point_count() const { return static_cast<int>(points_.size()); }
  const PointRecord& point(int id) const { return points_.at(static_cast<std::size_t>(id)); }
  const std::vector<PointRecord>& points() const { return points_; }
  int level_of(int id) const { return points_[static_cast<std::size_t>(id)].level; }

  /// Highest level holding points (0 when empty).
  int top_level() const { return static_cast<int>(level_end_.size()) - 1; }
  int level_begin(int level) const;
  /// Number of points of level <= `level`.
  int level_end(int level) const;
  /// Highest level whose curves have been generated.
  int curve_level() const { return curve_level_; }

  const std::vector<LineRecord>& lines() const { return lines_; }
  std::optional<int> find_line(const Line& l) const;

  const std::vector<CircleRecord>& circles() const { return circles_; }
  std::optional<int> find_circle(const Circle& c) const;
  /// Materialized circle ids of one birth level, in registry order.
  const std::vector<int>& circles_of_level(int level) const;

  /// Registers every connecting line and perpendicular born at levels
  /// curve_level()+1 .. level and returns the new line ids. In eager mode
  /// it also materializes the circles of those levels.
  std::vector<int> generate_curves(int level);

  /// Materializes the next circle born at `level` in registry order; false
  /// once all of them are materialized.
  bool materialize_next_circle(int level);
  void materialize_circles(int level);
  bool circles_complete(int level) const;
  /// Extends a materialized circle's member scan to points with id < end.
  void refresh_members(int circle_id, int end);

  /// Derives up to `budget` new points at level+1: antipodes on circles in
  /// registry order first, then intersections of curve pairs in registry
  /// order. Returns the new ids.
  std::vector<int> derive_points(int level, std::size_t budget);

  /// Lines of birth <= bound through x, ascending id.
  std::vector<int> lines_through(const Point& x, int bound) const;
  /// Circles of birth <= bound through x, with their points of level <= bound.
  std::vector<CircleThrough> circles_through(const Point& x, int bound) const;

  /// Registered points on c (all levels), ascending.
  std::vector<int> members_of(const Circle& c) const;
  /// Birth of c among the registered points, or nullopt if c is not registered.
  std::optional<CircleBirth> circle_birth(const Circle& c) const;
  /// Birth from a member list and its diametral pairs.
  std::optional<CircleBirth> birth_from(const std::vector<int>& members,
                                        const std::vector<std::pair<int, int>>& antipodal) const;

 private:
  struct Cursor {
    int phase = 0;
    int i = 0, j = 0, k = 0;
    bool started = false;
    bool done = false;
  };

  bool advance(Cursor& cur, int level) const;
  std::vector<int> scan_members(const Circle& c, int begin, int end) const;
  std::vector<std::pair<int, int>> diameters(const Circle& c, const std::vector<int>& members) const;
  int add_line(LineRecord rec);
  void add_member(int line_id, int point_id);
  void generate_level(int level, std::vector<int>& fresh);

  ClosureConfig cfg_;
  std::vector<PointRecord> points_;
  std::map<Point, int> point_index_;
  std::vector<int> level_end_{0};
  int curve_level_ = 0;

  std::vector<LineRecord> lines_;
  std::map<Line, int> line_index_;

  std::vector<CircleRecord> circles_;
  std::map<Circle, int> circle_index_;
  std::vector<std::vector<int>> circles_by_level_;
  std::vector<Cursor> cursors_;
};

LevelRegistry register_seed(const std::vector<Point>& seeds, ClosureConfig cfg = {});
std::vector<int> generate_curves(LevelRegistry& reg, int level);
std::vector<int> derive_points(LevelRegistry& reg, int level, std::size_t budget);
/// Curves of birth < level(x) containing the registered point x, in registry order.
std::vector<Curve> prior_curves_through(const LevelRegistry& reg, int point_id);

std::string point_ref(int id);
std::string line_ref(int id);
std::string circle_ref(int id);
int rule_tag(Rule r);

}  // namespace thales
