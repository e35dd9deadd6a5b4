#include <doctest.h>

#include <algorithm>
#include <map>

#include "thales/coloring.hpp"
#include "thales/corpus.hpp"
#include "thales/errors.hpp"
#include "thales/verifier.hpp"

using namespace thales;

namespace {

Point pt(long x, long y) { return {Constructible(x), Constructible(y)}; }

// Level 1 colored, its curves and line palettes assigned.
struct Staged {
  LevelRegistry reg;
  ColorState state;

  explicit Staged(const std::vector<Point>& seeds, Mutant m = Mutant::none) : reg(register_seed(seeds)) {
    state.mutant = m;
    color_batch(state, reg, 1);
    assign_line_palettes(state, reg, reg.generate_curves(1));
  }
  int add(const Point& p) { return reg.add_point(p, 2, Rule::meet); }
  Color color(int id) const { return state.f[static_cast<std::size_t>(id)]; }
};

std::vector<Color> colors(const Construction& c) { return c.state.f; }

}  // namespace

TEST_CASE("palette rules") {
  SUBCASE("circle") {
    CHECK(circle_palette_rule({}) == Palette::full());
    CHECK(circle_palette_rule({3, 5}) == Palette{3, 5});
    CHECK(circle_palette_rule({3, 3}).is_full());
    CHECK(circle_palette_rule({3, 5, 7}) == Palette{3, 5, 7});
    CHECK(circle_palette_rule({3, 5}, Mutant::phi_cases).is_full());
  }
  SUBCASE("line") {
    CHECK(line_palette_rule({}, {4}) == Palette{4});
    CHECK(line_palette_rule({2}, {4, 6}) == Palette{2, 4, 6});
    CHECK(line_palette_rule({4}, {4, 6}) == Palette{6});
    CHECK(line_palette_rule({4}, {4}).is_full());
    CHECK(line_palette_rule({1, 4}, {4, 6}) == Palette{1, 4, 6});
    CHECK(line_palette_rule({2}, {4, 6}, Mutant::phi_cases).is_full());
  }
  SUBCASE("membership") {
    const Palette p{0, 2};
    CHECK_FALSE(p.contains(0));
    CHECK(p.contains(1));
    CHECK_FALSE(p.contains(2));
    CHECK(p.contains(1000));
    CHECK(to_string(p) == "omega - {0, 2}");
    CHECK(to_string(Palette::full()) == "FULL");
  }
}

TEST_CASE("assign_phi from the registry") {
  Staged s({pt(0, 0), pt(2, 0)});
  CHECK(s.color(0) == 0);
  CHECK(s.color(1) == 2);
  const Circle c = thales_circle(pt(0, 0), pt(2, 0));
  CHECK(assign_phi_circle(s.state, s.reg, c, 1).is_full());
  CHECK(assign_phi_circle(s.state, s.reg, c, 2) == Palette{0, 2});
  s.state.f[1] = 0;
  CHECK(assign_phi_circle(s.state, s.reg, c, 2).is_full());

  Staged t({pt(0, 0), pt(2, 0)});
  const Line l = line_through(pt(0, 0), pt(2, 0));
  CHECK(assign_phi_line(t.state, t.reg, l, 1) == Palette{0, 2});
  CHECK(phi(t.state, t.reg, Curve{l}) == Palette{0, 2});
  CHECK(phi(t.state, t.reg, Curve{c}) == Palette::full());
  CHECK_FALSE(phi(t.state, t.reg, Curve{line_through(pt(0, 1), pt(5, 7))}).has_value());
}

TEST_CASE("color_batch") {
  SUBCASE("batch on no prior curves") {
    Staged s({pt(0, 0), pt(1, 0), pt(0, 1)});
    CHECK(s.color(0) == 0);
    CHECK(s.color(1) == 2);
    CHECK(s.color(2) == 4);
  }
  SUBCASE("one prior line with palette omega - {0, 2}") {
    Staged s({pt(0, 0), pt(2, 0)});
    REQUIRE(s.state.line_phi[0] == Palette{0, 2});
    const int x = s.add(pt(5, 0));
    CHECK(disqualified_colors(s.state, s.reg, x).empty());
    color_batch(s.state, s.reg, 2);
    CHECK(s.color(x) == 1);
  }
  SUBCASE("perpendicular exclusion") {
    // y = 0 carries (1,0), (3,0); (0,5) sits on the perpendicular x = 0 at (0,0).
    Staged s({pt(0, 5), pt(1, 0), pt(3, 0)});
    REQUIRE(s.color(0) == 0);
    const int x = s.add(pt(0, 0));
    CHECK(disqualified_colors(s.state, s.reg, x) == std::vector<Color>{0});
    color_batch(s.state, s.reg, 2);
    CHECK(s.color(x) == 1);

    Staged m({pt(0, 5), pt(1, 0), pt(3, 0)}, Mutant::cond_12);
    const int y = m.add(pt(0, 0));
    color_batch(m.state, m.reg, 2);
    CHECK(m.color(y) == 0);
  }
  SUBCASE("gap rule mutant") {
    Staged s({pt(0, 0), pt(1, 0), pt(0, 1)}, Mutant::gap_rule);
    CHECK(s.color(1) == 1);
    CHECK(s.color(2) == 2);
  }
}

TEST_CASE("disqualified_colors") {
  SUBCASE("older point on the perpendicular") {
    Staged s({pt(0, 5), pt(1, 0), pt(3, 0)});
    s.state.f[0] = 7;
    const int x = s.add(pt(0, 0));
    CHECK(disqualified_colors(s.state, s.reg, x) == std::vector<Color>{7});
  }
  SUBCASE("on no prior line") {
    Staged s({pt(0, 0), pt(1, 0)});
    const int x = s.add(pt(5, 5));
    CHECK(disqualified_colors(s.state, s.reg, x).empty());
  }
  SUBCASE("empty perpendicular") {
    Staged s({pt(0, 0), pt(2, 2)});
    const int x = s.add(pt(1, 1));
    CHECK(disqualified_colors(s.state, s.reg, x).empty());
  }
}

TEST_CASE("run_construction examples") {
  SUBCASE("single seed") {
    EngineConfig cfg;
    const Construction c = run_construction({pt(0, 0)}, cfg);
    CHECK(c.reg.point_count() == 1);
    CHECK(c.state.f == std::vector<Color>{0});
    CHECK(c.reg.lines().empty());
    CHECK(c.reg.circles().empty());
  }
  SUBCASE("right triangle") {
    EngineConfig cfg;
    cfg.closure.max_level = 1;
    const Construction c = run_construction({pt(0, 0), pt(1, 0), pt(1, 1)}, cfg);
    CHECK(c.state.f == std::vector<Color>{0, 2, 4});
    std::vector<Point> points;
    for (const PointRecord& p : c.reg.points()) points.push_back(p.point);
    CHECK_FALSE(find_mono_right_triangle(points, c.state.f).has_value());
  }
  SUBCASE("max_level must be positive") {
    EngineConfig cfg;
    cfg.closure.max_level = 0;
    CHECK_THROWS_AS(run_construction({pt(0, 0)}, cfg), InputError);
  }
}

TEST_CASE("mutant tags") {
  for (Mutant m : {Mutant::none, Mutant::gap_rule, Mutant::cond_7, Mutant::cond_12, Mutant::phi_cases, Mutant::all}) {
    CHECK(parse_mutant(to_string(m)) == m);
  }
  CHECK(parse_mutant("COND_12") == Mutant::cond_12);
  CHECK_THROWS_AS(parse_mutant("COND_99"), InputError);
  CHECK_THROWS_AS(parse_mutant("gap_rule"), InputError);
}

TEST_CASE("coloring invariants on random runs") {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    CAPTURE(seed);
    EngineConfig cfg;
    cfg.closure.max_level = 3;
    cfg.closure.point_budget_per_level = 15;
    const Construction c = run_construction(random_rational(8, seed, 6), cfg);
    const LevelRegistry& reg = c.reg;
    const ColorState& st = c.state;
    REQUIRE(st.f.size() == static_cast<std::size_t>(reg.point_count()));
    for (Color f : st.f) CHECK(f >= 0);
    // COND_6 per batch, in enumeration order: strictly increasing by >= 2 after the first.
    for (int level = 1; level <= reg.top_level(); ++level) {
      std::map<Color, int> seen;
      for (int id = reg.level_begin(level); id < reg.level_end(level); ++id) CHECK(++seen[st.f[static_cast<std::size_t>(id)]] == 1);
      for (int id = reg.level_begin(level) + 1; id < reg.level_end(level); ++id) {
        Color prev_max = -1;
        for (int k = reg.level_begin(level); k < id; ++k) prev_max = std::max(prev_max, st.f[static_cast<std::size_t>(k)]);
        CHECK(st.f[static_cast<std::size_t>(id)] >= prev_max + 2);
      }
    }
    // COND_7 against every prior curve; COND_12 against older points on perpendiculars.
    for (int id = 0; id < reg.point_count(); ++id) {
      const Color fx = st.f[static_cast<std::size_t>(id)];
      for (const Curve& e : prior_curves_through(reg, id)) {
        const auto p = phi(st, reg, e);
        REQUIRE(p.has_value());
        CHECK(p->contains(fx));
      }
      const auto dq = disqualified_colors(st, reg, id);
      CHECK_FALSE(std::binary_search(dq.begin(), dq.end(), fx));
    }
    // Every palette has a finite complement bounded by the colors in use.
    const Color max_color = *std::max_element(st.f.begin(), st.f.end());
    for (const Palette& p : st.line_phi) {
      for (Color x : p.complement()) CHECK(x <= max_color);
    }
    CHECK(colors(c) == colors(run_construction(random_rational(8, seed, 6), cfg)));
  }
}
