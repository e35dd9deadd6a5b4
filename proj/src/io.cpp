#include "thales/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include "thales/errors.hpp"
#include "thales/exact_io.hpp"

namespace thales {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double approx(const Constructible& x) { return x.bounds().mid(); }

std::string num(double v) {
  std::ostringstream os;
  os << std::setprecision(6) << v;
  return os.str();
}

std::string hue(Color c) {
  std::ostringstream os;
  os << "hsl(" << static_cast<long>(std::fmod(static_cast<double>(c) * 137.508, 360.0)) << ",65%,45%)";
  return os.str();
}

}  // namespace

std::vector<Point> parse_points(std::string_view text, bool strict) {
  std::vector<Point> out;
  std::set<Point> seen;
  int line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const std::size_t eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text.remove_prefix(eol == std::string_view::npos ? text.size() : eol + 1);
    if (const std::size_t hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(line_no) + ": ";
    const std::size_t comma = line.find(',');
    if (comma == std::string_view::npos || line.find(',', comma + 1) != std::string_view::npos) {
      throw InputError(where + "expected 'x,y', got '" + std::string(line) + "'");
    }
    Point p;
    try {
      p = Point{Constructible(parse_rational(trim(line.substr(0, comma)))), Constructible(parse_rational(trim(line.substr(comma + 1))))};
    } catch (const InputError& e) {
      throw InputError(where + e.what());
    }
    if (!seen.insert(p).second) {
      if (strict) throw InputError(where + "duplicate point " + to_string(p));
      continue;
    }
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<Point> read_points(const std::string& path, bool strict) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_points(buf.str(), strict);
}

std::string serialize_points(const std::vector<Point>& points) {
  std::string out;
  for (const Point& p : points) {
    if (!p.x.is_rational() || !p.y.is_rational()) throw InputError("point " + to_string(p) + " is not rational");
    out += to_string(p.x.rational()) + "," + to_string(p.y.rational()) + "\n";
  }
  return out;
}

std::string coloring_csv(const Snapshot& snap) {
  std::string out = "id,x,y,level,batch,color\n";
  for (std::size_t i = 0; i < snap.points.size(); ++i) {
    const SnapshotPoint& p = snap.points[i];
    out += std::to_string(i) + "," + to_string(p.point.x) + "," + to_string(p.point.y) + "," + std::to_string(p.level) + "," +
           std::to_string(p.batch) + "," + std::to_string(p.color) + "\n";
  }
  return out;
}

void materialize_all_circles(LevelRegistry& reg) {
  for (int level = 1; level <= reg.curve_level(); ++level) reg.materialize_circles(level);
}

std::string registry_jsonl(const LevelRegistry& reg) {
  std::string out;
  auto emit = [&](const char* kind, std::size_t id, int level, nlohmann::json batch, Rule rule,
                  const std::vector<std::string>& parents, std::string value) {
    out += nlohmann::json{{"kind", kind},   {"id", id},           {"level", level},          {"batch_index", std::move(batch)},
                          {"rule", rule_tag(rule)}, {"parents", parents}, {"value", std::move(value)}}
               .dump();
    out += "\n";
  };
  for (std::size_t i = 0; i < reg.points().size(); ++i) {
    const PointRecord& p = reg.points()[i];
    emit("point", i, p.level, p.batch, p.rule, p.parents, to_string(p.point));
  }
  for (std::size_t i = 0; i < reg.lines().size(); ++i) {
    const LineRecord& l = reg.lines()[i];
    emit("line", i, l.birth, nullptr, l.rule, l.parents, to_string(l.line));
  }
  for (std::size_t i = 0; i < reg.circles().size(); ++i) {
    const CircleRecord& c = reg.circles()[i];
    emit("circle", i, c.birth, nullptr, c.rule, c.parents, to_string(c.circle));
  }
  return out;
}

nlohmann::json coloring_json(const Snapshot& snap) {
  nlohmann::json points = nlohmann::json::array();
  for (std::size_t i = 0; i < snap.points.size(); ++i) {
    const SnapshotPoint& p = snap.points[i];
    points.push_back({{"id", i},
                      {"x", to_json(p.point.x)},
                      {"y", to_json(p.point.y)},
                      {"text", to_string(p.point)},
                      {"level", p.level},
                      {"batch", p.batch},
                      {"color", p.color}});
  }
  nlohmann::json lines = nlohmann::json::array();
  for (const SnapshotLine& l : snap.lines) {
    lines.push_back({{"a", to_json(l.line.a())},
                     {"b", to_json(l.line.b())},
                     {"c", to_json(l.line.c())},
                     {"text", to_string(l.line)},
                     {"birth", l.birth},
                     {"complement", l.palette.complement()}});
  }
  nlohmann::json circles = nlohmann::json::array();
  for (const SnapshotCircle& c : snap.circles) {
    circles.push_back({{"cx", to_json(c.circle.center().x)},
                       {"cy", to_json(c.circle.center().y)},
                       {"r2", to_json(c.circle.r2())},
                       {"text", to_string(c.circle)},
                       {"birth", c.birth},
                       {"complement", c.palette.complement()}});
  }
  return {{"points", points}, {"lines", lines}, {"circles", circles}};
}

Snapshot snapshot_from_json(const nlohmann::json& j) {
  Snapshot s;
  try {
    for (const auto& p : j.at("points")) {
      s.points.push_back({Point{from_json(p.at("x")), from_json(p.at("y"))}, p.at("level").get<int>(), p.at("batch").get<int>(),
                          p.at("color").get<Color>()});
    }
    for (const auto& l : j.at("lines")) {
      s.lines.push_back({Line(from_json(l.at("a")), from_json(l.at("b")), from_json(l.at("c"))), l.at("birth").get<int>(),
                         Palette(l.at("complement").get<std::vector<Color>>())});
    }
    for (const auto& c : j.at("circles")) {
      s.circles.push_back({Circle(Point{from_json(c.at("cx")), from_json(c.at("cy"))}, from_json(c.at("r2"))),
                           c.at("birth").get<int>(), Palette(c.at("complement").get<std::vector<Color>>())});
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed coloring document: ") + e.what());
  } catch (const DegenerateInput& e) {
    throw InputError(std::string("malformed coloring document: ") + e.what());
  }
  return s;
}

std::string render_svg(const Snapshot& snap, const std::optional<Violation>& witness) {
  const int n = static_cast<int>(snap.points.size());
  double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  std::vector<double> px, py;
  for (int i = 0; i < n; ++i) {
    px.push_back(approx(snap.points[static_cast<std::size_t>(i)].point.x));
    py.push_back(approx(snap.points[static_cast<std::size_t>(i)].point.y));
    if (i == 0) {
      x0 = x1 = px.back();
      y0 = y1 = py.back();
    }
    x0 = std::min(x0, px.back());
    x1 = std::max(x1, px.back());
    y0 = std::min(y0, py.back());
    y1 = std::max(y1, py.back());
  }
  const double pad = 0.1 * std::max({x1 - x0, y1 - y0, 1.0});
  x0 -= pad;
  x1 += pad;
  y0 -= pad;
  y1 += pad;
  const double w = x1 - x0, h = y1 - y0, unit = std::max(w, h) / 400.0;
  // y grows downward in SVG, so flip around the box.
  auto sx = [&](double x) { return num(x); };
  auto sy = [&](double y) { return num(y0 + y1 - y); };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << num(x0) << " " << num(y0) << " " << num(w) << " " << num(h)
     << "\" width=\"600\" height=\"" << num(600.0 * h / w) << "\">\n";
  os << "<rect x=\"" << num(x0) << "\" y=\"" << num(y0) << "\" width=\"" << num(w) << "\" height=\"" << num(h)
     << "\" fill=\"white\"/>\n";
  os << "<g fill=\"none\" stroke=\"#888\" stroke-opacity=\"0.35\" stroke-width=\"" << num(unit) << "\">\n";
  const double reach = 4 * std::max(w, h);
  for (const SnapshotLine& l : snap.lines) {
    int on = 0;
    for (int i = 0; i < n && on < 2; ++i) on += on_line(snap.points[static_cast<std::size_t>(i)].point, l.line);
    if (on < 2) continue;
    const double a = approx(l.line.a()), b = approx(l.line.b()), c = approx(l.line.c());
    const double cx = (x0 + x1) / 2, cy = (y0 + y1) / 2, nn = a * a + b * b;
    const double t = (a * cx + b * cy + c) / nn;
    const double fx = cx - a * t, fy = cy - b * t, len = std::sqrt(nn);
    os << "<line x1=\"" << sx(fx - b / len * reach) << "\" y1=\"" << sy(fy + a / len * reach) << "\" x2=\""
       << sx(fx + b / len * reach) << "\" y2=\"" << sy(fy - a / len * reach) << "\"/>\n";
  }
  for (const SnapshotCircle& c : snap.circles) {
    os << "<circle cx=\"" << sx(approx(c.circle.center().x)) << "\" cy=\"" << sy(approx(c.circle.center().y)) << "\" r=\""
       << num(std::sqrt(approx(c.circle.r2()))) << "\"/>\n";
  }
  os << "</g>\n";
  for (int i = 0; i < n; ++i) {
    const Color c = snap.points[static_cast<std::size_t>(i)].color;
    os << "<circle cx=\"" << sx(px[static_cast<std::size_t>(i)]) << "\" cy=\"" << sy(py[static_cast<std::size_t>(i)])
       << "\" r=\"" << num(3 * unit) << "\" fill=\"" << (c < 0 ? std::string("black") : hue(c)) << "\"/>\n";
  }
  if (witness && witness->points.size() == 3) {
    os << "<polygon fill=\"none\" stroke=\"red\" stroke-width=\"" << num(2 * unit) << "\" points=\"";
    for (int id : witness->points) os << sx(px[static_cast<std::size_t>(id)]) << "," << sy(py[static_cast<std::size_t>(id)]) << " ";
    os << "\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << content) || !out.flush()) throw IoError("cannot write " + path);
}

}  // namespace thales
