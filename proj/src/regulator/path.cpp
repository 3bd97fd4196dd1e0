#include "charvar/regulator/path.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "charvar/error.hpp"
#include "json.hpp"

namespace charvar::regulator {

namespace {

using nlohmann::json;

cd to_complex(const json& j, const std::string& what) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw Error(ErrorKind::Parse, "'" + what + "' must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

double number(const json& seg, const char* key) {
  if (!seg.contains(key) || !seg[key].is_number())
    throw Error(ErrorKind::Parse, std::string("segment needs numeric '") + key + "'");
  return seg[key].get<double>();
}

Segment parse_segment(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw Error(ErrorKind::Parse, "segment needs a string 'kind'");
  Segment s;
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "exp") {
    s.kind = Segment::Kind::Exp;
    if (!j.contains("from") || !j.contains("to")) throw Error(ErrorKind::Parse, "exp segment needs from and to");
    s.from = to_complex(j["from"], "from");
    s.to = to_complex(j["to"], "to");
  } else if (kind == "circle") {
    s.kind = Segment::Kind::Circle;
    s.center = j.contains("center") ? to_complex(j["center"], "center") : cd(0.0, 0.0);
    s.radius = number(j, "radius");
    s.theta0 = number(j, "theta0");
    s.theta1 = number(j, "theta1");
    if (!(s.radius > 0.0)) throw Error(ErrorKind::Parse, "circle radius must be positive");
  } else if (kind == "polyline_log") {
    s.kind = Segment::Kind::PolylineLog;
    if (!j.contains("points") || !j["points"].is_array() || j["points"].size() < 2)
      throw Error(ErrorKind::Parse, "polyline_log needs at least two points");
    for (const auto& p : j["points"]) s.points.push_back(to_complex(p, "points"));
  } else {
    throw Error(ErrorKind::Parse, "unknown segment kind '" + kind + "'");
  }
  return s;
}

ComponentPath parse_component(const json& j) {
  if (!j.is_array() || j.empty()) throw Error(ErrorKind::Parse, "a component path is a nonempty segment list");
  ComponentPath c;
  for (const auto& s : j) c.segments.push_back(parse_segment(s));
  return c;
}

Segment reversed_segment(const Segment& s) {
  Segment r = s;
  std::swap(r.from, r.to);
  std::swap(r.theta0, r.theta1);
  std::reverse(r.points.begin(), r.points.end());
  return r;
}

}  // namespace

cd Segment::m_at(double s) const {
  switch (kind) {
    case Kind::Exp: return std::exp(from + s * (to - from));
    case Kind::Circle: return center + std::polar(radius, theta0 + s * (theta1 - theta0));
    case Kind::PolylineLog: {
      const double legs = static_cast<double>(points.size() - 1);
      double x = s * legs;
      auto i = static_cast<std::size_t>(std::min(std::floor(x), legs - 1.0));
      double f = x - static_cast<double>(i);
      return std::exp(points[i] + f * (points[i + 1] - points[i]));
    }
  }
  return 1.0;
}

int PathSpec::segment_count() const {
  return components.empty() ? 0 : static_cast<int>(components.front().segments.size());
}

double PathSpec::t_of(int k) const {
  return static_cast<double>(k) / static_cast<double>(segment_count() * samples);
}

void PathSpec::validate() const {
  if (components.empty()) throw Error(ErrorKind::Usage, "path has no components");
  if (samples < 4 || samples % 4 != 0) throw Error(ErrorKind::Usage, "samples must be a positive multiple of 4");
  for (const auto& c : components) {
    if (c.segments.size() != components.front().segments.size())
      throw Error(ErrorKind::Usage, "all components need the same number of segments");
    for (std::size_t j = 0; j + 1 < c.segments.size(); ++j) {
      cd a = c.segments[j].m_at(1.0), b = c.segments[j + 1].m_at(0.0);
      if (std::abs(a - b) > 1e-12 * (1.0 + std::abs(a)))
        throw Error(ErrorKind::Usage, "consecutive segments do not meet");
    }
    for (const auto& s : c.segments)
      for (double x : {0.0, 0.5, 1.0})
        if (!(std::abs(s.m_at(x)) > 0.0)) throw Error(ErrorKind::DivisorCollision, "path passes through m = 0");
    if (closed) {
      cd a = c.segments.front().m_at(0.0), b = c.segments.back().m_at(1.0);
      if (std::abs(a - b) > 1e-12 * (1.0 + std::abs(a)))
        throw Error(ErrorKind::OpenPath, "path is marked closed but its endpoints differ");
    }
  }
}

PathSpec PathSpec::repeated(int times) const {
  if (!closed) throw Error(ErrorKind::OpenPath, "only closed paths can be repeated");
  PathSpec out = *this;
  for (std::size_t c = 0; c < components.size(); ++c) {
    auto& segs = out.components[c].segments;
    segs.clear();
    for (int i = 0; i < times; ++i)
      segs.insert(segs.end(), components[c].segments.begin(), components[c].segments.end());
  }
  return out;
}

PathSpec PathSpec::approach_path() const {
  PathSpec out;
  out.components = approach;
  out.samples = samples;
  return out;
}

bool PathSpec::is_constant() const {
  for (const auto& c : components)
    for (const auto& s : c.segments) {
      const cd m0 = s.m_at(0.0);
      for (double x : {0.25, 0.5, 0.75, 1.0})
        if (s.m_at(x) != m0) return false;
    }
  return true;
}

PathSpec PathSpec::reversed() const {
  PathSpec out = *this;
  for (auto& c : out.components) {
    std::reverse(c.segments.begin(), c.segments.end());
    for (auto& s : c.segments) s = reversed_segment(s);
  }
  return out;
}

PathSpec parse_path_spec(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("path file: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorKind::Parse, "path file must be a JSON object");
  PathSpec spec;
  if (j.contains("samples")) {
    if (!j["samples"].is_number_integer()) throw Error(ErrorKind::Parse, "samples must be an integer");
    spec.samples = j["samples"].get<int>();
  }
  if (j.contains("closed")) {
    if (!j["closed"].is_boolean()) throw Error(ErrorKind::Parse, "closed must be a boolean");
    spec.closed = j["closed"].get<bool>();
  }
  if (j.contains("components")) {
    if (!j["components"].is_array()) throw Error(ErrorKind::Parse, "components must be an array");
    for (const auto& c : j["components"]) spec.components.push_back(parse_component(c));
    if (j.contains("approach")) {
      if (!j["approach"].is_array()) throw Error(ErrorKind::Parse, "approach must be an array");
      for (const auto& c : j["approach"]) spec.approach.push_back(parse_component(c));
    }
  } else if (j.contains("segments")) {
    spec.components.push_back(parse_component(j["segments"]));
    if (j.contains("approach")) spec.approach.push_back(parse_component(j["approach"]));
  } else {
    throw Error(ErrorKind::Parse, "path file needs 'segments' or 'components'");
  }
  if (!spec.approach.empty() && spec.approach.size() != spec.components.size())
    throw Error(ErrorKind::Parse, "approach needs one segment list per component");
  return spec;
}

PathSpec load_path_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open path file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_path_spec(ss.str());
}

}  // namespace charvar::regulator
