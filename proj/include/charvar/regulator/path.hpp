#pragma once

#include <complex>
#include <string>
#include <string_view>
#include <vector>

namespace charvar::regulator {

using cd = std::complex<double>;

/// One piece of a meridian path, parametrized by s in [0, 1].
struct Segment {
  enum class Kind { Exp, Circle, PolylineLog };
  Kind kind = Kind::Exp;
  /// Exp: m = exp(from + s (to - from)).
  cd from{0.0, 0.0}, to{0.0, 0.0};
  /// Circle: m = center + radius exp(i theta), theta from theta0 to theta1.
  cd center{0.0, 0.0};
  double radius = 0.0, theta0 = 0.0, theta1 = 0.0;
  /// PolylineLog: log m linear between consecutive points, equal shares of s.
  std::vector<cd> points;

  cd m_at(double s) const;
};

struct ComponentPath {
  std::vector<Segment> segments;
};

/// Per-component meridian paths. All components have the same number of
/// segments; every segment is sampled `samples` times (a multiple of 4).
struct PathSpec {
  std::vector<ComponentPath> components;
  /// Optional open lead-in per component, tracked from the basepoint before
  /// the path itself and excluded from the integrals.
  std::vector<ComponentPath> approach;
  int samples = 400;
  bool closed = false;

  int segment_count() const;
  int state_count() const { return segment_count() * samples + 1; }
  /// Global parameter of state k.
  double t_of(int k) const;
  /// Throws usage errors for malformed specs and open-path when `closed`
  /// is set but the meridian endpoints differ by more than 1e-12.
  void validate() const;

  /// Same path traversed `times` times (closed paths only).
  PathSpec repeated(int times) const;
  PathSpec reversed() const;
  /// The approach as a path of its own (same sample count, open).
  PathSpec approach_path() const;
  /// Every segment keeps m fixed.
  bool is_constant() const;
};

/// JSON text:
///   {"samples": 400, "closed": false,
///    "segments": [{"kind": "exp", "from": [0, 0], "to": [0, 0.314]}]}
/// or "components": [[segments of component 1], [segments of component 2]].
/// Kinds: "exp" (from, to), "circle" (center, radius, theta0, theta1),
/// "polyline_log" (points). Complex numbers are [re, im].
PathSpec parse_path_spec(std::string_view json);
PathSpec load_path_spec(const std::string& path);

}  // namespace charvar::regulator
