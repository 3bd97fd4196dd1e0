#include "charvar/poly/newton.hpp"

#include <algorithm>
#include <numeric>

#include "charvar/error.hpp"

namespace charvar::poly {

namespace {

long long cross(const LatticePoint& o, const LatticePoint& a, const LatticePoint& b) {
  return static_cast<long long>(a[0] - o[0]) * (b[1] - o[1]) -
         static_cast<long long>(a[1] - o[1]) * (b[0] - o[0]);
}

std::vector<LatticePoint> convex_hull(std::vector<LatticePoint> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() <= 1) return pts;
  std::vector<LatticePoint> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

PolygonEdge make_edge(const LatticePoint& a, const LatticePoint& b) {
  PolygonEdge e{a, b, {0, 0}, {}};
  int dx = b[0] - a[0], dy = b[1] - a[1];
  int g = std::gcd(std::abs(dx), std::abs(dy));
  e.direction = {dx / g, dy / g};
  for (int k = 0; k <= g; ++k) e.points.push_back({a[0] + k * e.direction[0], a[1] + k * e.direction[1]});
  return e;
}

}  // namespace

NewtonPolygon newton_polygon(const MultiPoly& p) {
  if (p.is_zero()) throw Error(ErrorKind::WrongArity, "Newton polygon of the zero polynomial");
  MultiPoly q = p.trimmed();
  if (q.variables().size() != 2)
    throw Error(ErrorKind::WrongArity, "Newton polygon needs exactly two variables, got " +
                                           std::to_string(q.variables().size()));
  NewtonPolygon out;
  out.variables = {q.variables()[0], q.variables()[1]};
  std::vector<LatticePoint> pts;
  for (const auto& [e, c] : q.terms()) pts.push_back({e[0], e[1]});
  out.vertices = convex_hull(std::move(pts));
  const std::size_t n = out.vertices.size();
  if (n >= 2)
    for (std::size_t i = 0; i < n; ++i) out.edges.push_back(make_edge(out.vertices[i], out.vertices[(i + 1) % n]));
  return out;
}

MultiPoly edge_polynomial(const MultiPoly& p, const PolygonEdge& edge, std::string_view var) {
  NewtonPolygon poly = newton_polygon(p);
  bool found = std::any_of(poly.edges.begin(), poly.edges.end(), [&](const PolygonEdge& e) {
    return e.start == edge.start && e.end == edge.end;
  });
  if (!found) throw Error(ErrorKind::EdgeNotOnPolygon, "edge is not an edge of the Newton polygon");
  MultiPoly q = p.trimmed();
  MultiPoly out(std::vector<std::string>{std::string(var)});
  for (std::size_t k = 0; k < edge.points.size(); ++k) {
    auto it = q.terms().find(Exponents{edge.points[k][0], edge.points[k][1]});
    if (it == q.terms().end()) continue;
    out += MultiPoly::monomial({std::string(var)}, {static_cast<int>(k)}, it->second);
  }
  return out;
}

}  // namespace charvar::poly
