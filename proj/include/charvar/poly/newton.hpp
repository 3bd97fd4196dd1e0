#pragma once

#include <array>
#include <vector>

#include "charvar/poly/multipoly.hpp"

namespace charvar::poly {

using LatticePoint = std::array<int, 2>;

struct PolygonEdge {
  LatticePoint start;
  LatticePoint end;
  /// Primitive direction from start to end.
  LatticePoint direction;
  /// start, start + direction, ..., end.
  std::vector<LatticePoint> points;
};

/// Convex hull of the support of a bivariate polynomial. Coordinates are
/// exponents of (variables()[0], variables()[1]) of the trimmed polynomial.
/// Vertices run counter-clockwise from the lexicographically smallest one;
/// a segment has two opposite edges and a point has none.
struct NewtonPolygon {
  std::array<std::string, 2> variables;
  std::vector<LatticePoint> vertices;
  std::vector<PolygonEdge> edges;
};

NewtonPolygon newton_polygon(const MultiPoly& p);

/// sum_k c_k t^k, c_k the coefficient of p at edge.points[k].
MultiPoly edge_polynomial(const MultiPoly& p, const PolygonEdge& edge, std::string_view var = "t");

}  // namespace charvar::poly
