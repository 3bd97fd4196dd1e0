#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "charvar/k2/symbol.hpp"
#include "charvar/poly/factor.hpp"
#include "charvar/poly/newton.hpp"

namespace charvar::k2 {

using cd = std::complex<double>;

/// A place of a function field.
///  - LinePoint / LineInfinity: z = point or z = infinity on the projective
///    line of `var`; entries may be arbitrary polynomials in var.
///  - CurvePoint: a smooth point (l, m) of a curve with l, m != 0.
///  - Edge: a branch at an ideal point of the curve, given by a Newton
///    polygon edge and one root of its edge polynomial.
struct Place {
  enum class Kind { LinePoint, LineInfinity, CurvePoint, Edge };
  Kind kind = Kind::LinePoint;
  std::string var = "z";
  Rat point{0};
  cd l{1.0, 0.0}, m{1.0, 0.0};
  poly::PolygonEdge edge;
  /// Irreducible factor of the edge polynomial the root belongs to, and its
  /// cyclotomic index when it is one.
  MultiPoly root_factor;
  std::optional<int> cyclotomic_index;
  cd root{1.0, 0.0};

  std::string describe() const;
};

struct TameValue {
  cd value{1.0, 0.0};
  /// Exact value when it is rational.
  std::optional<Rat> exact;
  /// Order when the value is certified to be a root of unity.
  std::optional<long> order;
  /// |value| = 1 within 1e-10 when no exact certificate is available.
  bool unit_modulus = false;
};

/// One place per distinct root of every edge polynomial of a curve in
/// (l, m). Roots come from the exact irreducible factors.
std::vector<Place> edge_places(const MultiPoly& curve);

/// prod over factors of ((-1)^(v(f) v(g)) f^v(g) / g^v(f))(place)^e.
/// At Edge and CurvePoint places the entries must be monomials in l, m
/// times constants; throws indeterminate otherwise, or when an entry of
/// order zero has no value at the place.
TameValue tame_symbol(const FormalSymbol& s, const Place& place);

struct EdgeCertificate {
  poly::PolygonEdge edge;
  MultiPoly edge_polynomial;
  poly::CyclotomicCertificate certificate;
};

struct TemperednessReport {
  bool tempered = true;
  std::vector<std::string> variables;
  std::vector<EdgeCertificate> edges;

  std::string to_string() const;
};

TemperednessReport temperedness(const MultiPoly& curve);

/// Lcm of the orders of tame{l, m} over all edge places; throws
/// untempered when some edge polynomial has a non-cyclotomic factor.
long symbol_order_candidate(const MultiPoly& curve);

}  // namespace charvar::k2
