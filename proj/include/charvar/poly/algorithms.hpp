#pragma once

#include <optional>
#include <string_view>

#include "charvar/poly/multipoly.hpp"

namespace charvar::poly {

/// Quotient a / b when b divides a exactly, otherwise nullopt.
std::optional<MultiPoly> try_divide(const MultiPoly& a, const MultiPoly& b);
/// Like try_divide but throws when the division leaves a remainder.
MultiPoly divide_exact(const MultiPoly& a, const MultiPoly& b);

/// lc_var(b)^(deg a - deg b + 1) * a reduced modulo b, both viewed as
/// polynomials in `var`.
MultiPoly pseudo_remainder(const MultiPoly& a, const MultiPoly& b, std::string_view var);

/// Gcd of the coefficients of p viewed as a polynomial in `var`.
MultiPoly content_in(const MultiPoly& p, std::string_view var);
MultiPoly primitive_part_in(const MultiPoly& p, std::string_view var);

/// Greatest common divisor, normalized by primitive_integer(). gcd(0, 0) = 0.
MultiPoly gcd(const MultiPoly& a, const MultiPoly& b);

/// Product of the distinct irreducible factors of p, normalized.
MultiPoly squarefree_part(const MultiPoly& p);

/// Sylvester resultant eliminating `var`, via fraction-free elimination.
MultiPoly resultant(const MultiPoly& p, const MultiPoly& q, std::string_view var);

/// r with r * r = p and positive leading coefficient, when one exists.
std::optional<MultiPoly> exact_sqrt(const MultiPoly& p);

/// Determinant of a square matrix of polynomials (Bareiss).
MultiPoly determinant(std::vector<std::vector<MultiPoly>> m);

}  // namespace charvar::poly
