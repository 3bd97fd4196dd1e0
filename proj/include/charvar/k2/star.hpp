#pragma once

#include "charvar/k2/ratfunc.hpp"
#include "charvar/k2/symbol.hpp"

namespace charvar::k2 {

/// Symbol attached to two commuting matrices of determinant 1.
///  - trace +-2 on either side: identity; torsion_flag unless both traces
///    are +2.
///  - U diagonalizable over the field with eigenvalues u, 1/u and the
///    common eigenvector giving V's eigenvalue v: {u, v}^2.
/// Throws non-commuting for UV != VU or det != 1, not-handled when
/// sqrt(tr(U)^2 - 4) is not in the field.
FormalSymbol star_product(const Matrix2& u, const Matrix2& v);

}  // namespace charvar::k2
