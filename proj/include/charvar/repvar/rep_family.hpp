#pragma once

#include <array>
#include <complex>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "charvar/poly/multipoly.hpp"
#include "charvar/repvar/two_bridge.hpp"

namespace charvar::repvar {

using poly::MultiPoly;
using Values = std::map<std::string, std::complex<double>>;

/// 2x2 matrix of Laurent polynomials stored as polynomial entries over a
/// common monomial denominator prod var^den[var].
struct ScaledMatrix {
  std::array<MultiPoly, 4> entries;  // row-major
  std::map<std::string, int> den;

  const MultiPoly& at(int r, int c) const { return entries[static_cast<std::size_t>(2 * r + c)]; }
  MultiPoly denominator() const;
  ScaledMatrix operator*(const ScaledMatrix& o) const;
  Eigen::Matrix2cd evaluate(const Values& at) const;

  static ScaledMatrix identity();
};

/// Riley normal form: a -> [[m, 1], [0, 1/m]], b -> [[m', 0], [u, 1/m']],
/// with m' = m for knots and independent m1, m2 for two-component links.
struct RepFamily {
  Presentation pres;
  /// Eigenvalue variable per component, in meridian order.
  std::vector<std::string> meridian_vars;
  std::string correlation_var = "u";

  const std::string& var_of(char generator) const;
  /// Image of a single letter g^(+-1), scaled by its eigenvalue variable.
  ScaledMatrix letter(char generator, int sign) const;
};

RepFamily rep_family(const TwoBridgeCode& code);

ScaledMatrix word_matrix(const RepFamily& fam, const Word& word);

/// Numeric image of a word, by direct 2x2 complex products.
Eigen::Matrix2cd word_matrix_numeric(const RepFamily& fam, const Word& word, const Values& at);

/// det = 1 identically for both generator images.
bool determinants_are_one(const RepFamily& fam);

/// Gcd of the numerators of lhs - rhs of the relator equation, with
/// monomial factors removed. Throws inconsistent-family when the gcd is
/// constant.
MultiPoly riley_polynomial(const RepFamily& fam);

}  // namespace charvar::repvar
