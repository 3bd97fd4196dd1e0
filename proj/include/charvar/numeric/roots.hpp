#pragma once

#include <complex>
#include <vector>

namespace charvar::numeric {

using cd = std::complex<double>;

/// Roots of sum_k c[k] x^k from the companion-matrix eigenvalues, each
/// polished by a few Newton steps. Trailing zero coefficients are dropped.
std::vector<cd> polynomial_roots(std::vector<cd> coeffs);

/// Horner evaluation of sum_k c[k] x^k and its derivative.
cd horner(const std::vector<cd>& coeffs, cd x);
cd horner_derivative(const std::vector<cd>& coeffs, cd x);

}  // namespace charvar::numeric
