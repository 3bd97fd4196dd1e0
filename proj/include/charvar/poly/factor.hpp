#pragma once

#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "charvar/poly/multipoly.hpp"

namespace charvar::poly {

/// p = content * prod(factor^multiplicity). Factors are primitive integer
/// polynomials with positive leading coefficient, sorted by degree and text.
struct Factorization {
  Rat content;
  std::vector<std::pair<MultiPoly, int>> factors;

  MultiPoly expand() const;
};

/// Maximum degree accepted by univariate_factor.
inline constexpr int kFactorDegreeCap = 64;

/// Irreducible factorization over Q (Zassenhaus: modular factoring,
/// Hensel lifting, subset recombination).
Factorization univariate_factor(const MultiPoly& p);

/// Yun squarefree decomposition of a univariate polynomial: pairs
/// (squarefree primitive factor, multiplicity), multiplicities distinct.
std::vector<std::pair<MultiPoly, int>> squarefree_decomposition(const MultiPoly& p);

MultiPoly cyclotomic_polynomial(int k, std::string_view var);
int euler_phi(int k);

struct CyclotomicCertificate {
  bool cyclotomic = false;
  /// Index k of Phi_k for every irreducible factor other than the variable
  /// itself, repeated by multiplicity, ascending.
  std::vector<int> indices;
  /// First factor that is not cyclotomic, when there is one.
  std::optional<MultiPoly> failure_factor;
};

/// Whether every irreducible factor other than the variable is cyclotomic.
CyclotomicCertificate is_cyclotomic_product(const MultiPoly& p);

/// Index k when p (up to a nonzero rational multiple) equals Phi_k.
std::optional<int> cyclotomic_index(const MultiPoly& p);

}  // namespace charvar::poly
