#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "charvar/k2/ratfunc.hpp"

namespace charvar::k2 {

/// A rational function kept in the factored form it was written in:
/// constant * prod base^power. Bases are nonconstant primitive integer
/// polynomials with positive leading coefficient.
struct SymbolArg {
  Rat constant{1};
  std::vector<std::pair<MultiPoly, int>> bases;

  SymbolArg() = default;
  SymbolArg(const Rat& c) : constant(c) {}  // NOLINT(google-explicit-constructor)
  /// Splits off the rational content and each variable of the monomial
  /// content; the rest stays one base.
  SymbolArg(const MultiPoly& p);  // NOLINT(google-explicit-constructor)
  static SymbolArg from_ratfunc(const RatFunc& f);

  /// `poly` or a product/quotient of parenthesized groups,
  /// e.g. `(x)^2*(1 - x)/(y)`.
  static SymbolArg parse(std::string_view text);

  RatFunc value() const;
  std::string to_string() const;
};

/// {f, g}^exponent.
struct SymbolFactor {
  SymbolArg f, g;
  long exponent = 1;
};

/// Product of symbols. torsion_flag records a discarded 2-torsion multiplier.
struct FormalSymbol {
  std::vector<SymbolFactor> factors;
  bool torsion_flag = false;

  static FormalSymbol pair(const SymbolArg& f, const SymbolArg& g, long exponent = 1);
  bool is_identity() const { return factors.empty(); }
  FormalSymbol operator*(const FormalSymbol& o) const;
  FormalSymbol pow(long k) const;

  /// `{f, g}^e * {h, k}`; the empty product is `1`.
  static FormalSymbol parse(std::string_view text);
  std::string to_string() const;
};

/// Rewrites to a canonical product over atoms (-1, primes, primitive
/// polynomials): Steinberg and {f, -f} pairs dropped,
/// entries split multiplicatively, {f, f} -> {f, -1}, skew-symmetric
/// reordering, exponents of pairs with -1 reduced mod 2, equal pairs merged.
/// Relations among purely rational pairs beyond these are not applied, so
/// {3, 2} and {3, -1}^-1 stay distinct.
FormalSymbol symbol_normalize(const FormalSymbol& s);

/// Normalized forms are equal.
bool symbols_equal(const FormalSymbol& a, const FormalSymbol& b);

}  // namespace charvar::k2
