#pragma once

#include <array>
#include <string>

#include "charvar/poly/multipoly.hpp"

namespace charvar::k2 {

using poly::MultiPoly;
using poly::Rat;

/// num / den in lowest terms, den with leading coefficient 1.
class RatFunc {
 public:
  RatFunc() : num_(), den_(MultiPoly::constant(Rat(1))) {}
  RatFunc(const MultiPoly& p) : RatFunc(p, MultiPoly::constant(Rat(1))) {}  // NOLINT(google-explicit-constructor)
  RatFunc(const Rat& c) : RatFunc(MultiPoly::constant(c)) {}  // NOLINT(google-explicit-constructor)
  RatFunc(const MultiPoly& num, const MultiPoly& den);

  /// `p` or `(p)/(q)`.
  static RatFunc parse(std::string_view text);

  const MultiPoly& num() const { return num_; }
  const MultiPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  RatFunc operator-() const { return {-num_, den_}; }
  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

  std::string to_string() const;

 private:
  MultiPoly num_, den_;
};

/// Row-major 2x2 matrix.
using Matrix2 = std::array<RatFunc, 4>;

Matrix2 multiply(const Matrix2& a, const Matrix2& b);
RatFunc trace(const Matrix2& a);
RatFunc det(const Matrix2& a);
/// Throws singular-input when det is zero.
Matrix2 inverse(const Matrix2& a);

}  // namespace charvar::k2
