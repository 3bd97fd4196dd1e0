#pragma once

#include <complex>
#include <string>
#include <vector>

#include "charvar/poly/multipoly.hpp"

namespace charvar::numeric {

using cd = std::complex<double>;

/// Floating-point copy of a polynomial in two named variables (x, y).
class Bivariate {
 public:
  struct Value {
    cd f, fx, fy;
    /// sum |c| |x|^i |y|^j, the natural scale for |f|.
    double scale;
  };

  Bivariate() = default;
  Bivariate(const poly::MultiPoly& p, const std::string& x, const std::string& y);

  Value eval(cd x, cd y) const;
  /// |f| / scale.
  double scaled_residual(cd x, cd y) const;
  /// Coefficients of f(., y) in ascending powers of x.
  std::vector<cd> coefficients_in_x(cd y) const;
  int degree_x() const { return degree_x_; }

 private:
  struct Term {
    int i, j;
    double c;
  };
  std::vector<Term> terms_;
  int degree_x_ = 0;
};

}  // namespace charvar::numeric
