#pragma once

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "charvar/poly/rat.hpp"

namespace charvar::poly {

using Exponents = std::vector<int>;

/// Graded lexicographic order; the leading term is the largest.
struct GradedLex {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Variables are kept sorted by name, so two polynomials over the same
/// variable set share an exponent layout. Zero coefficients are never stored.
/// Binary operations silently widen both operands to the union of variables;
/// equality ignores variables that do not occur.
class MultiPoly {
 public:
  using TermMap = std::map<Exponents, Rat, GradedLex>;

  MultiPoly() = default;
  explicit MultiPoly(std::vector<std::string> variables);
  MultiPoly(std::vector<std::string> variables, TermMap terms);

  static MultiPoly constant(const Rat& c);
  static MultiPoly variable(std::string_view name);
  static MultiPoly monomial(const std::vector<std::string>& variables, Exponents exps, Rat coeff);
  /// Text format: terms `c*x^a*y^b` joined by `+`/`-`; `c` is an integer or `p/q`.
  static MultiPoly parse(std::string_view text);

  const std::vector<std::string>& variables() const { return vars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Constant term (zero if absent).
  Rat constant_term() const;

  std::optional<std::size_t> index_of(std::string_view var) const;
  bool involves(std::string_view var) const;
  /// Variables that occur with positive exponent in some term.
  std::vector<std::string> support_variables() const;
  /// Degree in one variable; -1 for the zero polynomial.
  int degree(std::string_view var) const;
  int total_degree() const;
  const Exponents& leading_exponents() const;
  const Rat& leading_coefficient() const;

  /// Same polynomial over a superset of its variables.
  MultiPoly over(const std::vector<std::string>& variables) const;
  /// Drops variables that do not occur.
  MultiPoly trimmed() const;

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(const MultiPoly& o);
  MultiPoly& operator*=(const Rat& c);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(MultiPoly a, const Rat& c) { return a *= c; }
  friend MultiPoly operator*(const Rat& c, MultiPoly a) { return a *= c; }
  friend bool operator==(const MultiPoly& a, const MultiPoly& b);

  MultiPoly pow(unsigned exponent) const;

  /// Coefficients with respect to `var`, index = power of `var`. The
  /// coefficients keep the full variable list.
  std::vector<MultiPoly> coefficients_in(std::string_view var) const;
  static MultiPoly from_coefficients(std::string_view var, const std::vector<MultiPoly>& coeffs);

  MultiPoly derivative(std::string_view var) const;
  MultiPoly substitute(std::string_view var, const MultiPoly& value) const;
  MultiPoly substitute(std::string_view var, const Rat& value) const;
  MultiPoly rename(std::string_view from, std::string_view to) const;
  /// Multiplies by a monomial; exponents may be negative as long as the
  /// result stays polynomial.
  MultiPoly shifted(const Exponents& exps) const;
  /// Largest monomial dividing every term, as exponents over variables().
  Exponents monomial_content() const;

  std::complex<double> evaluate(const std::map<std::string, std::complex<double>>& at) const;

  /// Rational c, signed like the leading coefficient, such that p/c has
  /// coprime integer coefficients and a positive leading coefficient.
  Rat content() const;
  MultiPoly primitive_integer() const;
  bool is_monomial() const { return terms_.size() == 1; }

  std::string to_string() const;

 private:
  void insert_term(Exponents exps, const Rat& c);

  std::vector<std::string> vars_;
  TermMap terms_;
};

std::vector<std::string> merge_variables(const std::vector<std::string>& a,
                                         const std::vector<std::string>& b);

}  // namespace charvar::poly
