#include "charvar/k2/ratfunc.hpp"

#include "charvar/error.hpp"
#include "charvar/poly/algorithms.hpp"

namespace charvar::k2 {

RatFunc::RatFunc(const MultiPoly& num, const MultiPoly& den) {
  if (den.is_zero()) throw Error(ErrorKind::DegenerateInput, "rational function with zero denominator");
  if (num.is_zero()) {
    den_ = MultiPoly::constant(Rat(1));
    return;
  }
  MultiPoly g = poly::gcd(num, den);
  num_ = poly::divide_exact(num, g).trimmed();
  den_ = poly::divide_exact(den, g).trimmed();
  Rat lc = den_.leading_coefficient().inverse();
  num_ *= lc;
  den_ *= lc;
}

RatFunc RatFunc::parse(std::string_view text) {
  std::string s(text);
  auto b = s.find_first_not_of(" \t");
  auto e = s.find_last_not_of(" \t");
  if (b == std::string::npos) throw Error(ErrorKind::Parse, "empty rational function");
  s = s.substr(b, e - b + 1);
  if (s.front() != '(') return RatFunc(MultiPoly::parse(s));
  auto close = s.find(')');
  if (close == std::string::npos) throw Error(ErrorKind::Parse, "unbalanced parentheses in '" + s + "'");
  MultiPoly num = MultiPoly::parse(s.substr(1, close - 1));
  std::string rest = s.substr(close + 1);
  auto slash = rest.find('/');
  if (rest.find_first_not_of(" ") == std::string::npos) return RatFunc(num);
  if (slash == std::string::npos || rest.find_first_not_of(" ") != slash)
    throw Error(ErrorKind::Parse, "expected '/' in '" + s + "'");
  std::string d = rest.substr(slash + 1);
  auto db = d.find('('), de = d.rfind(')');
  if (db == std::string::npos || de == std::string::npos || de < db)
    throw Error(ErrorKind::Parse, "denominator must be parenthesized in '" + s + "'");
  if (d.find_first_not_of(" ", de + 1) != std::string::npos || d.find_first_not_of(" ") != db)
    throw Error(ErrorKind::Parse, "trailing text in '" + s + "'");
  return RatFunc(num, MultiPoly::parse(d.substr(db + 1, de - db - 1)));
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

RatFunc operator*(const RatFunc& a, const RatFunc& b) { return {a.num_ * b.num_, a.den_ * b.den_}; }

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
  if (b.is_zero()) throw Error(ErrorKind::SingularInput, "division by the zero rational function");
  return {a.num_ * b.den_, a.den_ * b.num_};
}

std::string RatFunc::to_string() const {
  if (den_.is_constant()) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

Matrix2 multiply(const Matrix2& a, const Matrix2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
          a[2] * b[1] + a[3] * b[3]};
}

RatFunc trace(const Matrix2& a) { return a[0] + a[3]; }

RatFunc det(const Matrix2& a) { return a[0] * a[3] - a[1] * a[2]; }

Matrix2 inverse(const Matrix2& a) {
  RatFunc d = det(a);
  if (d.is_zero()) throw Error(ErrorKind::SingularInput, "matrix is not invertible");
  return {a[3] / d, -a[1] / d, -a[2] / d, a[0] / d};
}

}  // namespace charvar::k2
