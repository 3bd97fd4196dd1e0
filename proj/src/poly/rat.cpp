#include "charvar/poly/rat.hpp"

#include <cctype>

#include "charvar/error.hpp"

namespace charvar::poly {

namespace {

BigInt parse_int(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw Error(ErrorKind::Parse, "empty integer literal");
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (start == s.size()) throw Error(ErrorKind::Parse, "bad integer literal '" + s + "'");
  for (std::size_t i = start; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i])))
      throw Error(ErrorKind::Parse, "bad integer literal '" + s + "'");
  }
  if (s[0] == '+') s.erase(0, 1);
  return BigInt(s, 10);
}

}  // namespace

Rat::Rat(const BigInt& num, const BigInt& den) : q_(num, den) {
  if (den == 0) throw Error(ErrorKind::DegenerateInput, "rational with zero denominator");
  q_.canonicalize();
}

Rat Rat::parse(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rat(parse_int(text));
  return Rat(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

Rat Rat::inverse() const {
  if (is_zero()) throw Error(ErrorKind::DegenerateInput, "inverse of zero");
  return Rat(mpq_class(1 / q_));
}

Rat& Rat::operator/=(const Rat& o) {
  if (o.is_zero()) throw Error(ErrorKind::DegenerateInput, "division by zero");
  q_ /= o.q_;
  return *this;
}

Rat pow(const Rat& base, int exponent) {
  if (exponent < 0) return pow(base.inverse(), -exponent);
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), base.value().get_num_mpz_t(), static_cast<unsigned long>(exponent));
  mpz_pow_ui(den.get_mpz_t(), base.value().get_den_mpz_t(), static_cast<unsigned long>(exponent));
  return Rat(num, den);
}

}  // namespace charvar::poly
