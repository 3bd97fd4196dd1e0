#include "charvar/repvar/rep_family.hpp"

#include "charvar/error.hpp"
#include "charvar/poly/algorithms.hpp"

namespace charvar::repvar {

using poly::Rat;

MultiPoly ScaledMatrix::denominator() const {
  std::vector<std::string> vars;
  poly::Exponents exps;
  for (const auto& [v, e] : den) {
    vars.push_back(v);
    exps.push_back(e);
  }
  return MultiPoly::monomial(vars, exps, Rat(1));
}

ScaledMatrix ScaledMatrix::operator*(const ScaledMatrix& o) const {
  ScaledMatrix out;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c)
      out.entries[static_cast<std::size_t>(2 * r + c)] = at(r, 0) * o.at(0, c) + at(r, 1) * o.at(1, c);
  out.den = den;
  for (const auto& [v, e] : o.den) out.den[v] += e;
  return out;
}

Eigen::Matrix2cd ScaledMatrix::evaluate(const Values& at_point) const {
  std::complex<double> d = 1.0;
  for (const auto& [v, e] : den) {
    auto it = at_point.find(v);
    if (it == at_point.end()) throw Error(ErrorKind::DegenerateInput, "no value for '" + v + "'");
    d *= std::pow(it->second, e);
  }
  Eigen::Matrix2cd m;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) m(r, c) = at(r, c).evaluate(at_point) / d;
  return m;
}

ScaledMatrix ScaledMatrix::identity() {
  ScaledMatrix m;
  m.entries = {MultiPoly::constant(Rat(1)), MultiPoly(), MultiPoly(), MultiPoly::constant(Rat(1))};
  return m;
}

const std::string& RepFamily::var_of(char generator) const {
  if (meridian_vars.size() == 1 || generator == 'a') return meridian_vars.front();
  return meridian_vars.back();
}

ScaledMatrix RepFamily::letter(char generator, int sign) const {
  const std::string& v = var_of(generator);
  MultiPoly m = MultiPoly::variable(v);
  MultiPoly m2 = m * m;
  MultiPoly one = MultiPoly::constant(Rat(1));
  MultiPoly u = MultiPoly::variable(correlation_var);
  ScaledMatrix out;
  out.den[v] = 1;
  if (generator == 'a') {
    out.entries = sign > 0 ? std::array<MultiPoly, 4>{m2, m, MultiPoly(), one}
                           : std::array<MultiPoly, 4>{one, -m, MultiPoly(), m2};
  } else {
    out.entries = sign > 0 ? std::array<MultiPoly, 4>{m2, MultiPoly(), u * m, one}
                           : std::array<MultiPoly, 4>{one, MultiPoly(), -(u * m), m2};
  }
  return out;
}

RepFamily rep_family(const TwoBridgeCode& code) {
  RepFamily fam;
  fam.pres = presentation(code);
  fam.meridian_vars = code.component_count() == 1 ? std::vector<std::string>{"m"}
                                                  : std::vector<std::string>{"m1", "m2"};
  return fam;
}

ScaledMatrix word_matrix(const RepFamily& fam, const Word& word) {
  ScaledMatrix out = ScaledMatrix::identity();
  for (const auto& s : word.letters()) out = out * fam.letter(s.generator, s.exponent);
  return out;
}

Eigen::Matrix2cd word_matrix_numeric(const RepFamily& fam, const Word& word, const Values& at) {
  auto value = [&](const std::string& v) {
    auto it = at.find(v);
    if (it == at.end()) throw Error(ErrorKind::DegenerateInput, "no value for '" + v + "'");
    return it->second;
  };
  std::complex<double> u = value(fam.correlation_var);
  Eigen::Matrix2cd out = Eigen::Matrix2cd::Identity();
  for (const auto& s : word.letters()) {
    std::complex<double> m = value(fam.var_of(s.generator));
    Eigen::Matrix2cd g;
    if (s.generator == 'a')
      g << m, 1.0, 0.0, 1.0 / m;
    else
      g << m, 0.0, u, 1.0 / m;
    out = out * (s.exponent > 0 ? g : g.inverse().eval());
  }
  return out;
}

bool determinants_are_one(const RepFamily& fam) {
  for (char g : {'a', 'b'}) {
    for (int sign : {1, -1}) {
      ScaledMatrix m = fam.letter(g, sign);
      MultiPoly det = m.at(0, 0) * m.at(1, 1) - m.at(0, 1) * m.at(1, 0);
      MultiPoly d = m.denominator();
      if (!(det == d * d)) return false;
    }
  }
  return true;
}

MultiPoly riley_polynomial(const RepFamily& fam) {
  ScaledMatrix lhs = word_matrix(fam, fam.pres.relator_lhs);
  ScaledMatrix rhs = word_matrix(fam, fam.pres.relator_rhs);
  MultiPoly dl = lhs.denominator(), dr = rhs.denominator();
  MultiPoly g;
  for (std::size_t k = 0; k < 4; ++k) {
    MultiPoly diff = lhs.entries[k] * dr - rhs.entries[k] * dl;
    if (diff.is_zero()) continue;
    g = poly::gcd(g, diff);
  }
  if (g.is_zero())
    throw Error(ErrorKind::InconsistentFamily, "relator holds identically on the family");
  g = g.shifted([&] {
    poly::Exponents e = g.monomial_content();
    for (auto& x : e) x = -x;
    return e;
  }());
  g = g.primitive_integer().trimmed();
  if (g.is_constant())
    throw Error(ErrorKind::InconsistentFamily, "relator entries have no common nonconstant factor");
  return g;
}

}  // namespace charvar::repvar
