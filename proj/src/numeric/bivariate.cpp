#include "charvar/numeric/bivariate.hpp"

#include <algorithm>
#include <cmath>

#include "charvar/error.hpp"

namespace charvar::numeric {

Bivariate::Bivariate(const poly::MultiPoly& p, const std::string& x, const std::string& y) {
  for (const auto& v : p.support_variables())
    if (v != x && v != y)
      throw Error(ErrorKind::WrongArity, "polynomial involves '" + v + "' besides " + x + ", " + y);
  auto ix = p.index_of(x), iy = p.index_of(y);
  for (const auto& [e, c] : p.terms()) {
    Term t{ix ? static_cast<int>(e[*ix]) : 0, iy ? static_cast<int>(e[*iy]) : 0, c.to_double()};
    degree_x_ = std::max(degree_x_, t.i);
    terms_.push_back(t);
  }
}

Bivariate::Value Bivariate::eval(cd x, cd y) const {
  Value v{0.0, 0.0, 0.0, 0.0};
  const double ax = std::abs(x), ay = std::abs(y);
  for (const auto& t : terms_) {
    cd xi = std::pow(x, t.i), yj = std::pow(y, t.j);
    v.f += t.c * xi * yj;
    if (t.i > 0) v.fx += t.c * static_cast<double>(t.i) * std::pow(x, t.i - 1) * yj;
    if (t.j > 0) v.fy += t.c * static_cast<double>(t.j) * xi * std::pow(y, t.j - 1);
    v.scale += std::abs(t.c) * std::pow(ax, t.i) * std::pow(ay, t.j);
  }
  return v;
}

double Bivariate::scaled_residual(cd x, cd y) const {
  Value v = eval(x, y);
  return v.scale == 0.0 ? 0.0 : std::abs(v.f) / v.scale;
}

std::vector<cd> Bivariate::coefficients_in_x(cd y) const {
  std::vector<cd> out(static_cast<std::size_t>(degree_x_) + 1, 0.0);
  for (const auto& t : terms_) out[static_cast<std::size_t>(t.i)] += t.c * std::pow(y, t.j);
  return out;
}

}  // namespace charvar::numeric
