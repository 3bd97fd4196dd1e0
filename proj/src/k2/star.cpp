#include "charvar/k2/star.hpp"

#include <optional>

#include "charvar/error.hpp"
#include "charvar/poly/algorithms.hpp"

namespace charvar::k2 {

namespace {

std::optional<RatFunc> ratfunc_sqrt(const RatFunc& f) {
  // sqrt(n/d) = sqrt(n d) / d
  auto r = poly::exact_sqrt(f.num() * f.den());
  if (!r) return std::nullopt;
  return RatFunc(*r, f.den());
}

}  // namespace

FormalSymbol star_product(const Matrix2& u, const Matrix2& v) {
  const RatFunc one(Rat(1)), two(Rat(2));
  if (!(det(u) == one) || !(det(v) == one))
    throw Error(ErrorKind::NonCommuting, "star product needs determinant-one matrices");
  const Matrix2 uv = multiply(u, v), vu = multiply(v, u);
  for (std::size_t i = 0; i < 4; ++i)
    if (!(uv[i] == vu[i])) throw Error(ErrorKind::NonCommuting, "matrices do not commute");
  const RatFunc tu = trace(u), tv = trace(v);
  const bool u_pm2 = tu == two || tu == -two, v_pm2 = tv == two || tv == -two;
  if (u_pm2 || v_pm2) {
    FormalSymbol s;
    s.torsion_flag = !(tu == two && tv == two);
    return s;
  }
  auto root = ratfunc_sqrt(tu * tu - RatFunc(Rat(4)));
  if (!root)
    throw Error(ErrorKind::NotHandled, "eigenvalues of the first matrix lie in a field extension");
  const RatFunc ev = (tu + *root) / two;
  // eigenvector of U for ev
  RatFunc x0, x1;
  if (!u[1].is_zero()) {
    x0 = u[1];
    x1 = ev - u[0];
  } else if (!u[2].is_zero()) {
    x0 = ev - u[3];
    x1 = u[2];
  } else if (u[0] == ev) {
    x0 = one;
    x1 = RatFunc();
  } else {
    x0 = RatFunc();
    x1 = one;
  }
  const RatFunc w = x0.is_zero() ? (v[2] * x0 + v[3] * x1) / x1 : (v[0] * x0 + v[1] * x1) / x0;
  return FormalSymbol::pair(SymbolArg::from_ratfunc(ev), SymbolArg::from_ratfunc(w), 2);
}

}  // namespace charvar::k2
