#include "charvar/poly/algorithms.hpp"

#include <algorithm>

#include "charvar/error.hpp"

namespace charvar::poly {

std::optional<MultiPoly> try_divide(const MultiPoly& a, const MultiPoly& b) {
  if (b.is_zero()) throw Error(ErrorKind::DegenerateInput, "division by the zero polynomial");
  auto vars = merge_variables(a.variables(), b.variables());
  MultiPoly r = a.over(vars);
  MultiPoly d = b.over(vars);
  MultiPoly q(vars);
  const Exponents& lb = d.leading_exponents();
  Rat lc_inv = d.leading_coefficient().inverse();
  Exponents shift(vars.size());
  while (!r.is_zero()) {
    const Exponents& lr = r.leading_exponents();
    for (std::size_t i = 0; i < vars.size(); ++i) {
      shift[i] = lr[i] - lb[i];
      if (shift[i] < 0) return std::nullopt;
    }
    Rat c = r.leading_coefficient() * lc_inv;
    q += MultiPoly::monomial(vars, shift, c);
    MultiPoly step = d.shifted(shift);
    step *= c;
    r -= step;
  }
  return q;
}

MultiPoly divide_exact(const MultiPoly& a, const MultiPoly& b) {
  auto q = try_divide(a, b);
  if (!q) throw Error(ErrorKind::Internal, "inexact polynomial division");
  return *q;
}

MultiPoly pseudo_remainder(const MultiPoly& a, const MultiPoly& b, std::string_view var) {
  int db = b.degree(var);
  if (db < 0) throw Error(ErrorKind::DegenerateInput, "pseudo-remainder by zero");
  auto bc = b.coefficients_in(var);
  const MultiPoly& lb = bc.back();
  MultiPoly x = MultiPoly::variable(var);
  MultiPoly r = a;
  int steps = std::max(a.degree(var) - db + 1, 0);
  int done = 0;
  while (!r.is_zero() && r.degree(var) >= db) {
    int dr = r.degree(var);
    auto rc = r.coefficients_in(var);
    MultiPoly lr = rc.back();
    // r <- lb * r - lr * x^(dr-db) * b
    r = lb * r - lr * x.pow(static_cast<unsigned>(dr - db)) * b;
    ++done;
  }
  for (; done < steps; ++done) r *= lb;
  return r;
}

MultiPoly content_in(const MultiPoly& p, std::string_view var) {
  MultiPoly g;
  for (const auto& c : p.coefficients_in(var)) {
    if (c.is_zero()) continue;
    g = gcd(g, c);
    if (g.is_constant()) break;
  }
  return g;
}

MultiPoly primitive_part_in(const MultiPoly& p, std::string_view var) {
  if (p.is_zero()) return p;
  return divide_exact(p, content_in(p, var)).primitive_integer();
}

MultiPoly gcd(const MultiPoly& a, const MultiPoly& b) {
  if (a.is_zero()) return b.primitive_integer().trimmed();
  if (b.is_zero()) return a.primitive_integer().trimmed();
  auto support = merge_variables(a.support_variables(), b.support_variables());
  if (support.empty()) return MultiPoly::constant(Rat(1));
  const std::string x = support.front();
  if (!a.involves(x)) return gcd(a, content_in(b, x));
  if (!b.involves(x)) return gcd(content_in(a, x), b);

  MultiPoly ca = content_in(a, x);
  MultiPoly cb = content_in(b, x);
  MultiPoly c = gcd(ca, cb);
  MultiPoly f = divide_exact(a, ca).primitive_integer();
  MultiPoly g = divide_exact(b, cb).primitive_integer();
  if (f.degree(x) < g.degree(x)) std::swap(f, g);
  while (!g.is_zero()) {
    if (g.degree(x) == 0) {
      f = MultiPoly::constant(Rat(1));
      break;
    }
    MultiPoly r = pseudo_remainder(f, g, x);
    f = std::move(g);
    g = r.is_zero() ? r : primitive_part_in(r, x);
  }
  return (primitive_part_in(f, x) * c).primitive_integer().trimmed();
}

MultiPoly squarefree_part(const MultiPoly& p) {
  if (p.is_zero()) return p;
  MultiPoly g = p;
  for (const auto& v : p.support_variables()) {
    g = gcd(g, p.derivative(v));
    if (g.is_constant()) break;
  }
  return divide_exact(p, g).primitive_integer().trimmed();
}

MultiPoly determinant(std::vector<std::vector<MultiPoly>> m) {
  const std::size_t n = m.size();
  if (n == 0) return MultiPoly::constant(Rat(1));
  int sign = 1;
  MultiPoly prev = MultiPoly::constant(Rat(1));
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t i = k + 1;
      while (i < n && m[i][k].is_zero()) ++i;
      if (i == n) return MultiPoly();
      std::swap(m[i], m[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        MultiPoly t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        m[i][j] = divide_exact(t, prev);
      }
      m[i][k] = MultiPoly();
    }
    prev = m[k][k];
  }
  MultiPoly d = m[n - 1][n - 1];
  if (sign < 0) d = -d;
  return d;
}

MultiPoly resultant(const MultiPoly& p, const MultiPoly& q, std::string_view var) {
  if (p.is_zero() || q.is_zero())
    throw Error(ErrorKind::DegenerateInput, "resultant of the zero polynomial");
  if (!p.involves(var) || !q.involves(var))
    throw Error(ErrorKind::DegenerateInput,
                "resultant: both polynomials must involve '" + std::string(var) + "'");
  auto a = p.coefficients_in(var);
  auto b = q.coefficients_in(var);
  const std::size_t dm = a.size() - 1;
  const std::size_t dn = b.size() - 1;
  const std::size_t n = dm + dn;
  std::vector<std::vector<MultiPoly>> s(n, std::vector<MultiPoly>(n));
  for (std::size_t r = 0; r < dn; ++r)
    for (std::size_t k = 0; k <= dm; ++k) s[r][r + k] = a[dm - k];
  for (std::size_t r = 0; r < dm; ++r)
    for (std::size_t k = 0; k <= dn; ++k) s[dn + r][r + k] = b[dn - k];
  MultiPoly d = determinant(std::move(s));
  return d.trimmed();
}

namespace {

std::optional<Rat> rational_sqrt(const Rat& r) {
  if (r.sign() < 0) return std::nullopt;
  BigInt n = r.numerator(), d = r.denominator();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
  return Rat(BigInt(sqrt(n)), BigInt(sqrt(d)));
}

}  // namespace

std::optional<MultiPoly> exact_sqrt(const MultiPoly& p) {
  MultiPoly a = p.trimmed();
  if (a.is_zero()) return a;
  const auto& vars = a.variables();
  auto c = rational_sqrt(a.leading_coefficient());
  if (!c) return std::nullopt;
  Exponents half = a.leading_exponents();
  for (auto& e : half) {
    if (e % 2 != 0) return std::nullopt;
    e /= 2;
  }
  const Exponents top = half;
  const Rat two_c = Rat(2) * *c;
  MultiPoly r = MultiPoly::monomial(vars, half, *c);
  MultiPoly rem = a - r * r;
  Exponents last = half;
  GradedLex less;
  while (!rem.is_zero()) {
    rem = rem.over(vars);
    Exponents e = rem.leading_exponents();
    for (std::size_t i = 0; i < e.size(); ++i) {
      e[i] -= top[i];
      if (e[i] < 0) return std::nullopt;
    }
    if (!less(e, last)) return std::nullopt;
    MultiPoly t = MultiPoly::monomial(vars, e, rem.leading_coefficient() / two_c);
    rem -= t * (Rat(2) * r + t);
    r += t;
    last = e;
  }
  return r;
}

}  // namespace charvar::poly
