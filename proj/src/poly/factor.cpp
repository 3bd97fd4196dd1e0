#include "charvar/poly/factor.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "charvar/error.hpp"
#include "charvar/poly/algorithms.hpp"

namespace charvar::poly {

namespace {

using ZPoly = std::vector<BigInt>;
using FpPoly = std::vector<long long>;

// ---- helpers over Z ------------------------------------------------------

void trim(ZPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

ZPoly to_zpoly(const MultiPoly& p, const std::string& var) {
  ZPoly out(static_cast<std::size_t>(std::max(p.degree(var), 0)) + 1, BigInt(0));
  auto coeffs = p.coefficients_in(var);
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    Rat c = coeffs[i].constant_term();
    if (!c.is_integer()) throw Error(ErrorKind::Internal, "expected integer coefficients");
    out[i] = c.numerator();
  }
  trim(out);
  return out;
}

MultiPoly from_zpoly(const ZPoly& a, const std::string& var) {
  MultiPoly out(std::vector<std::string>{var});
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    out += MultiPoly::monomial({var}, {static_cast<int>(i)}, Rat(a[i]));
  }
  return out;
}

ZPoly zmul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly out(a.size() + b.size() - 1, BigInt(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  trim(out);
  return out;
}

BigInt mod_pos(const BigInt& a, const BigInt& m) {
  BigInt r = a % m;
  if (r < 0) r += m;
  return r;
}

void zreduce(ZPoly& a, const BigInt& m) {
  for (auto& c : a) c = mod_pos(c, m);
  trim(a);
}

void zsymmetric(ZPoly& a, const BigInt& m) {
  BigInt half = m / 2;
  for (auto& c : a) {
    c = mod_pos(c, m);
    if (c > half) c -= m;
  }
  trim(a);
}

// ---- helpers over F_p ----------------------------------------------------

void trim(FpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

long long inv_mod(long long a, long long p) {
  long long t = 0, nt = 1, r = p, nr = ((a % p) + p) % p;
  while (nr != 0) {
    long long q = r / nr;
    std::tie(t, nt) = std::make_pair(nt, t - q * nt);
    std::tie(r, nr) = std::make_pair(nr, r - q * nr);
  }
  if (r != 1) throw Error(ErrorKind::Internal, "non-invertible residue");
  return (t % p + p) % p;
}

FpPoly fp_from(const ZPoly& a, long long p) {
  FpPoly out(a.size());
  BigInt bp(static_cast<long>(p));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = mod_pos(a[i], bp).get_si();
  trim(out);
  return out;
}

ZPoly z_from(const FpPoly& a) {
  ZPoly out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = BigInt(static_cast<long>(a[i]));
  return out;
}

FpPoly fp_add(const FpPoly& a, const FpPoly& b, long long p) {
  FpPoly out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = (out[i] + b[i]) % p;
  trim(out);
  return out;
}

FpPoly fp_sub(const FpPoly& a, const FpPoly& b, long long p) {
  FpPoly out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = (out[i] - b[i] + p) % p;
  trim(out);
  return out;
}

FpPoly fp_mul(const FpPoly& a, const FpPoly& b, long long p) {
  if (a.empty() || b.empty()) return {};
  FpPoly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = (out[i + j] + a[i] * b[j]) % p;
  }
  trim(out);
  return out;
}

// Returns (quotient, remainder).
std::pair<FpPoly, FpPoly> fp_divmod(FpPoly a, const FpPoly& b, long long p) {
  if (b.empty()) throw Error(ErrorKind::Internal, "division by zero modulo p");
  if (a.size() < b.size()) return {{}, a};
  long long inv = inv_mod(b.back(), p);
  FpPoly q(a.size() - b.size() + 1, 0);
  for (std::size_t shift = q.size(); shift-- > 0;) {
    long long c = a[shift + b.size() - 1] * inv % p;
    q[shift] = c;
    if (c != 0)
      for (std::size_t j = 0; j < b.size(); ++j)
        a[shift + j] = ((a[shift + j] - c * b[j]) % p + p) % p;
  }
  trim(a);
  trim(q);
  return {q, a};
}

FpPoly fp_mod(const FpPoly& a, const FpPoly& b, long long p) { return fp_divmod(a, b, p).second; }

FpPoly fp_monic(FpPoly a, long long p) {
  if (a.empty()) return a;
  long long inv = inv_mod(a.back(), p);
  for (auto& c : a) c = c * inv % p;
  return a;
}

FpPoly fp_gcd(FpPoly a, FpPoly b, long long p) {
  while (!b.empty()) {
    FpPoly r = fp_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return fp_monic(a, p);
}

// s, t with s*a + t*b = 1 (a, b coprime).
std::pair<FpPoly, FpPoly> fp_bezout(const FpPoly& a, const FpPoly& b, long long p) {
  FpPoly r0 = a, r1 = b, s0 = {1}, s1 = {}, t0 = {}, t1 = {1};
  while (!r1.empty()) {
    auto [q, r] = fp_divmod(r0, r1, p);
    FpPoly s2 = fp_sub(s0, fp_mul(q, s1, p), p);
    FpPoly t2 = fp_sub(t0, fp_mul(q, t1, p), p);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.size() != 1) throw Error(ErrorKind::Internal, "Hensel factors not coprime modulo p");
  long long inv = inv_mod(r0[0], p);
  for (auto& c : s0) c = c * inv % p;
  for (auto& c : t0) c = c * inv % p;
  return {s0, t0};
}

FpPoly fp_powmod(FpPoly base, unsigned long long e, const FpPoly& m, long long p) {
  FpPoly result = {1};
  base = fp_mod(base, m, p);
  while (e) {
    if (e & 1ULL) result = fp_mod(fp_mul(result, base, p), m, p);
    e >>= 1ULL;
    if (e) base = fp_mod(fp_mul(base, base, p), m, p);
  }
  return result;
}

// Distinct-degree factorization of a monic squarefree polynomial.
std::vector<std::pair<FpPoly, int>> fp_ddf(FpPoly f, long long p) {
  std::vector<std::pair<FpPoly, int>> out;
  FpPoly x = {0, 1};
  FpPoly h = x;
  int d = 0;
  while (static_cast<int>(f.size()) - 1 >= 2 * (d + 1)) {
    ++d;
    h = fp_powmod(h, static_cast<unsigned long long>(p), f, p);
    FpPoly g = fp_gcd(f, fp_sub(h, x, p), p);
    if (g.size() > 1) {
      out.emplace_back(g, d);
      f = fp_divmod(f, g, p).first;
      h = fp_mod(h, f, p);
    }
  }
  if (f.size() > 1) out.emplace_back(fp_monic(f, p), static_cast<int>(f.size()) - 1);
  return out;
}

// Equal-degree splitting (Cantor-Zassenhaus), p odd.
void fp_edf(const FpPoly& g, int d, long long p, std::mt19937_64& rng,
            std::vector<FpPoly>& out) {
  const int n = static_cast<int>(g.size()) - 1;
  if (n == d) {
    out.push_back(g);
    return;
  }
  std::uniform_int_distribution<long long> coef(0, p - 1);
  while (true) {
    FpPoly a(static_cast<std::size_t>(n));
    for (auto& c : a) c = coef(rng);
    trim(a);
    if (a.size() <= 1) continue;
    // a^((p^d - 1) / 2) = (a^(1 + p + ... + p^(d-1)))^((p - 1) / 2)
    FpPoly t = fp_mod(a, g, p);
    FpPoly s = t;
    for (int i = 1; i < d; ++i) {
      t = fp_powmod(t, static_cast<unsigned long long>(p), g, p);
      s = fp_mod(fp_mul(s, t, p), g, p);
    }
    FpPoly b = fp_powmod(s, static_cast<unsigned long long>((p - 1) / 2), g, p);
    FpPoly h = fp_gcd(g, fp_sub(b, {1}, p), p);
    if (h.size() > 1 && h.size() < g.size()) {
      fp_edf(h, d, p, rng, out);
      fp_edf(fp_monic(fp_divmod(g, h, p).first, p), d, p, rng, out);
      return;
    }
  }
}

std::vector<FpPoly> fp_factor(const FpPoly& f, long long p) {
  std::mt19937_64 rng(0x5eedULL + static_cast<unsigned long long>(p));
  std::vector<FpPoly> out;
  for (const auto& [g, d] : fp_ddf(fp_monic(f, p), p)) fp_edf(g, d, p, rng, out);
  std::sort(out.begin(), out.end());
  return out;
}

bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// ---- Hensel lifting ------------------------------------------------------

// f = G * H mod p^k with G monic, G = g mod p, H = h mod p.
std::pair<ZPoly, ZPoly> hensel_lift(const ZPoly& f, const FpPoly& g, const FpPoly& h, long long p,
                                    int k) {
  auto [s, t] = fp_bezout(g, h, p);
  ZPoly G = z_from(g), H = z_from(h);
  BigInt m(static_cast<long>(p));
  BigInt bp(static_cast<long>(p));
  for (int j = 1; j < k; ++j) {
    ZPoly diff = f;
    ZPoly gh = zmul(G, H);
    diff.resize(std::max(diff.size(), gh.size()), BigInt(0));
    for (std::size_t i = 0; i < gh.size(); ++i) diff[i] -= gh[i];
    trim(diff);
    for (auto& c : diff) {
      if (!mpz_divisible_p(c.get_mpz_t(), m.get_mpz_t()))
        throw Error(ErrorKind::Internal, "Hensel invariant violated");
      c /= m;
    }
    FpPoly e = fp_from(diff, p);
    auto [q, r] = fp_divmod(fp_mul(t, e, p), g, p);
    FpPoly dh = fp_add(fp_mul(s, e, p), fp_mul(q, h, p), p);
    ZPoly zr = z_from(r), zdh = z_from(dh);
    G.resize(std::max(G.size(), zr.size()), BigInt(0));
    for (std::size_t i = 0; i < zr.size(); ++i) G[i] += m * zr[i];
    H.resize(std::max(H.size(), zdh.size()), BigInt(0));
    for (std::size_t i = 0; i < zdh.size(); ++i) H[i] += m * zdh[i];
    m *= bp;
  }
  zreduce(G, m);
  zreduce(H, m);
  return {G, H};
}

// Lifts f = lc * prod(factors) mod p to monic factors mod p^k.
std::vector<ZPoly> hensel_lift_all(ZPoly f, const std::vector<FpPoly>& factors, long long p,
                                   int k, const BigInt& modulus) {
  std::vector<ZPoly> out;
  for (std::size_t i = 0; i + 1 < factors.size(); ++i) {
    FpPoly rest = fp_from(ZPoly{f.back()}, p);
    for (std::size_t j = i + 1; j < factors.size(); ++j) rest = fp_mul(rest, factors[j], p);
    auto [G, H] = hensel_lift(f, factors[i], rest, p, k);
    out.push_back(std::move(G));
    f = std::move(H);
  }
  BigInt inv;
  BigInt lc = mod_pos(f.back(), modulus);
  if (mpz_invert(inv.get_mpz_t(), lc.get_mpz_t(), modulus.get_mpz_t()) == 0)
    throw Error(ErrorKind::Internal, "leading coefficient not invertible modulo p^k");
  for (auto& c : f) c *= inv;
  zreduce(f, modulus);
  out.push_back(std::move(f));
  return out;
}

// ---- Zassenhaus ---------------------------------------------------------

std::vector<MultiPoly> zassenhaus(const MultiPoly& fp, const std::string& var) {
  ZPoly f = to_zpoly(fp, var);
  const int n = static_cast<int>(f.size()) - 1;
  if (n <= 1) return {fp};

  ZPoly df(f.size() - 1);
  for (std::size_t i = 1; i < f.size(); ++i) df[i - 1] = f[i] * static_cast<long>(i);

  long long best_p = 0;
  std::vector<FpPoly> best;
  int good = 0;
  for (long long p = 3; good < 3 && p < 100000; p += 2) {
    if (!is_prime(p)) continue;
    if (mod_pos(f.back(), BigInt(static_cast<long>(p))) == 0) continue;
    FpPoly fm = fp_from(f, p);
    if (fp_gcd(fm, fp_from(df, p), p).size() != 1) continue;
    ++good;
    auto fac = fp_factor(fm, p);
    if (best_p == 0 || fac.size() < best.size()) {
      best_p = p;
      best = std::move(fac);
    }
    if (best.size() == 1) break;
  }
  if (best_p == 0) throw Error(ErrorKind::Internal, "no suitable prime for factorization");
  if (best.size() == 1) return {fp};

  // Mignotte-type bound on factor coefficients, times the leading coefficient.
  BigInt maxc = 0;
  for (const auto& c : f) maxc = std::max(maxc, BigInt(abs(c)));
  BigInt bound = maxc * BigInt(n + 1) * BigInt(abs(f.back()));
  mpz_mul_2exp(bound.get_mpz_t(), bound.get_mpz_t(), static_cast<mp_bitcnt_t>(n + 1));
  BigInt modulus(static_cast<long>(best_p));
  int k = 1;
  while (modulus <= bound) {
    modulus *= static_cast<long>(best_p);
    ++k;
  }

  std::vector<ZPoly> lifted = hensel_lift_all(f, best, best_p, k, modulus);

  std::vector<MultiPoly> out;
  MultiPoly F = fp;
  std::size_t d = 1;
  while (2 * d <= lifted.size()) {
    bool found = false;
    std::vector<std::size_t> idx(d);
    for (std::size_t i = 0; i < d; ++i) idx[i] = i;
    while (true) {
      ZPoly cand = {to_zpoly(F, var).back()};
      for (std::size_t i : idx) cand = zmul(cand, lifted[i]);
      zsymmetric(cand, modulus);
      MultiPoly g = from_zpoly(cand, var);
      if (g.degree(var) > 0) {
        g = g.primitive_integer();
        if (auto q = try_divide(F, g)) {
          out.push_back(g);
          F = q->primitive_integer();
          for (std::size_t i = d; i-- > 0;)
            lifted.erase(lifted.begin() + static_cast<std::ptrdiff_t>(idx[i]));
          found = true;
          break;
        }
      }
      // next combination
      std::size_t i = d;
      while (i > 0 && idx[i - 1] == lifted.size() - d + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < d; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!found) ++d;
  }
  if (F.degree(var) > 0) out.push_back(F);
  return out;
}

std::string sole_variable(const MultiPoly& p) {
  auto support = p.support_variables();
  if (support.size() > 1)
    throw Error(ErrorKind::NonUnivariate, "expected a univariate polynomial, got " + p.to_string());
  if (support.empty()) return p.variables().empty() ? std::string("x") : p.variables().front();
  return support.front();
}

bool factor_less(const std::pair<MultiPoly, int>& a, const std::pair<MultiPoly, int>& b) {
  int da = a.first.total_degree(), db = b.first.total_degree();
  if (da != db) return da < db;
  const auto& ta = a.first.terms();
  const auto& tb = b.first.terms();
  auto ia = ta.rbegin();
  auto ib = tb.rbegin();
  for (; ia != ta.rend() && ib != tb.rend(); ++ia, ++ib) {
    if (ia->first != ib->first) return GradedLex{}(ib->first, ia->first);
    if (ia->second != ib->second) return ia->second < ib->second;
  }
  if ((ia == ta.rend()) != (ib == tb.rend())) return ia == ta.rend();
  return a.second < b.second;
}

}  // namespace

MultiPoly Factorization::expand() const {
  MultiPoly out = MultiPoly::constant(content);
  for (const auto& [f, e] : factors) out *= f.pow(static_cast<unsigned>(e));
  return out;
}

std::vector<std::pair<MultiPoly, int>> squarefree_decomposition(const MultiPoly& p) {
  if (p.is_zero()) throw Error(ErrorKind::DegenerateInput, "squarefree decomposition of zero");
  const std::string x = sole_variable(p);
  std::vector<std::pair<MultiPoly, int>> out;
  if (!p.involves(x)) return out;
  MultiPoly f = p.primitive_integer();
  MultiPoly df = f.derivative(x);
  MultiPoly a = gcd(f, df);
  MultiPoly b = divide_exact(f, a);
  MultiPoly c = divide_exact(df, a);
  MultiPoly d = c - b.derivative(x);
  int i = 1;
  while (b.degree(x) > 0) {
    MultiPoly ai = gcd(b, d);
    b = divide_exact(b, ai);
    c = divide_exact(d, ai);
    d = c - b.derivative(x);
    if (ai.degree(x) > 0) out.emplace_back(ai.primitive_integer().over({x}), i);
    ++i;
  }
  return out;
}

Factorization univariate_factor(const MultiPoly& p) {
  if (p.is_zero()) throw Error(ErrorKind::DegenerateInput, "factorization of zero");
  const std::string x = sole_variable(p);
  if (p.degree(x) > kFactorDegreeCap)
    throw Error(ErrorKind::DegreeCap, "degree " + std::to_string(p.degree(x)) +
                                          " exceeds factorization cap " +
                                          std::to_string(kFactorDegreeCap));
  Factorization out;
  for (const auto& [part, mult] : squarefree_decomposition(p))
    for (auto& g : zassenhaus(part, x)) out.factors.emplace_back(g.over({x}), mult);
  std::sort(out.factors.begin(), out.factors.end(), factor_less);
  Rat lc = p.leading_coefficient();
  Rat prod(1);
  for (const auto& [f, e] : out.factors) prod *= pow(f.leading_coefficient(), e);
  out.content = lc / prod;
  return out;
}

int euler_phi(int k) {
  if (k <= 0) throw Error(ErrorKind::DegenerateInput, "euler_phi of non-positive integer");
  int result = k, n = k;
  for (int d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    while (n % d == 0) n /= d;
    result -= result / d;
  }
  if (n > 1) result -= result / n;
  return result;
}

MultiPoly cyclotomic_polynomial(int k, std::string_view var) {
  if (k <= 0) throw Error(ErrorKind::DegenerateInput, "cyclotomic index must be positive");
  // Phi_k = prod_{d | k} (x^d - 1)^mu(k/d); multiply first, then divide.
  auto mobius = [](int n) {
    int mu = 1;
    for (int d = 2; d * d <= n; ++d) {
      if (n % d) continue;
      n /= d;
      if (n % d == 0) return 0;
      mu = -mu;
    }
    if (n > 1) mu = -mu;
    return mu;
  };
  std::vector<int> num, den;
  for (int d = 1; d <= k; ++d) {
    if (k % d) continue;
    int mu = mobius(k / d);
    if (mu > 0) num.push_back(d);
    if (mu < 0) den.push_back(d);
  }
  ZPoly a = {BigInt(1)};
  for (int d : num) {
    ZPoly t(static_cast<std::size_t>(d) + 1, BigInt(0));
    t[0] = -1;
    t[static_cast<std::size_t>(d)] = 1;
    a = zmul(a, t);
  }
  for (int d : den) {
    // divide by x^d - 1: q_i = q_{i+d} + ... computed from the top.
    const std::size_t ud = static_cast<std::size_t>(d);
    ZPoly q(a.size() - ud, BigInt(0));
    ZPoly r = a;
    for (std::size_t i = r.size(); i-- > ud;) {
      BigInt c = r[i];
      q[i - ud] = c;
      r[i] -= c;
      r[i - ud] += c;
    }
    a = std::move(q);
  }
  return from_zpoly(a, std::string(var));
}

std::optional<int> cyclotomic_index(const MultiPoly& p) {
  if (p.is_zero()) return std::nullopt;
  const std::string x = sole_variable(p);
  int d = p.degree(x);
  if (d <= 0) return std::nullopt;
  MultiPoly g = p.primitive_integer().over({x});
  // phi(k) >= sqrt(k / 2), so phi(k) = d forces k <= 2 d^2.
  int limit = std::max(2, 2 * d * d);
  for (int k = 1; k <= limit; ++k) {
    if (euler_phi(k) != d) continue;
    if (cyclotomic_polynomial(k, x) == g) return k;
  }
  return std::nullopt;
}

CyclotomicCertificate is_cyclotomic_product(const MultiPoly& p) {
  if (p.is_zero()) throw Error(ErrorKind::DegenerateInput, "cyclotomic test of zero");
  const std::string x = sole_variable(p);
  CyclotomicCertificate cert;
  cert.cyclotomic = true;
  Factorization fac = univariate_factor(p);
  MultiPoly var = MultiPoly::variable(x);
  for (const auto& [f, e] : fac.factors) {
    if (f == var) continue;
    auto k = cyclotomic_index(f);
    if (!k) {
      cert.cyclotomic = false;
      if (!cert.failure_factor) cert.failure_factor = f;
      continue;
    }
    for (int i = 0; i < e; ++i) cert.indices.push_back(*k);
  }
  std::sort(cert.indices.begin(), cert.indices.end());
  return cert;
}

}  // namespace charvar::poly
