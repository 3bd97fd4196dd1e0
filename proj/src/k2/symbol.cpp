#include "charvar/k2/symbol.hpp"

#include <cctype>
#include <map>

#include "charvar/error.hpp"

namespace charvar::k2 {

namespace {

std::string strip(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

void add_base(std::vector<std::pair<MultiPoly, int>>& bases, const MultiPoly& b, int power) {
  for (auto it = bases.begin(); it != bases.end(); ++it)
    if (it->first == b) {
      it->second += power;
      if (it->second == 0) bases.erase(it);
      return;
    }
  if (power != 0) bases.emplace_back(b, power);
}

void multiply_in(SymbolArg& acc, const SymbolArg& x, int power) {
  acc.constant *= poly::pow(x.constant, power);
  for (const auto& [b, k] : x.bases) add_base(acc.bases, b, k * power);
}

// -1, a positive rational, or a primitive polynomial.
struct Atom {
  int kind = 0;
  Rat c{1};
  MultiPoly p;

  std::string key() const {
    return std::to_string(kind) + (kind == 1 ? c.to_string() : kind == 2 ? p.to_string() : "");
  }
  RatFunc value() const { return kind == 0 ? RatFunc(Rat(-1)) : kind == 1 ? RatFunc(c) : RatFunc(p); }
  SymbolArg arg() const {
    if (kind == 0) return SymbolArg(Rat(-1));
    if (kind == 1) return SymbolArg(c);
    SymbolArg a;
    a.bases.emplace_back(p, 1);
    return a;
  }
};

const Atom kMinusOne{0, Rat(1), MultiPoly()};

// Trial division up to 10^6; a larger leftover cofactor stays one atom.
std::vector<std::pair<poly::BigInt, long>> prime_powers(poly::BigInt n) {
  std::vector<std::pair<poly::BigInt, long>> out;
  for (unsigned long d = 2; d <= 1000000 && d * d <= n; ++d) {
    long k = 0;
    while (n % d == 0) {
      n /= d;
      ++k;
    }
    if (k > 0) out.emplace_back(poly::BigInt(d), k);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::vector<std::pair<Atom, long>> atoms_of(const SymbolArg& a) {
  std::vector<std::pair<Atom, long>> out;
  if (a.constant.sign() < 0) out.push_back({kMinusOne, 1});
  const Rat c = a.constant.abs();
  for (const auto& [prime, k] : prime_powers(c.numerator())) out.push_back({Atom{1, Rat(prime), MultiPoly()}, k});
  for (const auto& [prime, k] : prime_powers(c.denominator())) out.push_back({Atom{1, Rat(prime), MultiPoly()}, -k});
  for (const auto& [b, k] : a.bases) out.push_back({Atom{2, Rat(1), b}, k});
  return out;
}

struct AtomPair {
  Atom a, b;
  long k;
};

}  // namespace

SymbolArg::SymbolArg(const MultiPoly& p0) {
  MultiPoly p = p0.trimmed();
  if (p.is_zero()) throw Error(ErrorKind::DegenerateInput, "symbol entry is zero");
  MultiPoly prim = p.primitive_integer();
  constant = p.leading_coefficient() / prim.leading_coefficient();
  poly::Exponents e = prim.monomial_content();
  const auto& vars = prim.variables();
  for (std::size_t i = 0; i < vars.size(); ++i)
    if (e[i] > 0) add_base(bases, MultiPoly::variable(vars[i]), e[i]);
  for (auto& x : e) x = -x;
  MultiPoly rest = prim.shifted(e).trimmed();
  if (rest.is_constant()) {
    constant *= rest.constant_term();
  } else {
    if (rest.leading_coefficient().sign() < 0) {
      rest = -rest;
      constant = -constant;
    }
    add_base(bases, rest, 1);
  }
}

SymbolArg SymbolArg::from_ratfunc(const RatFunc& f) {
  SymbolArg out(f.num());
  multiply_in(out, SymbolArg(f.den()), -1);
  return out;
}

SymbolArg SymbolArg::parse(std::string_view text) {
  std::string s = strip(text);
  if (s.empty()) throw Error(ErrorKind::Parse, "empty symbol entry");
  if (s.front() != '(') return SymbolArg(MultiPoly::parse(s));
  SymbolArg out;
  std::size_t i = 0;
  int sign = 1;
  while (true) {
    while (i < s.size() && s[i] == ' ') ++i;
    if (i >= s.size() || s[i] != '(') throw Error(ErrorKind::Parse, "expected '(' in '" + s + "'");
    int depth = 0;
    std::size_t j = i;
    for (; j < s.size(); ++j) {
      if (s[j] == '(') ++depth;
      if (s[j] == ')' && --depth == 0) break;
    }
    if (j >= s.size()) throw Error(ErrorKind::Parse, "unbalanced parentheses in '" + s + "'");
    SymbolArg group(MultiPoly::parse(s.substr(i + 1, j - i - 1)));
    i = j + 1;
    int power = 1;
    if (i < s.size() && s[i] == '^') {
      std::size_t used = 0;
      try {
        power = std::stoi(s.substr(i + 1), &used);
      } catch (const std::logic_error&) {
        throw Error(ErrorKind::Parse, "bad exponent in '" + s + "'");
      }
      i += 1 + used;
    }
    multiply_in(out, group, sign * power);
    while (i < s.size() && s[i] == ' ') ++i;
    if (i >= s.size()) break;
    if (s[i] == '*') sign = 1;
    else if (s[i] == '/') sign = -1;
    else throw Error(ErrorKind::Parse, "unexpected '" + std::string(1, s[i]) + "' in '" + s + "'");
    ++i;
  }
  return out;
}

RatFunc SymbolArg::value() const {
  RatFunc v(constant);
  for (const auto& [b, k] : bases) {
    RatFunc bk(b);
    for (int i = 0; i < std::abs(k); ++i) v = k > 0 ? v * bk : v / bk;
  }
  return v;
}

std::string SymbolArg::to_string() const {
  if (bases.empty()) return constant.to_string();
  if (constant.is_one() && bases.size() == 1 && bases[0].second == 1) return bases[0].first.to_string();
  std::string num, den;
  if (!constant.is_one()) num = "(" + constant.to_string() + ")";
  for (const auto& [b, k] : bases) {
    std::string g = "(" + b.to_string() + ")";
    if (std::abs(k) != 1) g += "^" + std::to_string(std::abs(k));
    std::string& side = k > 0 ? num : den;
    if (k > 0 && !side.empty()) side += "*";
    if (k < 0) side += "/";
    side += g;
  }
  return (num.empty() ? "(1)" : num) + den;
}

FormalSymbol FormalSymbol::pair(const SymbolArg& f, const SymbolArg& g, long exponent) {
  FormalSymbol s;
  s.factors.push_back({f, g, exponent});
  return s;
}

FormalSymbol FormalSymbol::operator*(const FormalSymbol& o) const {
  FormalSymbol out = *this;
  out.factors.insert(out.factors.end(), o.factors.begin(), o.factors.end());
  out.torsion_flag = torsion_flag || o.torsion_flag;
  return out;
}

FormalSymbol FormalSymbol::pow(long k) const {
  FormalSymbol out = *this;
  for (auto& f : out.factors) f.exponent *= k;
  if (k == 0) out.factors.clear();
  return out;
}

FormalSymbol FormalSymbol::parse(std::string_view text) {
  std::string s = strip(text);
  FormalSymbol out;
  if (s == "1") return out;
  std::size_t i = 0;
  while (true) {
    while (i < s.size() && s[i] == ' ') ++i;
    if (i >= s.size() || s[i] != '{') throw Error(ErrorKind::Parse, "expected '{' in symbol '" + s + "'");
    std::size_t close = s.find('}', i);
    if (close == std::string::npos) throw Error(ErrorKind::Parse, "missing '}' in symbol '" + s + "'");
    std::string inner = s.substr(i + 1, close - i - 1);
    std::size_t comma = std::string::npos;
    int depth = 0;
    for (std::size_t j = 0; j < inner.size(); ++j) {
      if (inner[j] == '(') ++depth;
      else if (inner[j] == ')') --depth;
      else if (inner[j] == ',' && depth == 0) {
        if (comma != std::string::npos) throw Error(ErrorKind::Parse, "symbol needs exactly two entries");
        comma = j;
      }
    }
    if (comma == std::string::npos) throw Error(ErrorKind::Parse, "symbol needs exactly two entries");
    SymbolFactor f{SymbolArg::parse(inner.substr(0, comma)), SymbolArg::parse(inner.substr(comma + 1)), 1};
    i = close + 1;
    if (i < s.size() && s[i] == '^') {
      std::size_t used = 0;
      try {
        f.exponent = std::stol(s.substr(i + 1), &used);
      } catch (const std::logic_error&) {
        throw Error(ErrorKind::Parse, "bad exponent in symbol '" + s + "'");
      }
      i += 1 + used;
    }
    out.factors.push_back(std::move(f));
    while (i < s.size() && s[i] == ' ') ++i;
    if (i >= s.size()) break;
    if (s[i] != '*') throw Error(ErrorKind::Parse, "expected '*' between symbols in '" + s + "'");
    ++i;
  }
  return out;
}

std::string FormalSymbol::to_string() const {
  if (factors.empty()) return "1";
  std::string out;
  for (const auto& f : factors) {
    if (!out.empty()) out += " * ";
    out += "{" + f.f.to_string() + ", " + f.g.to_string() + "}";
    if (f.exponent != 1) out += "^" + std::to_string(f.exponent);
  }
  return out;
}

FormalSymbol symbol_normalize(const FormalSymbol& s) {
  const RatFunc one(Rat(1));
  std::vector<AtomPair> work;
  for (const auto& f : s.factors) {
    if (f.exponent == 0) continue;
    RatFunc a = f.f.value(), b = f.g.value();
    if (a + b == one || (a + b).is_zero()) continue;
    for (const auto& [x, i] : atoms_of(f.f))
      for (const auto& [y, j] : atoms_of(f.g)) work.push_back({x, y, f.exponent * i * j});
  }
  std::map<std::pair<std::string, std::string>, AtomPair> merged;
  while (!work.empty()) {
    AtomPair w = std::move(work.back());
    work.pop_back();
    if (w.k == 0) continue;
    RatFunc va = w.a.value(), vb = w.b.value();
    if (va + vb == one) continue;
    // {a, lambda (1 - a)} = {a, lambda} for a nonconstant atom a
    if (w.a.kind == 2 || w.b.kind == 2) {
      bool handled = false;
      for (int side = 0; side < 2 && !handled; ++side) {
        const Atom& x = side == 0 ? w.a : w.b;
        const Atom& y = side == 0 ? w.b : w.a;
        if (x.kind != 2 || y.kind != 2) continue;
        RatFunc lambda = (one - x.value()) / y.value();
        if (!lambda.num().is_constant() || !lambda.den().is_constant()) continue;
        Rat c = lambda.num().constant_term() / lambda.den().constant_term();
        for (const auto& [z, m] : atoms_of(SymbolArg(c))) {
          if (side == 0) work.push_back({x, z, w.k * m});
          else work.push_back({z, x, w.k * m});
        }
        handled = true;
      }
      if (handled) continue;
    } else if (w.b.kind != 0 && w.a.kind != 0 && vb == va - one) {
      // {a, a - 1} = {a, -1}
      work.push_back({w.a, kMinusOne, w.k});
      continue;
    } else if (w.b.kind != 0 && w.a.kind != 0 && va == vb - one) {
      work.push_back({w.b, kMinusOne, -w.k});
      continue;
    }
    if (w.a.key() == w.b.key() && w.a.kind != 0) {
      // {a, a} = {a, -1}, which may itself be a Steinberg pair such as {2, -1}
      work.push_back({w.a, kMinusOne, w.k});
      continue;
    }
    if (w.a.key() > w.b.key()) {
      std::swap(w.a, w.b);
      w.k = -w.k;
    }
    auto key = std::make_pair(w.a.key(), w.b.key());
    auto it = merged.find(key);
    if (it == merged.end()) merged.emplace(key, w);
    else it->second.k += w.k;
  }
  FormalSymbol out;
  out.torsion_flag = s.torsion_flag;
  for (auto& [key, p] : merged) {
    long k = p.k;
    if (p.a.kind == 0 || p.b.kind == 0) k = ((k % 2) + 2) % 2;
    if (k != 0) out.factors.push_back({p.a.arg(), p.b.arg(), k});
  }
  return out;
}

bool symbols_equal(const FormalSymbol& a, const FormalSymbol& b) {
  return symbol_normalize(a).to_string() == symbol_normalize(b).to_string();
}

}  // namespace charvar::k2
