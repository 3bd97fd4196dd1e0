#include "charvar/poly/multipoly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "charvar/error.hpp"

namespace charvar::poly {

bool GradedLex::operator()(const Exponents& a, const Exponents& b) const {
  int da = std::accumulate(a.begin(), a.end(), 0);
  int db = std::accumulate(b.begin(), b.end(), 0);
  if (da != db) return da < db;
  return a < b;
}

std::vector<std::string> merge_variables(const std::vector<std::string>& a,
                                         const std::vector<std::string>& b) {
  std::vector<std::string> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

MultiPoly::MultiPoly(std::vector<std::string> variables) : vars_(std::move(variables)) {
  std::sort(vars_.begin(), vars_.end());
  vars_.erase(std::unique(vars_.begin(), vars_.end()), vars_.end());
}

MultiPoly::MultiPoly(std::vector<std::string> variables, TermMap terms)
    : vars_(std::move(variables)) {
  if (!std::is_sorted(vars_.begin(), vars_.end()) ||
      std::adjacent_find(vars_.begin(), vars_.end()) != vars_.end())
    throw Error(ErrorKind::Internal, "polynomial variables must be sorted and distinct");
  for (auto& [e, c] : terms) {
    if (e.size() != vars_.size()) throw Error(ErrorKind::Internal, "exponent length mismatch");
    insert_term(e, c);
  }
}

MultiPoly MultiPoly::constant(const Rat& c) {
  MultiPoly p;
  p.insert_term({}, c);
  return p;
}

MultiPoly MultiPoly::variable(std::string_view name) {
  MultiPoly p(std::vector<std::string>{std::string(name)});
  p.insert_term({1}, Rat(1));
  return p;
}

MultiPoly MultiPoly::monomial(const std::vector<std::string>& variables, Exponents exps,
                              Rat coeff) {
  MultiPoly p(variables);
  if (p.vars_ != variables) {
    // Reorder exponents to the sorted variable list.
    Exponents sorted(p.vars_.size(), 0);
    for (std::size_t i = 0; i < variables.size(); ++i)
      sorted[*p.index_of(variables[i])] += exps.at(i);
    exps = std::move(sorted);
  }
  if (exps.size() != p.vars_.size()) throw Error(ErrorKind::Internal, "exponent length mismatch");
  p.insert_term(std::move(exps), coeff);
  return p;
}

void MultiPoly::insert_term(Exponents exps, const Rat& c) {
  if (c.is_zero()) return;
  for (int e : exps)
    if (e < 0) throw Error(ErrorKind::DegenerateInput, "negative exponent in polynomial");
  auto it = terms_.find(exps);
  if (it == terms_.end()) {
    terms_.emplace(std::move(exps), c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

bool MultiPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first ==
                                                      Exponents(vars_.size(), 0));
}

Rat MultiPoly::constant_term() const {
  auto it = terms_.find(Exponents(vars_.size(), 0));
  return it == terms_.end() ? Rat(0) : it->second;
}

std::optional<std::size_t> MultiPoly::index_of(std::string_view var) const {
  auto it = std::lower_bound(vars_.begin(), vars_.end(), var);
  if (it == vars_.end() || *it != var) return std::nullopt;
  return static_cast<std::size_t>(it - vars_.begin());
}

bool MultiPoly::involves(std::string_view var) const { return degree(var) > 0; }

std::vector<std::string> MultiPoly::support_variables() const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    for (const auto& [e, c] : terms_) {
      if (e[i] > 0) {
        out.push_back(vars_[i]);
        break;
      }
    }
  }
  return out;
}

int MultiPoly::degree(std::string_view var) const {
  if (terms_.empty()) return -1;
  auto idx = index_of(var);
  if (!idx) return 0;
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[*idx]);
  return d;
}

int MultiPoly::total_degree() const {
  if (terms_.empty()) return -1;
  const auto& e = terms_.rbegin()->first;
  return std::accumulate(e.begin(), e.end(), 0);
}

const Exponents& MultiPoly::leading_exponents() const {
  if (terms_.empty()) throw Error(ErrorKind::DegenerateInput, "leading term of zero polynomial");
  return terms_.rbegin()->first;
}

const Rat& MultiPoly::leading_coefficient() const {
  if (terms_.empty()) throw Error(ErrorKind::DegenerateInput, "leading term of zero polynomial");
  return terms_.rbegin()->second;
}

MultiPoly MultiPoly::over(const std::vector<std::string>& variables) const {
  MultiPoly out(variables);
  if (out.vars_ == vars_) return *this;
  std::vector<std::size_t> map(vars_.size());
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    auto idx = out.index_of(vars_[i]);
    if (!idx) {
      if (degree(vars_[i]) > 0)
        throw Error(ErrorKind::Internal, "variable '" + vars_[i] + "' dropped by over()");
      map[i] = static_cast<std::size_t>(-1);
      continue;
    }
    map[i] = *idx;
  }
  for (const auto& [e, c] : terms_) {
    Exponents ne(out.vars_.size(), 0);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (map[i] != static_cast<std::size_t>(-1)) ne[map[i]] = e[i];
    out.terms_.emplace(std::move(ne), c);
  }
  return out;
}

MultiPoly MultiPoly::trimmed() const { return over(support_variables()); }

MultiPoly MultiPoly::operator-() const {
  MultiPoly out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  if (vars_ != o.vars_) {
    auto vars = merge_variables(vars_, o.vars_);
    *this = over(vars);
    MultiPoly ow = o.over(vars);
    for (const auto& [e, c] : ow.terms_) insert_term(e, c);
    return *this;
  }
  for (const auto& [e, c] : o.terms_) insert_term(e, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) { return *this += -o; }

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  if (a.vars_ != b.vars_) {
    auto vars = merge_variables(a.vars_, b.vars_);
    return a.over(vars) * b.over(vars);
  }
  MultiPoly out(a.vars_);
  Exponents e(a.vars_.size());
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.insert_term(e, ca * cb);
    }
  }
  return out;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& o) { return *this = *this * o; }

MultiPoly& MultiPoly::operator*=(const Rat& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

bool operator==(const MultiPoly& a, const MultiPoly& b) {
  if (a.vars_ == b.vars_) return a.terms_ == b.terms_;
  auto vars = merge_variables(a.vars_, b.vars_);
  return a.over(vars).terms_ == b.over(vars).terms_;
}

MultiPoly MultiPoly::pow(unsigned exponent) const {
  MultiPoly result = MultiPoly::constant(Rat(1)).over(vars_);
  MultiPoly base = *this;
  while (exponent) {
    if (exponent & 1U) result *= base;
    exponent >>= 1U;
    if (exponent) base *= base;
  }
  return result;
}

std::vector<MultiPoly> MultiPoly::coefficients_in(std::string_view var) const {
  auto idx = index_of(var);
  if (!idx) return {*this};
  int d = degree(var);
  std::vector<MultiPoly> out(static_cast<std::size_t>(std::max(d, 0)) + 1, MultiPoly(vars_));
  for (const auto& [e, c] : terms_) {
    Exponents ne = e;
    ne[*idx] = 0;
    out[static_cast<std::size_t>(e[*idx])].insert_term(std::move(ne), c);
  }
  return out;
}

MultiPoly MultiPoly::from_coefficients(std::string_view var, const std::vector<MultiPoly>& coeffs) {
  MultiPoly x = variable(var);
  MultiPoly out(std::vector<std::string>{std::string(var)});
  for (std::size_t k = coeffs.size(); k-- > 0;) {
    out *= x;
    out += coeffs[k];
  }
  return out;
}

MultiPoly MultiPoly::derivative(std::string_view var) const {
  MultiPoly out(vars_);
  auto idx = index_of(var);
  if (!idx) return out;
  for (const auto& [e, c] : terms_) {
    if (e[*idx] == 0) continue;
    Exponents ne = e;
    ne[*idx] -= 1;
    out.insert_term(std::move(ne), c * Rat(e[*idx]));
  }
  return out;
}

MultiPoly MultiPoly::substitute(std::string_view var, const MultiPoly& value) const {
  auto idx = index_of(var);
  if (!idx) return *this;
  auto coeffs = coefficients_in(var);
  MultiPoly out(vars_);
  for (std::size_t k = coeffs.size(); k-- > 0;) {
    out *= value;
    out += coeffs[k];
  }
  return out;
}

MultiPoly MultiPoly::substitute(std::string_view var, const Rat& value) const {
  return substitute(var, MultiPoly::constant(value));
}

MultiPoly MultiPoly::rename(std::string_view from, std::string_view to) const {
  if (from == to || !index_of(from)) return *this;
  return substitute(from, MultiPoly::variable(to));
}

MultiPoly MultiPoly::shifted(const Exponents& exps) const {
  if (exps.size() != vars_.size()) throw Error(ErrorKind::Internal, "exponent length mismatch");
  MultiPoly out(vars_);
  for (const auto& [e, c] : terms_) {
    Exponents ne = e;
    for (std::size_t i = 0; i < ne.size(); ++i) ne[i] += exps[i];
    out.insert_term(std::move(ne), c);
  }
  return out;
}

Exponents MultiPoly::monomial_content() const {
  Exponents m(vars_.size(), 0);
  if (terms_.empty()) return m;
  m = terms_.begin()->first;
  for (const auto& [e, c] : terms_)
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = std::min(m[i], e[i]);
  return m;
}

std::complex<double> MultiPoly::evaluate(
    const std::map<std::string, std::complex<double>>& at) const {
  std::vector<std::complex<double>> values(vars_.size());
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    auto it = at.find(vars_[i]);
    if (it == at.end()) {
      if (degree(vars_[i]) > 0)
        throw Error(ErrorKind::DegenerateInput, "no value for variable '" + vars_[i] + "'");
      continue;
    }
    values[i] = it->second;
  }
  std::complex<double> sum = 0.0;
  for (const auto& [e, c] : terms_) {
    std::complex<double> t = c.to_double();
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0) t *= std::pow(values[i], e[i]);
    sum += t;
  }
  return sum;
}

Rat MultiPoly::content() const {
  if (terms_.empty()) return Rat(0);
  BigInt g = 0, l = 1;
  for (const auto& [e, c] : terms_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.value().get_num_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.value().get_den_mpz_t());
  }
  Rat r(g, l);
  return leading_coefficient().sign() < 0 ? -r : r;
}

MultiPoly MultiPoly::primitive_integer() const {
  if (terms_.empty()) return *this;
  MultiPoly out = *this;
  out *= content().inverse();
  return out;
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    Rat a = c.abs();
    if (first) {
      if (c.sign() < 0) out += "-";
    } else {
      out += c.sign() < 0 ? " - " : " + ";
    }
    first = false;
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += vars_[i];
      if (e[i] != 1) mono += "^" + std::to_string(e[i]);
    }
    if (mono.empty()) {
      out += a.to_string();
    } else if (a.is_one()) {
      out += mono;
    } else {
      out += a.to_string() + "*" + mono;
    }
  }
  return out;
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  MultiPoly run() {
    MultiPoly result;
    skip();
    if (pos_ == s_.size()) fail("empty polynomial");
    bool first = true;
    while (pos_ < s_.size()) {
      int sign = 1;
      if (s_[pos_] == '+' || s_[pos_] == '-') {
        sign = s_[pos_] == '-' ? -1 : 1;
        ++pos_;
        skip();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      result += term() * Rat(sign);
      skip();
    }
    return result;
  }

 private:
  MultiPoly term() {
    MultiPoly t = MultiPoly::constant(Rat(1));
    while (true) {
      skip();
      t *= factor();
      skip();
      if (pos_ < s_.size() && s_[pos_] == '*') {
        ++pos_;
        continue;
      }
      return t;
    }
  }

  MultiPoly factor() {
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (pos_ < s_.size() && s_[pos_] == '/') {
        ++pos_;
        std::size_t dstart = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (dstart == pos_) fail("bad rational literal");
      }
      return MultiPoly::constant(Rat::parse(s_.substr(start, pos_ - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      MultiPoly v = MultiPoly::variable(s_.substr(start, pos_ - start));
      skip();
      if (pos_ < s_.size() && s_[pos_] == '^') {
        ++pos_;
        skip();
        std::size_t estart = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (estart == pos_) fail("expected exponent");
        long e = std::stol(std::string(s_.substr(estart, pos_ - estart)));
        if (e > 100000) fail("exponent too large");
        return v.pow(static_cast<unsigned>(e));
      }
      return v;
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::Parse, msg + " at offset " + std::to_string(pos_));
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

MultiPoly MultiPoly::parse(std::string_view text) { return Parser(text).run(); }

}  // namespace charvar::poly
