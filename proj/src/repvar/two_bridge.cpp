#include "charvar/repvar/two_bridge.hpp"

#include <cctype>
#include <cstdlib>
#include <numeric>

#include "charvar/error.hpp"

namespace charvar::repvar {

Word::Word(std::vector<Syllable> syllables) {
  for (const auto& s : syllables) push(s);
}

void Word::push(Syllable s) {
  if (s.generator != 'a' && s.generator != 'b')
    throw Error(ErrorKind::Internal, std::string("unknown generator '") + s.generator + "'");
  if (s.exponent == 0) return;
  if (!syllables_.empty() && syllables_.back().generator == s.generator) {
    syllables_.back().exponent += s.exponent;
    if (syllables_.back().exponent == 0) syllables_.pop_back();
    return;
  }
  syllables_.push_back(s);
}

int Word::letter_count() const {
  int n = 0;
  for (const auto& s : syllables_) n += std::abs(s.exponent);
  return n;
}

int Word::exponent_sum(char generator) const {
  int n = 0;
  for (const auto& s : syllables_)
    if (s.generator == generator) n += s.exponent;
  return n;
}

Word Word::inverse() const {
  Word out;
  for (auto it = syllables_.rbegin(); it != syllables_.rend(); ++it)
    out.push({it->generator, -it->exponent});
  return out;
}

Word Word::swapped() const {
  Word out;
  for (const auto& s : syllables_) out.push({s.generator == 'a' ? 'b' : 'a', s.exponent});
  return out;
}

Word Word::operator*(const Word& other) const {
  Word out = *this;
  for (const auto& s : other.syllables_) out.push(s);
  return out;
}

std::vector<Syllable> Word::letters() const {
  std::vector<Syllable> out;
  for (const auto& s : syllables_)
    for (int k = 0; k < std::abs(s.exponent); ++k) out.push_back({s.generator, s.exponent > 0 ? 1 : -1});
  return out;
}

std::string Word::to_string() const {
  std::string out;
  for (const auto& s : letters()) {
    if (!out.empty()) out += ' ';
    out += s.exponent > 0 ? s.generator : static_cast<char>(std::toupper(s.generator));
  }
  return out.empty() ? "1" : out;
}

Word power(char generator, int exponent) { return Word({{generator, exponent}}); }

void validate(const TwoBridgeCode& code) {
  if (code.p < 3) throw Error(ErrorKind::InvalidCode, "two-bridge code needs p >= 3");
  if (code.q <= 0 || code.q >= code.p)
    throw Error(ErrorKind::InvalidCode, "two-bridge code needs 0 < q < p");
  if (std::gcd(code.p, code.q) != 1)
    throw Error(ErrorKind::InvalidCode, "two-bridge code needs gcd(p, q) = 1");
  if (code.q % 2 == 0) throw Error(ErrorKind::InvalidCode, "two-bridge code needs q odd");
}

std::vector<int> sign_sequence(const TwoBridgeCode& code) {
  validate(code);
  std::vector<int> eps;
  for (int i = 1; i < code.p; ++i) eps.push_back(((i * code.q) / code.p) % 2 == 0 ? 1 : -1);
  return eps;
}

Presentation presentation(const TwoBridgeCode& code) {
  std::vector<int> eps = sign_sequence(code);
  Presentation pr;
  pr.code = code;
  const bool knot = code.component_count() == 1;
  std::vector<Syllable> syl;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    bool first_kind = i % 2 == 0;
    char g = knot ? (first_kind ? 'a' : 'b') : (first_kind ? 'b' : 'a');
    syl.push_back({g, eps[i]});
  }
  pr.w = Word(syl);
  Word a = power('a', 1), b = power('b', 1);
  if (knot) {
    pr.relator_lhs = pr.w * a;
    pr.relator_rhs = b * pr.w;
    pr.meridians = {'a'};
    int sigma = std::accumulate(eps.begin(), eps.end(), 0);
    pr.longitudes = {pr.w.swapped() * pr.w * power('a', -2 * sigma)};
  } else {
    pr.relator_lhs = a * pr.w;
    pr.relator_rhs = pr.w * a;
    pr.meridians = {'a', 'b'};
    Word wb = pr.w.swapped();
    pr.longitudes = {pr.w * power('a', -pr.w.exponent_sum('a')),
                     wb * power('b', -wb.exponent_sum('b'))};
  }
  pr.relator = pr.relator_lhs * pr.relator_rhs.inverse();
  return pr;
}

}  // namespace charvar::repvar
