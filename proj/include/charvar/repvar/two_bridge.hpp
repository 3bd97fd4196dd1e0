#pragma once

#include <string>
#include <vector>

namespace charvar::repvar {

/// Syllable g^e with g in {'a', 'b'} and e != 0.
struct Syllable {
  char generator;
  int exponent;
  friend bool operator==(const Syllable&, const Syllable&) = default;
};

/// Freely reduced word in a, b.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Syllable> syllables);

  const std::vector<Syllable>& syllables() const { return syllables_; }
  std::size_t syllable_length() const { return syllables_.size(); }
  /// Number of letters, i.e. sum of |exponent|.
  int letter_count() const;
  /// Exponent sum of one generator.
  int exponent_sum(char generator) const;

  Word inverse() const;
  /// Exchanges a and b.
  Word swapped() const;
  Word operator*(const Word& other) const;

  /// Letters expanded to unit exponents, e.g. a^2 b^-1 -> a a B.
  std::vector<Syllable> letters() const;
  /// `a b^-1 A` style: lowercase = generator, uppercase = inverse.
  std::string to_string() const;

  friend bool operator==(const Word&, const Word&) = default;

 private:
  void push(Syllable s);
  std::vector<Syllable> syllables_;
};

Word power(char generator, int exponent);

/// Schubert normal form (p, q) of a two-bridge knot (p odd) or
/// two-component link (p even).
struct TwoBridgeCode {
  int p = 0;
  int q = 0;
  std::string name;

  int component_count() const { return p % 2 == 0 ? 2 : 1; }
};

/// Throws invalid-code unless p >= 3, 0 < q < p, gcd(p, q) = 1 and q odd.
void validate(const TwoBridgeCode& code);

/// eps_i = (-1)^floor(i q / p), i = 1..p-1.
std::vector<int> sign_sequence(const TwoBridgeCode& code);

/// Knot: <a, b | w a = b w>, w = a^e1 b^e2 ... b^e_{p-1}; longitude
/// w* w a^(-2 sigma), w* the word w with a and b exchanged.
/// Link: <a, b | a w = w a>, w = b^e1 a^e2 ... b^e_{p-1}; longitudes
/// w a^(-k_a) for the a-component and w* b^(-k_b) for the b-component.
struct Presentation {
  TwoBridgeCode code;
  Word w;
  /// Relator as a word equal to the identity.
  Word relator;
  /// Relator as an equation lhs = rhs.
  Word relator_lhs;
  Word relator_rhs;
  /// Meridian generator per component ('a' first).
  std::vector<char> meridians;
  std::vector<Word> longitudes;
};

Presentation presentation(const TwoBridgeCode& code);

}  // namespace charvar::repvar
