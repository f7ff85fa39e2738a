#pragma once
// Noncommutative monomial rewriting over Z, Q, or F_p: graded-lex word order,
// oriented rules word -> polynomial, bounded Knuth-Bendix completion with a
// critical-pair certificate, and unique normal forms once certified.

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "excision/poly.hpp"

namespace exl::rewrite {

using Int = mpz_class;
using Rat = mpq_class;

// coefficient base: F_p or Q via the field, or Z when integral is set
struct CoeffRing {
  poly::Field f;
  bool integral = false;
  Rat reduce(const Rat& c) const;  // Z rejects non-integer input
  bool is_unit(const Rat& c) const;
  Rat inv(const Rat& c) const;  // throws on non-units
  bool equal(const Rat& a, const Rat& b) const;
  std::string str() const;
};
CoeffRing coeff_integers();
CoeffRing coeff_rationals();
CoeffRing coeff_prime_field(const Int& p);

// word in the noncommuting generators, letters stored by index
using Word = std::vector<uint8_t>;
Word word_concat(const Word& a, const Word& b);
bool word_equal(const Word& a, const Word& b);
// graded-lexicographic, higher letter index larger; declare {"x","y"} for y > x
bool word_less(const Word& a, const Word& b);

struct NCTerm {
  Word w;
  Rat c;
};

// terms sorted strictly descending, no zero coefficients
struct NCPoly {
  std::vector<NCTerm> t;
  bool zero() const { return t.empty(); }
  const NCTerm& lead() const { return t.front(); }
  long degree() const;  // -1 for zero
};

// oriented rule lhs -> rhs; every rhs word sits strictly below lhs
struct Rule {
  Word lhs;
  NCPoly rhs;
};

class RewriteRing;
using RwPtr = std::shared_ptr<const RewriteRing>;

class RewriteRing : public std::enable_shared_from_this<RewriteRing> {
public:
  // validates letters, rule orientation, and coefficient membership
  RewriteRing(CoeffRing k, std::vector<std::string> gens, std::vector<Rule> rules, bool certified,
              std::string name);

  const CoeffRing& coeff() const { return k_; }
  int ngens() const { return int(gens_.size()); }
  const std::vector<std::string>& gens() const { return gens_; }
  const std::vector<Rule>& rules() const { return rules_; }
  bool certified() const { return certified_; }
  const std::string& name() const { return name_; }

  NCPoly zero() const { return {}; }
  NCPoly constant(Rat c) const;
  NCPoly one() const { return constant(1); }
  NCPoly gen(int i) const;
  NCPoly monomial(Word w, Rat c) const;
  NCPoly add(const NCPoly& a, const NCPoly& b) const;
  NCPoly sub(const NCPoly& a, const NCPoly& b) const;
  NCPoly neg(const NCPoly& a) const;
  NCPoly mul(const NCPoly& a, const NCPoly& b) const;
  NCPoly scale(const NCPoly& a, const Rat& c) const;
  NCPoly power(const NCPoly& a, long e) const;

  NCPoly parse(const std::string& text) const;
  Word parse_word(const std::string& text) const;  // single word with coefficient 1
  std::string str(const NCPoly& f) const;
  std::string str(const Word& w) const;

private:
  CoeffRing k_;
  std::vector<std::string> gens_;
  std::vector<Rule> rules_;
  bool certified_;
  std::string name_;
};

// which redex a reduction step picks; certified systems are confluent, so all
// strategies agree on the result
enum class Strategy { Leftmost, Rightmost };

// rules strictly decrease the word order, so rewriting terminates; the cap
// only guards against runaway coefficient blowup
NCPoly normal_form(const RewriteRing& r, const NCPoly& f, Strategy s = Strategy::Leftmost,
                   long cap = 200000);
bool is_zero(const RewriteRing& r, const NCPoly& f);
// needs the completeness certificate, otherwise normal forms are not canonical
bool equal(const RewriteRing& r, const NCPoly& a, const NCPoly& b);

// one overlap or containment ambiguity between two rules: word reduces one
// step to left and to right, which must share a normal form
struct CriticalPair {
  Word word;
  NCPoly left, right;
};
std::vector<CriticalPair> critical_pairs(const RewriteRing& r);

// rules as (word, polynomial) strings, e.g. {"y*x", "2"}; certified exactly
// when every critical pair already resolves
RwPtr make_rewrite_ring(CoeffRing k, std::vector<std::string> gens,
                        const std::vector<std::pair<std::string, std::string>>& rules,
                        std::string name = "");
// same certification from prebuilt rules, for coefficients the expression
// grammar cannot spell (negative or fractional constants)
RwPtr make_rewrite_ring(CoeffRing k, std::vector<std::string> gens, std::vector<Rule> rules,
                        std::string name = "");
// bounded Knuth-Bendix: orients unresolved pairs into new rules until all
// resolve; throws LimitError when the rule budget runs out
RwPtr complete_rewrite_system(CoeffRing k, std::vector<std::string> gens,
                              const std::vector<std::pair<std::string, std::string>>& rules,
                              std::string name = "", int rule_budget = 64);

// irreducible words of length exactly d, ascending
std::vector<Word> irreducible_words(const RewriteRing& r, int d);

}  // namespace exl::rewrite
