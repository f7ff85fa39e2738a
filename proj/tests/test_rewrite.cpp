#include <doctest.h>

#include <random>

#include "excision/error.hpp"
#include "excision/rewrite.hpp"

using namespace exl;
using namespace exl::rewrite;

namespace {

// k<x,y>/(yx - alpha), complete because yx overlaps nothing
RwPtr box_family(CoeffRing k, const std::string& alpha) {
  return make_rewrite_ring(k, {"x", "y"}, {{"y*x", alpha}}, "box(" + alpha + ")");
}

RwPtr laurent(CoeffRing k) {
  return make_rewrite_ring(k, {"x", "y"}, {{"x*y", "1"}, {"y*x", "1"}}, "laurent");
}

Word w(std::initializer_list<int> letters) {
  Word out;
  for (int a : letters) out.push_back(uint8_t(a));
  return out;
}

}  // namespace

TEST_CASE("coefficient bases: Z, Q, and F_p") {
  CoeffRing z = coeff_integers();
  CHECK(z.str() == "Z");
  CHECK(z.is_unit(1));
  CHECK(z.is_unit(-1));
  CHECK_FALSE(z.is_unit(2));
  CHECK(z.inv(Rat(-1)) == -1);
  CHECK_THROWS_AS(z.inv(Rat(2)), InvalidObjectError);
  CHECK_THROWS_AS(z.reduce(Rat(1, 2)), InvalidObjectError);
  CoeffRing f3 = coeff_prime_field(3);
  CHECK(f3.str() == "F_3");
  CHECK(f3.reduce(Rat(5)) == 2);
  CHECK(f3.inv(Rat(2)) == 2);
  CHECK(f3.is_unit(Rat(5)));
  CHECK_FALSE(f3.is_unit(Rat(6)));
  CHECK(coeff_rationals().str() == "Q");
  CHECK_THROWS_AS(coeff_prime_field(4), InvalidObjectError);
}

TEST_CASE("graded-lex word order puts y above x and length first") {
  CHECK(word_less(w({}), w({0})));
  CHECK(word_less(w({0}), w({1})));
  CHECK(word_less(w({1}), w({0, 0})));
  CHECK(word_less(w({0, 0}), w({0, 1})));
  CHECK(word_less(w({0, 1}), w({1, 0})));
  CHECK(word_less(w({1, 0}), w({1, 1})));
  CHECK_FALSE(word_less(w({1, 0}), w({0, 1})));
  CHECK(word_equal(word_concat(w({0}), w({1})), w({0, 1})));
}

TEST_CASE("noncommutative parse and print round trip") {
  RwPtr r = make_rewrite_ring(coeff_rationals(), {"x", "y"}, {}, "free");
  CHECK(r->str(r->parse("x*y - 2*y*x + 1")) == "-2*y*x + x*y + 1");
  CHECK(r->str(r->parse("y^2*x + 3")) == "y^2*x + 3");
  CHECK(r->str(r->parse("x*y - x*y")) == "0");
  CHECK_FALSE(word_equal(r->parse_word("x*y"), r->parse_word("y*x")));
  CHECK(r->str(r->power(r->parse("x + y"), 2)) == "y^2 + y*x + x*y + x^2");
  CHECK(r->str(r->one()) == "1");
  CHECK_THROWS_AS(r->parse("z"), ParseError);
  CHECK_THROWS_AS(r->parse("x^-1"), ParseError);
  CHECK_THROWS_AS(r->parse_word("x + y"), InvalidObjectError);
  CHECK_THROWS_AS(r->parse_word("2*x"), InvalidObjectError);
}

TEST_CASE("box family normal forms follow the closed form") {
  RwPtr t = box_family(coeff_rationals(), "1");
  CHECK(t->certified());
  CHECK(critical_pairs(*t).empty());
  CHECK(t->str(normal_form(*t, t->parse("y*x"))) == "1");
  CHECK(t->str(normal_form(*t, t->parse("y^2*x^3"))) == "x");

  RwPtr z0 = box_family(coeff_rationals(), "0");
  CHECK(normal_form(*z0, z0->parse("y^2*x^3")).zero());

  RwPtr z2 = box_family(coeff_integers(), "2");
  CHECK(z2->str(normal_form(*z2, z2->parse("y^2*x^3"))) == "4*x");

  // y^l x^m = alpha^min(l,m) x^(m-min) y^(l-min), exhaustively to degree 8
  for (const auto& [k, alpha] : std::vector<std::pair<CoeffRing, int>>{
           {coeff_integers(), 2}, {coeff_prime_field(3), 2}, {coeff_rationals(), 1},
           {coeff_prime_field(2), 1}}) {
    RwPtr r = box_family(k, std::to_string(alpha));
    for (int l = 0; l <= 8; ++l)
      for (int m = 0; m + l <= 8; ++m) {
        int mn = std::min(l, m);
        Word word;
        for (int i = 0; i < l; ++i) word.push_back(1);
        for (int i = 0; i < m; ++i) word.push_back(0);
        Word rest;
        for (int i = 0; i < m - mn; ++i) rest.push_back(0);
        for (int i = 0; i < l - mn; ++i) rest.push_back(1);
        Rat c = 1;
        for (int i = 0; i < mn; ++i) c *= alpha;
        NCPoly lhs = normal_form(*r, r->monomial(word, 1));
        NCPoly expect = r->monomial(rest, c);
        CHECK(r->sub(lhs, expect).zero());
      }
  }
}

TEST_CASE("normal form is idempotent and strategy independent when certified") {
  RwPtr t = box_family(coeff_prime_field(2), "1");
  NCPoly f = t->parse("y^3*x^2 + x*y + y*x*y*x + 1");
  NCPoly nf = normal_form(*t, f);
  CHECK(t->sub(normal_form(*t, nf), nf).zero());
  CHECK(t->sub(normal_form(*t, f, Strategy::Rightmost), nf).zero());
  CHECK(equal(*t, f, nf));
}

TEST_CASE("laurent and toeplitz rule sets are complete as given") {
  RwPtr l = laurent(coeff_prime_field(3));
  CHECK(l->certified());
  CHECK(critical_pairs(*l).size() == 2);
  CHECK(l->str(normal_form(*l, l->parse("x*y*x"))) == "x");
  CHECK(l->str(normal_form(*l, l->parse("y*x*y"))) == "y");
  // graded pieces of k[x,x^-1]: only x^d and y^d survive
  CHECK(irreducible_words(*l, 0).size() == 1);
  for (int d = 1; d <= 8; ++d) CHECK(irreducible_words(*l, d).size() == 2);

  RwPtr t = make_rewrite_ring(coeff_integers(), {"x", "y"}, {{"y*x", "1"}}, "T_Z");
  CHECK(t->certified());
  // irreducible words x^i y^j match the k[x] (x) k[y] bigraded basis
  for (int d = 0; d <= 8; ++d) {
    std::vector<Word> basis = irreducible_words(*t, d);
    REQUIRE(int(basis.size()) == d + 1);
    for (int i = 0; i <= d; ++i) {
      Word expect;
      for (int a = i; a < d; ++a) expect.push_back(0);
      for (int a = 0; a < i; ++a) expect.push_back(1);
      CHECK(word_equal(basis[size_t(i)], expect));
    }
  }
}

TEST_CASE("knuth-bendix completes the x^2 = y, y^2 = x monoid ring") {
  // incomplete as given: the overlap xxx rewrites to both yx and xy
  RwPtr raw = make_rewrite_ring(coeff_rationals(), {"x", "y"}, {{"x^2", "y"}, {"y^2", "x"}}, "M");
  CHECK_FALSE(raw->certified());
  CHECK_THROWS_AS(equal(*raw, raw->one(), raw->one()), UnsupportedError);

  RwPtr m = complete_rewrite_system(coeff_rationals(), {"x", "y"},
                                    {{"x^2", "y"}, {"y^2", "x"}}, "M");
  CHECK(m->certified());
  REQUIRE(m->rules().size() == 3);
  CHECK(m->str(m->rules()[2].lhs) == "y*x");
  CHECK(m->str(m->rules()[2].rhs) == "x*y");
  // the monoid has four elements 1, x, y = x^2, xy = x^3, and x^4 = x
  CHECK(m->str(normal_form(*m, m->power(m->gen(0), 4))) == "x");
  CHECK(irreducible_words(*m, 0).size() == 1);
  CHECK(irreducible_words(*m, 1).size() == 2);
  REQUIRE(irreducible_words(*m, 2).size() == 1);
  CHECK(m->str(irreducible_words(*m, 2)[0]) == "x*y");
  CHECK(irreducible_words(*m, 3).empty());

  // over Z the same overlap needs leading coefficient 2 inverted
  CHECK_THROWS_AS(complete_rewrite_system(coeff_integers(), {"x", "y"},
                                          {{"x^2", "2*y"}, {"y^2", "x"}}, "bad"),
                  UnsupportedError);
  RwPtr q = complete_rewrite_system(coeff_rationals(), {"x", "y"},
                                    {{"x^2", "2*y"}, {"y^2", "x"}}, "ok");
  CHECK(q->certified());

  // xy = 1 and yx = 2 force x = 2x, hence 1 = 0
  CHECK_THROWS_AS(complete_rewrite_system(coeff_rationals(), {"x", "y"},
                                          {{"x*y", "1"}, {"y*x", "2"}}, "collapse"),
                  UnsupportedError);
  CHECK_THROWS_AS(complete_rewrite_system(coeff_rationals(), {"x", "y"},
                                          {{"x^2", "y"}, {"y^2", "x"}}, "tight", 2),
                  LimitError);
}

TEST_CASE("rewriting respects rule orientation and budgets") {
  CHECK_THROWS_AS(make_rewrite_ring(coeff_rationals(), {"x", "y"}, {{"x", "y"}}, "up"),
                  InvalidObjectError);
  CHECK_THROWS_AS(make_rewrite_ring(coeff_rationals(), {"x", "y"}, {{"y*x", "y*x"}}, "fix"),
                  InvalidObjectError);
  CHECK_THROWS_AS(make_rewrite_ring(coeff_rationals(), {"x", "x"}, {}, "dup"),
                  InvalidObjectError);
  RwPtr t = box_family(coeff_rationals(), "1");
  CHECK_THROWS_AS(normal_form(*t, t->parse("y^2*x^2"), Strategy::Leftmost, 1), LimitError);
}

TEST_CASE("confluence: random words reduce identically under both strategies") {
  std::vector<RwPtr> rings = {
      box_family(coeff_prime_field(2), "1"), box_family(coeff_integers(), "2"),
      laurent(coeff_prime_field(3)),
      complete_rewrite_system(coeff_rationals(), {"x", "y"}, {{"x^2", "y"}, {"y^2", "x"}}, "M")};
  std::mt19937 rng(0x5eedc0de);
  for (const RwPtr& r : rings) {
    REQUIRE(r->certified());
    for (int trial = 0; trial < 1000; ++trial) {
      int len = int(rng() % 7);
      Word word;
      for (int i = 0; i < len; ++i) word.push_back(uint8_t(rng() % 2));
      NCPoly f = r->monomial(word, 1);
      NCPoly a = normal_form(*r, f, Strategy::Leftmost);
      NCPoly b = normal_form(*r, f, Strategy::Rightmost);
      REQUIRE(r->sub(a, b).zero());
    }
  }
}
