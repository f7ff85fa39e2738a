#include "excision/rings.hpp"

#include <doctest.h>

#include <set>

#include "excision/error.hpp"

using namespace exl;
using namespace exl::rings;

namespace {

RingPtr dual_numbers_f2(const std::string& var) {
  return make_finite_ring({Int(2), {var}, {var + "^2"}});
}

PresentedRing glued_dual_numbers() {
  return present_finite_ring({Int(2), {"e", "d"}, {"e^2", "d^2", "e*d"}});
}

// 2x2 matrices over F_2, generators e11,e12,e21,e22
RingPtr mat2_f2() {
  auto idx = [](int i, int j) { return 2 * i + j; };
  std::vector<std::vector<Coords>> table(4, std::vector<Coords>(4, Coords(4, 0)));
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d)
          if (b == c) table[idx(a, b)][idx(c, d)][idx(a, d)] = 1;
  Coords unit(4, 0);
  unit[idx(0, 0)] = 1;
  unit[idx(1, 1)] = 1;
  return make_ring(FiniteRing({2, 2, 2, 2}, table, unit, {"e11", "e12", "e21", "e22"}, "M2(F2)"));
}

}  // namespace

TEST_CASE("Z/6 idempotents, units, radical") {
  RingPtr r = make_zmod(6);
  CHECK(r->order() == 6);
  CHECK(r->commutative());

  auto idem = idempotents(r);
  std::set<Int> vals;
  for (const auto& e : idem) vals.insert(e[0]);
  CHECK(vals == std::set<Int>{0, 1, 3, 4});

  auto prim = primitive_idempotents(r);
  REQUIRE(prim.size() == 2);
  CHECK(r->is_zero(r->mul(prim[0], prim[1])));
  CHECK(r->equal(r->add(prim[0], prim[1]), r->unit()));

  auto units = unit_elements(r);
  REQUIRE(units.size() == 2);

  CHECK(jacobson_radical(r).sub.order() == 1);
  CHECK(r->is_nilpotent(r->zero()));
  CHECK_FALSE(r->is_nilpotent(r->from_int(2)));  // 2^k cycles through 2,4 mod 6
}

TEST_CASE("dual numbers over F_2") {
  RingPtr r = dual_numbers_f2("e");
  REQUIRE(r->order() == 4);
  REQUIRE(r->ngens() == 2);
  CHECK(r->dims() == std::vector<Int>{2, 2});
  CHECK(r->gen_names()[0] == "1");
  CHECK(r->gen_names()[1] == "e");

  Coords e = r->gen(1);
  CHECK(r->is_nilpotent(e));
  CHECK(r->is_zero(r->mul(e, e)));

  Coords u = r->add(r->unit(), e);  // 1 + e
  auto inv = r->inverse(u);
  REQUIRE(inv.has_value());
  CHECK(r->equal(*inv, u));  // self-inverse in characteristic 2
  CHECK_FALSE(r->inverse(e).has_value());

  Ideal j = jacobson_radical(r);
  CHECK(j.sub.order() == 2);
  CHECK(j.is_square_zero());
  CHECK(j.is_nilpotent());

  QuotientRing q = quotient_ring(r, j);
  CHECK(q.ring->order() == 2);
  CHECK(q.projection.is_surjective());
  CHECK(kernel_ideal(q.projection).sub.order() == 2);
}

TEST_CASE("F_4 as F_2[w]/(w^2+w+1)") {
  PresentedRing p = present_finite_ring({Int(2), {"w"}, {"w^2+w+1"}});
  RingPtr r = p.ring;
  REQUIRE(r->order() == 4);
  CHECK(r->dims() == std::vector<Int>{2, 2});

  Coords w = p.gen_images[0];
  CHECK(r->equal(r->power(w, 3), r->unit()));
  CHECK_FALSE(r->is_nilpotent(w));

  // a field: every nonzero element invertible
  int units = 0;
  for (const auto& x : r->all_elements())
    if (r->is_unit(x)) ++units;
  CHECK(units == 3);
  CHECK(jacobson_radical(r).sub.order() == 1);
  CHECK(primitive_idempotents(r).size() == 1);
}

TEST_CASE("ring hom construction and validation") {
  PresentedRing p = present_finite_ring({Int(2), {"w"}, {"w^2+w+1"}});
  RingPtr f4 = p.ring;

  SUBCASE("Frobenius on F_4 squares to the identity") {
    Coords w = p.gen_images[0];
    Coords w2 = f4->mul(w, w);
    RingHom frob = hom_from_gen_images(f4, f4, {f4->unit(), w2}, "frob");
    CHECK(frob.is_injective());
    CHECK(frob.is_surjective());
    CHECK(frob.compose(frob).matrix() == IntMat::identity(2));
    CHECK(f4->equal(frob.apply(w), w2));
  }

  SUBCASE("non-additive map is rejected") {
    RingPtr z2 = make_zmod(2), z4 = make_zmod(4);
    CHECK_THROWS_AS(hom_from_gen_images(z2, z4, {z4->unit()}), InvalidObjectError);
  }

  SUBCASE("non-multiplicative map is rejected") {
    RingPtr r = dual_numbers_f2("e");
    Coords bad = r->add(r->unit(), r->gen(1));  // e |-> 1+e breaks e^2 = 0
    CHECK_THROWS_AS(hom_from_gen_images(r, r, {r->unit(), bad}), InvalidObjectError);
  }

  SUBCASE("kernel generators of the reduction Z/4 -> Z/2") {
    RingPtr z4 = make_zmod(4), z2 = make_zmod(2);
    RingHom red = hom_from_gen_images(z4, z2, {z2->unit()}, "red");
    CHECK(red.is_surjective());
    CHECK_FALSE(red.is_injective());
    auto ker = red.kernel_generators();
    REQUIRE(!ker.empty());
    for (const auto& k : ker) CHECK(z2->is_zero(red.apply(k)));
    Ideal ki = kernel_ideal(red);
    CHECK(ki.sub.order() == 2);
    CHECK(ki.is_square_zero());  // (2)^2 = 0 in Z/4
  }
}

TEST_CASE("glued dual numbers as a fiber product") {
  RingPtr ap = dual_numbers_f2("e");
  RingPtr b = dual_numbers_f2("d");
  RingPtr bp = make_zmod(2);
  RingHom f = hom_from_gen_images(ap, bp, {bp->unit(), bp->zero()}, "f");
  RingHom g = hom_from_gen_images(b, bp, {bp->unit(), bp->zero()}, "g");

  FiberProduct fp = fiber_product_ring(f, g);
  RingPtr a = fp.ring;
  REQUIRE(a->order() == 8);
  CHECK(a->commutative());

  // the square commutes exactly
  CHECK(f.compose(fp.to_first).matrix() == g.compose(fp.to_second).matrix());
  CHECK(fp.to_first.is_surjective());
  CHECK(fp.to_second.is_surjective());
  CHECK(kernel_ideal(fp.to_first).sub.order() == 2);
  CHECK(kernel_ideal(fp.to_second).sub.order() == 2);

  Ideal j = jacobson_radical(a);
  CHECK(j.sub.order() == 4);
  CHECK(j.is_square_zero());

  // matches the one-step presentation F_2[e,d]/(e^2, d^2, e*d)
  PresentedRing pres = glued_dual_numbers();
  RingPtr r = pres.ring;
  REQUIRE(r->order() == 8);
  CHECK(jacobson_radical(r).sub.order() == 4);
  CHECK(jacobson_radical(r).is_square_zero());
  CHECK(idempotents(a).size() == idempotents(r).size());
  CHECK(unit_elements(a).size() == unit_elements(r).size());

  // nilpotency-degree fingerprint agrees element by element
  auto fingerprint = [](RingPtr ring) {
    std::multiset<int> out;
    for (const auto& x : ring->all_elements()) {
      int tag = ring->is_unit(x) ? 1 : (ring->is_nilpotent(x) ? 2 : 3);
      out.insert(tag);
    }
    return out;
  };
  CHECK(fingerprint(a) == fingerprint(r));
}

TEST_CASE("Z/4 x_{Z/2} Z/2 is Z/4") {
  RingPtr z4 = make_zmod(4), z2 = make_zmod(2);
  RingHom f = hom_from_gen_images(z4, z2, {z2->unit()}, "red");
  RingHom g = RingHom::identity(z2);
  FiberProduct fp = fiber_product_ring(f, g);
  REQUIRE(fp.ring->order() == 4);
  CHECK(fp.ring->dims() == std::vector<Int>{4});  // cyclic, so the ring is Z/4
  CHECK(fp.ring->is_nilpotent(fp.ring->from_int(2)));
  CHECK(fp.to_first.is_surjective());
  CHECK(fp.to_first.is_injective());
}

TEST_CASE("fiber product requires a surjective corner") {
  RingPtr z2 = make_zmod(2);
  ProductRing prod = product_ring(z2, z2);
  IntMat diag(2, 1);
  diag.at(0, 0) = 1;
  diag.at(1, 0) = 1;
  RingHom d(z2, prod.ring, diag, "diag");  // the diagonal misses (1,0)
  CHECK_FALSE(d.is_surjective());
  RingHom f = RingHom::identity(prod.ring);
  CHECK_THROWS_AS(fiber_product_ring(f, d), InvalidObjectError);
}

TEST_CASE("product ring and its projections") {
  RingPtr z2 = make_zmod(2), z3 = make_zmod(3);
  ProductRing p = product_ring(z2, z3);
  CHECK(p.ring->order() == 6);
  CHECK(p.to_first.is_surjective());
  CHECK(p.to_second.is_surjective());
  // Z/2 x Z/3 = Z/6, so exactly four idempotents
  CHECK(idempotents(p.ring).size() == 4);
  CHECK(primitive_idempotents(p.ring).size() == 2);
}

TEST_CASE("M_2(F_2) is noncommutative and semisimple") {
  RingPtr m = mat2_f2();
  REQUIRE(m->order() == 16);
  CHECK_FALSE(m->commutative());

  CHECK(unit_elements(m).size() == 6);  // |GL_2(F_2)|

  // e11 * e12 = e12 but e12 * e11 = 0
  CHECK(m->equal(m->mul(m->gen(0), m->gen(1)), m->gen(1)));
  CHECK(m->is_zero(m->mul(m->gen(1), m->gen(0))));

  CHECK(jacobson_radical(m).sub.order() == 1);

  // a two-sided ideal containing e11 is everything
  Ideal i = ideal_from_generators(m, {m->gen(0)});
  CHECK(i.sub.order() == 16);

  // inverses are two-sided
  Coords x = m->add(m->gen(1), m->gen(2));  // antidiagonal matrix, order 2
  auto inv = m->inverse(x);
  REQUIRE(inv.has_value());
  CHECK(m->equal(m->mul(*inv, x), m->unit()));
  CHECK(m->equal(m->mul(x, *inv), m->unit()));
}

TEST_CASE("ideals and quotients of the glued ring") {
  PresentedRing pres = glued_dual_numbers();
  RingPtr r = pres.ring;
  Coords e = pres.gen_images[0], d = pres.gen_images[1];

  Ideal ie = ideal_from_generators(r, {e});
  CHECK(ie.sub.order() == 2);  // e*d = e^2 = 0, so (e) = {0, e}
  CHECK(ie.sub.contains(e));
  CHECK_FALSE(ie.sub.contains(d));
  CHECK_FALSE(ie.sub.contains(r->unit()));

  QuotientRing q = quotient_ring(r, ie, "R/(e)");
  CHECK(q.ring->order() == 4);
  Ideal jq = jacobson_radical(q.ring);
  CHECK(jq.sub.order() == 2);  // the image of d survives
  CHECK(q.ring->is_nilpotent(q.projection.apply(d)));

  // subgroup coordinates round-trip
  Ideal j = jacobson_radical(r);
  auto c = j.sub.coords_of(r->add(e, d));
  CHECK(r->equal(j.sub.elem_of(c), r->add(e, d)));
  CHECK(j.sub.contains_subgroup(ie.sub));
  CHECK_FALSE(ie.sub.contains_subgroup(j.sub));
}

TEST_CASE("unitalization") {
  RingPtr f2 = make_zmod(2);

  SUBCASE("square-zero: F_2 |x I gives dual numbers") {
    NonUnitalRing i({Int(2)}, {{{Int(0)}}}, {"h"});
    Unitalization u = unitalization(f2, i, scalar_action(f2, i));
    CHECK(u.ring->order() == 4);
    REQUIRE(u.ideal_gens.size() == 1);
    CHECK(u.ring->is_nilpotent(u.ideal_gens[0]));
    CHECK(u.to_base.is_surjective());
    CHECK(kernel_ideal(u.to_base).sub.order() == 2);
    Ideal j = jacobson_radical(u.ring);
    CHECK(j.sub.order() == 2);
  }

  SUBCASE("idempotent: F_2 |x F_2 gives F_2 x F_2") {
    NonUnitalRing i({Int(2)}, {{{Int(1)}}}, {"h"});
    Unitalization u = unitalization(f2, i, scalar_action(f2, i));
    CHECK(u.ring->order() == 4);
    CHECK(idempotents(u.ring).size() == 4);
    CHECK(primitive_idempotents(u.ring).size() == 2);
    CHECK(jacobson_radical(u.ring).sub.order() == 1);
  }

  SUBCASE("incompatible action is rejected with a clear message") {
    NonUnitalRing i({Int(2)}, {{{Int(0)}}}, {"h"});
    BimoduleAction act;
    act.left.push_back(IntMat(1, 1));  // unit acting as zero breaks the unit law
    act.right.push_back(IntMat(1, 1));
    try {
      unitalization(f2, i, act);
      FAIL("expected InvalidObjectError");
    } catch (const InvalidObjectError& ex) {
      CHECK(std::string(ex.what()).find("incompatible bimodule action") != std::string::npos);
    }
  }

  SUBCASE("Z/4 acting on F_2 through the quotient") {
    RingPtr z4 = make_zmod(4);
    NonUnitalRing i({Int(2)}, {{{Int(0)}}}, {"h"});
    Unitalization u = unitalization(z4, i, scalar_action(z4, i));
    CHECK(u.ring->order() == 8);
    CHECK(u.ring->is_nilpotent(u.ideal_gens[0]));
  }
}

TEST_CASE("ideal as nonunital ring round-trip") {
  PresentedRing pres = glued_dual_numbers();
  Ideal j = jacobson_radical(pres.ring);
  NonUnitalRing nu = ideal_as_nonunital(j);
  CHECK(nu.ngens() == 2);
  // all products vanish in the square-zero radical
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k) {
      Coords gi(2, 0), gk(2, 0);
      gi[i] = 1;
      gk[k] = 1;
      CHECK(lin::vec_is_zero(nu.mul(gi, gk)));
    }
}

TEST_CASE("presentation engine edge cases") {
  SUBCASE("non-invertible leading coefficient is unsupported") {
    CHECK_THROWS_AS(make_finite_ring({Int(4), {"x"}, {"2*x"}}), UnsupportedError);
  }
  SUBCASE("infinite ring hits the cap") {
    CHECK_THROWS_AS(make_finite_ring({Int(2), {"x"}, {}}), LimitError);
  }
  SUBCASE("constant relation changing the modulus is unsupported") {
    CHECK_THROWS_AS(make_finite_ring({Int(6), {}, {"3"}}), UnsupportedError);
  }
  SUBCASE("invertible constant relation collapses to the zero ring") {
    RingPtr z = make_finite_ring({Int(5), {}, {"3"}});
    CHECK(z->order() == 1);
    CHECK(z->ngens() == 0);
    CHECK(z->is_zero(z->unit()));
  }
  SUBCASE("relation rewriting: x^2 = x splits F_2[x]") {
    RingPtr r = make_finite_ring({Int(2), {"x"}, {"x^2+x"}});
    CHECK(r->order() == 4);
    CHECK(idempotents(r).size() == 4);
  }
  SUBCASE("completion discovers consequences") {
    // x^2 = y and y^2 = 0 force x^4 = 0
    PresentedRing p = present_finite_ring({Int(2), {"x", "y"}, {"x^2+y", "y^2"}});
    CHECK(p.ring->order() == 16);  // basis 1, x, y, x*y
    CHECK(p.ring->is_nilpotent(p.gen_images[0]));
  }
  SUBCASE("Z/9 truncated polynomials") {
    PresentedRing p = present_finite_ring({Int(9), {"t"}, {"t^3"}});
    CHECK(p.ring->order() == 729);
    CHECK(p.ring->is_nilpotent(p.gen_images[0]));
    CHECK(p.ring->is_nilpotent(p.ring->from_int(3)));
    CHECK(unit_elements(p.ring, 1 << 12).size() == 486);  // 729 * (2/3)
  }
}

TEST_CASE("all_elements enumeration matches the order") {
  for (RingPtr r : {make_zmod(7), dual_numbers_f2("e"), glued_dual_numbers().ring}) {
    auto all = r->all_elements();
    CHECK(Int(static_cast<unsigned long>(all.size())) == r->order());
    std::set<std::vector<Int>> uniq(all.begin(), all.end());
    CHECK(uniq.size() == all.size());
  }
  CHECK_THROWS_AS(make_zmod(100000)->all_elements(1 << 16), LimitError);
}

TEST_CASE("canonical serialization is stable and injective on examples") {
  RingPtr a = glued_dual_numbers().ring;
  RingPtr b = glued_dual_numbers().ring;
  CHECK(a->canonical_serialization() == b->canonical_serialization());
  CHECK(a->canonical_serialization() != dual_numbers_f2("e")->canonical_serialization());
}
