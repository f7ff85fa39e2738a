#include <doctest.h>

#include "excision/error.hpp"
#include "excision/kgroups.hpp"
#include "excision/squares.hpp"

using namespace exl;
using namespace exl::kgroups;
using rings::Coords;
using rings::RingHom;
using rings::RingPtr;
using squares::RingSquare;
using squares::ring_square;

namespace {

RingSquare glued_square(const lin::Int& modulus) {
  RingPtr a = rings::make_finite_ring({modulus, {"e", "d"}, {"e^2", "d^2", "e*d"}});
  Coords e = a->gen(1), d = a->gen(2);
  RingHom p1 = rings::quotient_ring(a, rings::ideal_from_generators(a, {d}), "A'").projection;
  RingHom p2 = rings::quotient_ring(a, rings::ideal_from_generators(a, {e}), "B").projection;
  RingHom p3 = rings::quotient_ring(a, rings::ideal_from_generators(a, {e, d}), "B'").projection;
  RingHom fp = rings::induced_hom(p1, p3, "A'->B'");
  RingHom gp = rings::induced_hom(p2, p3, "B->B'");
  return ring_square(p1, p2, fp, gp, "glued mod " + modulus.get_str());
}

RingSquare mod4_corner() {
  RingPtr z4 = rings::make_zmod(4), z2 = rings::make_zmod(2);
  RingHom red = rings::hom_from_gen_images(z4, z2, {z2->unit()}, "Z/4->Z/2");
  RingHom id = RingHom::identity(z2);
  rings::FiberProduct fib = rings::fiber_product_ring(red, id);
  return squares::square_from_fiber_product(fib, red, id, "Z/4 corner");
}

RingSquare collapsed_square() {
  RingPtr a = rings::make_finite_ring({lin::Int(2), {"e"}, {"e^2"}});
  RingHom p = rings::quotient_ring(a, rings::ideal_from_generators(a, {a->gen(1)}), "k").projection;
  RingHom id = RingHom::identity(p.tgt());
  return ring_square(p, p, id, id, "collapsed corner");
}

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
  return rings::make_ring(
      rings::FiniteRing({2, 2, 2, 2}, table, unit, {"e11", "e12", "e21", "e22"}, "M2(F2)"));
}

}  // namespace

TEST_CASE("K0 counts primitive idempotent components") {
  K0Data z6 = k0(rings::make_zmod(6));
  CHECK(z6.components.size() == 2);
  CHECK(z6.group.str() == "Z^2");
  CHECK(idempotent_class(z6, z6.ring->unit()) == std::vector<lin::Int>{1, 1});
  CHECK(idempotent_class(z6, z6.ring->zero()) == std::vector<lin::Int>{0, 0});
  CHECK_THROWS_AS(idempotent_class(z6, z6.ring->from_int(2)), InvalidObjectError);

  K0Data dual = k0(rings::make_finite_ring({lin::Int(2), {"e"}, {"e^2"}}));
  CHECK(dual.components.size() == 1);
  CHECK(dual.group.str() == "Z");

  rings::ProductRing f2f2 = rings::product_ring(rings::make_zmod(2), rings::make_zmod(2));
  K0Data split = k0(f2f2.ring);
  CHECK(split.components.size() == 2);
  // each factor projection sees exactly one component
  std::vector<lin::Int> c0 = idempotent_class(split, split.components[0]);
  std::vector<lin::Int> c1 = idempotent_class(split, split.components[1]);
  CHECK(lin::vec_add(c0, c1) == std::vector<lin::Int>{1, 1});
}

TEST_CASE("K1 is the unit group with a verified Schreier presentation") {
  K1Data z8 = k1(rings::make_zmod(8));
  CHECK(z8.units.size() == 4);
  CHECK(z8.group.str() == "Z/2 x Z/2");
  CHECK(z8.group.order() == 4);

  K1Data z5 = k1(rings::make_zmod(5));
  CHECK(z5.group.str() == "Z/4");

  K1Data f2 = k1(rings::make_zmod(2));
  CHECK(f2.group.trivial());
  CHECK(f2.gens.empty());

  RingPtr glued = rings::make_finite_ring({lin::Int(2), {"e", "d"}, {"e^2", "d^2", "e*d"}});
  K1Data kg = k1(glued);
  CHECK(kg.units.size() == 4);
  CHECK(kg.group.str() == "Z/2 x Z/2");

  RingPtr f3e = rings::make_finite_ring({lin::Int(3), {"e"}, {"e^2"}});
  K1Data k6 = k1(f3e);
  CHECK(k6.units.size() == 6);
  CHECK(k6.group.str() == "Z/6");

  // logs multiply: log(u v) = log(u) + log(v) in the group
  for (const Coords& u : k6.units)
    for (const Coords& v : k6.units) {
      std::vector<lin::Int> sum = lin::vec_add(k6.log_of(u), k6.log_of(v));
      CHECK(k6.group.canon(sum) == k6.group.canon(k6.log_of(k6.ring->mul(u, v))));
    }
  CHECK_THROWS_AS(k1(rings::make_zmod(8)).log_of(rings::make_zmod(8)->from_int(2)),
                  InvalidObjectError);
}

TEST_CASE("unit maps induced by ring homs are honest group homs") {
  RingPtr z8 = rings::make_zmod(8), z4 = rings::make_zmod(4);
  K1Data u8 = k1(z8), u4 = k1(z4);
  RingHom red = rings::hom_from_gen_images(z8, z4, {z4->unit()}, "Z/8->Z/4");
  lin::GroupHom h = induced_on_units(u8, u4, red);
  CHECK(h.surjective());
  CHECK_FALSE(h.injective());
  CHECK(h.kernel_group().str() == "Z/2");
  RingHom other = rings::hom_from_gen_images(z4, z4, {z4->unit()}, "id");
  CHECK_THROWS_AS(induced_on_units(u8, u4, other), InvalidObjectError);
}

TEST_CASE("boundary classes of units vanish on finite Milnor squares") {
  RingSquare sq = glued_square(2);
  BoundaryClass one = boundary(sq.bp->unit(), sq);
  CHECK(one.ranks == std::vector<lin::Int>{1});
  CHECK(one.k0_class == std::vector<lin::Int>{0});

  RingSquare sq3 = glued_square(3);
  for (const Coords& u : rings::unit_elements(sq3.bp)) {
    BoundaryClass b = boundary(u, sq3);
    for (const lin::Int& c : b.k0_class) CHECK(c == 0);
  }

  CHECK_THROWS_AS(boundary(sq.bp->zero(), sq), InvalidObjectError);
  CHECK_THROWS_AS(boundary(collapsed_square().bp->unit(), collapsed_square()),
                  InvalidObjectError);
}

TEST_CASE("bass-milnor sequence of the glued square is the known exact row") {
  BassMilnorSequence seq = bass_milnor(glued_square(2));
  CHECK(seq.k1_a.group.str() == "Z/2 x Z/2");
  CHECK(seq.k1_sum.str() == "Z/2 x Z/2");
  CHECK(seq.k1_bp.group.trivial());
  CHECK(seq.k0_a.group.str() == "Z");
  CHECK(seq.k0_sum.str() == "Z^2");
  CHECK(seq.k0_bp.group.str() == "Z");
  CHECK(seq.composites_zero);
  CHECK(seq.exact);
  REQUIRE(seq.positions.size() == 4);
  for (const SequencePosition& pos : seq.positions) {
    CHECK(pos.report.composite_zero);
    CHECK(pos.report.exact);
    CHECK(pos.report.homology.trivial());
  }
  // the boundary map is zero: rank functions restrict from the covers
  CHECK(seq.boundary.is_zero());
}

TEST_CASE("bass-milnor exactness on further finite corners") {
  BassMilnorSequence corner = bass_milnor(mod4_corner());
  CHECK(corner.k1_a.group.str() == "Z/2");
  CHECK(corner.exact);
  CHECK(corner.composites_zero);

  BassMilnorSequence big = bass_milnor(glued_square(4));
  CHECK(big.exact);
  CHECK(big.composites_zero);

  CHECK_THROWS_AS(bass_milnor(collapsed_square()), InvalidObjectError);
}

TEST_CASE("laurent units over prime fields: finite part plus one free rank") {
  LaurentK1 f5 = laurent_units(rings::make_zmod(5));
  CHECK(f5.finite_part.str() == "Z/4");
  CHECK(f5.free_rank == 1);
  CHECK(f5.group.str() == "Z x Z/4");
  CHECK(f5.monomials_only.holds);
  CHECK_FALSE(f5.certificate.empty());

  CHECK(laurent_units(rings::make_zmod(2)).group.str() == "Z");
  CHECK(laurent_units(rings::make_zmod(3)).finite_part.str() == "Z/2");

  CHECK_THROWS_AS(laurent_units(rings::make_finite_ring({lin::Int(2), {"e"}, {"e^2"}})),
                  UnsupportedError);
}

TEST_CASE("NK1 vanishes at unit level: polynomial units are constants") {
  NK1Report f2 = nk1_field(rings::make_zmod(2));
  CHECK(f2.trivial);
  CHECK(f2.constant_units == 1);

  NK1Report f3 = nk1_field(rings::make_zmod(3));
  CHECK(f3.trivial);
  CHECK(f3.constant_units == 2);

  NK1Report f5 = nk1_field(rings::make_zmod(5));
  CHECK(f5.trivial);
  CHECK(f5.constant_units == 4);
  CHECK_FALSE(f5.certificate.empty());
}

TEST_CASE("K-group constructions reject noncommutative input") {
  RingPtr m = mat2_f2();
  CHECK_THROWS_AS(k0(m), UnsupportedError);
  CHECK_THROWS_AS(k1(m), UnsupportedError);
}
