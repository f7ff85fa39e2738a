#include <doctest.h>

#include <random>
#include <set>

#include "excision/abelian.hpp"
#include "excision/intmat.hpp"

using namespace exl::lin;

namespace {

IntMat mat(const std::vector<std::vector<long>>& rows) {
  std::vector<std::vector<Int>> r;
  for (const auto& row : rows) r.emplace_back(row.begin(), row.end());
  return IntMat::from_rows(r);
}

std::vector<Int> vec(const std::vector<long>& v) { return std::vector<Int>(v.begin(), v.end()); }

// all elements of a finite group presented with diagonal relations, as
// canonical tuples; independent of FgGroup::canon
std::set<std::vector<Int>> enumerate_image(const FgGroup& src, const std::vector<Int>& moduli,
                                           const GroupHom& h) {
  std::set<std::vector<Int>> out;
  std::vector<Int> x(src.ngens(), 0);
  for (;;) {
    out.insert(h.tgt().canon(h.apply(x)));
    int k = 0;
    while (k < src.ngens()) {
      x[k] += 1;
      if (x[k] < moduli[k]) break;
      x[k] = 0;
      ++k;
    }
    if (k == src.ngens()) break;
  }
  return out;
}

std::set<std::vector<Int>> enumerate_kernel(const FgGroup& src, const std::vector<Int>& moduli,
                                            const GroupHom& h) {
  std::set<std::vector<Int>> out;
  std::vector<Int> x(src.ngens(), 0);
  for (;;) {
    if (h.tgt().is_zero(h.apply(x))) out.insert(src.canon(x));
    int k = 0;
    while (k < src.ngens()) {
      x[k] += 1;
      if (x[k] < moduli[k]) break;
      x[k] = 0;
      ++k;
    }
    if (k == src.ngens()) break;
  }
  return out;
}

}  // namespace

TEST_CASE("smith normal form of the 2x2 textbook matrix") {
  IntMat a = mat({{2, 4}, {6, 8}});
  Snf s = smith_normal_form(a);
  REQUIRE(s.rank == 2);
  CHECK(s.diag[0] == 2);
  CHECK(s.diag[1] == 4);
  CHECK(s.u * a * s.v == s.d);
  CHECK(abs(det(s.u)) == 1);
  CHECK(abs(det(s.v)) == 1);
}

TEST_CASE("smith normal form is deterministic and well-formed on a random corpus") {
  std::mt19937_64 rng(0x5eedc0de);  // recorded seed, shared with the acceptance suite
  std::uniform_int_distribution<int> dim(1, 6), entry(-9, 9);
  for (int trial = 0; trial < 200; ++trial) {
    int r = dim(rng), c = dim(rng);
    IntMat a(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) a.at(i, j) = entry(rng);
    Snf s = smith_normal_form(a);
    CHECK(s.u * a * s.v == s.d);
    CHECK(abs(det(s.u)) == 1);
    CHECK(abs(det(s.v)) == 1);
    for (int i = 0; i + 1 < s.rank; ++i) CHECK(s.diag[i + 1] % s.diag[i] == 0);
    for (int i = 0; i < s.rank; ++i) CHECK(s.diag[i] > 0);
    // off-pivot entries vanish
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j)
        if (i != j || i >= s.rank) CHECK(s.d.at(i, j) == 0);
    Snf s2 = smith_normal_form(a);
    CHECK(s2.u == s.u);
    CHECK(s2.v == s.v);
    CHECK(s2.d == s.d);
  }
}

TEST_CASE("integer solving and kernels") {
  IntMat a = mat({{2, 4}, {6, 8}});
  auto x = solve_int(a, vec({6, 14}));
  REQUIRE(x.has_value());
  CHECK(mat_vec(a, *x) == vec({6, 14}));
  CHECK_FALSE(solve_int(a, vec({1, 0})).has_value());

  IntMat k = kernel_basis(mat({{1, 2, 3}}));
  REQUIRE(k.cols() == 2);
  for (int j = 0; j < 2; ++j) {
    auto col = k.col(j);
    CHECK(col[0] + 2 * col[1] + 3 * col[2] == 0);
  }

  // preimage of the even sublattice under doubling is everything
  IntMat p = preimage_lattice(mat({{2}}), mat({{4}}));
  CHECK(lattice_contains(p, mat({{2}})));
  CHECK_FALSE(lattice_contains(p, mat({{1}})));
}

TEST_CASE("cokernel presentations and invariant factors") {
  FgGroup g(2, mat({{2, 4}, {6, 8}}));
  CHECK(g.invariant_factors() == std::vector<Int>{2, 4});
  CHECK(g.free_rank() == 0);
  CHECK(g.order() == 8);
  CHECK(g.str() == "Z/2 x Z/4");

  FgGroup h(2, mat({{2, 0}, {0, 3}}));
  CHECK(h.invariant_factors() == std::vector<Int>{6});
  CHECK(h.str() == "Z/6");

  FgGroup f(3, mat({{1, 0}, {0, 2}, {0, 0}}));
  CHECK(f.invariant_factors() == std::vector<Int>{2});
  CHECK(f.free_rank() == 1);
  CHECK(f.order() == 0);
  CHECK(f.str() == "Z x Z/2");

  CHECK(FgGroup().trivial());
  CHECK(FgGroup().str() == "0");
}

TEST_CASE("canonical coordinates match enumeration") {
  FgGroup g(2, mat({{2, 4}, {6, 8}}));  // Z/2 x Z/4
  std::set<std::vector<Int>> classes;
  for (long a = -8; a <= 8; ++a)
    for (long b = -8; b <= 8; ++b) classes.insert(g.canon(vec({a, b})));
  CHECK(classes.size() == 8);
  CHECK(g.is_zero(vec({2, 6})));   // first relation column
  CHECK(g.is_zero(vec({4, 8})));   // second
  CHECK_FALSE(g.is_zero(vec({1, 0})));
  for (int k = 0; k < g.canon_dim(); ++k) {
    std::vector<Int> e(g.canon_dim(), 0);
    e[k] = 1;
    CHECK(g.canon(g.canon_generator(k)) == e);
  }
}

TEST_CASE("kernel, image, cokernel of a hom") {
  FgGroup z4 = FgGroup::from_invariants({4});
  FgGroup z2 = FgGroup::from_invariants({2});
  GroupHom pr(z4, z2, mat({{1}}));  // reduction mod 2
  CHECK(pr.kernel_group().str() == "Z/2");
  CHECK(pr.image_group().str() == "Z/2");
  CHECK(pr.cokernel_group().trivial());
  CHECK(pr.surjective());
  CHECK_FALSE(pr.injective());

  GroupHom dbl(z4, z4, mat({{2}}));
  CHECK(dbl.kernel_group().str() == "Z/2");
  CHECK(dbl.image_group().str() == "Z/2");
  CHECK(dbl.cokernel_group().str() == "Z/2");
}

TEST_CASE("exactness at the middle of short sequences") {
  FgGroup z4 = FgGroup::from_invariants({4});
  GroupHom f(z4, z4, mat({{2}}));
  auto rep = exactness_at(f, f);  // Z/4 --2--> Z/4 --2--> Z/4
  CHECK(rep.composite_zero);
  CHECK(rep.exact);

  FgGroup z2 = FgGroup::from_invariants({2});
  GroupHom zero_map = GroupHom::zero(z2, z2);
  auto bad = exactness_at(zero_map, zero_map);
  CHECK(bad.composite_zero);
  CHECK_FALSE(bad.exact);
  CHECK(bad.homology.str() == "Z/2");
  REQUIRE(bad.witness.has_value());
  CHECK_FALSE(z2.is_zero(*bad.witness));

  // free case: Z --(1,1)--> Z^2 --(1,-1)--> Z
  FgGroup z = FgGroup::free_group(1), zz = FgGroup::free_group(2);
  GroupHom diag(z, zz, mat({{1}, {1}}));
  GroupHom diff(zz, z, mat({{1, -1}}));
  auto free_rep = exactness_at(diag, diff);
  CHECK(free_rep.exact);

  // index-2 failure: Z --(2,2)--> Z^2 --(1,-1)--> Z has homology Z/2
  GroupHom diag2(z, zz, mat({{2}, {2}}));
  auto idx = exactness_at(diag2, diff);
  CHECK(idx.composite_zero);
  CHECK_FALSE(idx.exact);
  CHECK(idx.homology.str() == "Z/2");
}

TEST_CASE("exactness agrees with element enumeration on finite groups") {
  std::mt19937_64 rng(0x5eedc0de);
  std::uniform_int_distribution<int> pick(0, 2), entry(0, 5);
  const std::vector<std::vector<Int>> shapes = {{2, 4}, {3, 3}, {2, 2, 2}, {6}};
  for (int trial = 0; trial < 40; ++trial) {
    auto sa = shapes[pick(rng) % shapes.size()];
    auto sb = shapes[pick(rng) % shapes.size()];
    auto sc = shapes[pick(rng) % shapes.size()];
    FgGroup a = FgGroup::from_invariants(sa);
    FgGroup b = FgGroup::from_invariants(sb);
    FgGroup c = FgGroup::from_invariants(sc);
    // build well-defined random homs by multiplying through the target order
    auto rand_hom = [&](const FgGroup& s, const FgGroup& t,
                        const std::vector<Int>& sm, const std::vector<Int>& tm) {
      IntMat m(t.ngens(), s.ngens());
      for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
          Int g = gcd(tm[i], sm[j]);
          m.at(i, j) = (tm[i] / g) * entry(rng);
        }
      return GroupHom(s, t, m);
    };
    GroupHom f = rand_hom(a, b, sa, sb);
    GroupHom g = rand_hom(b, c, sb, sc);
    auto im = enumerate_image(a, sa, f);
    auto ker = enumerate_kernel(b, sb, g);
    bool comp_zero = std::includes(ker.begin(), ker.end(), im.begin(), im.end());
    if (!comp_zero) continue;  // random maps need not compose to zero
    auto rep = exactness_at(f, g);
    CHECK(rep.composite_zero);
    CHECK(rep.exact == (im == ker));
    if (!rep.exact) {
      REQUIRE(rep.witness.has_value());
      auto w = b.canon(*rep.witness);
      CHECK(ker.count(w) == 1);
      CHECK(im.count(w) == 0);
    }
  }
}

TEST_CASE("torsion exponents") {
  CHECK(torsion_exponent(FgGroup::from_invariants({8}), 2) == 3);
  CHECK(torsion_exponent(FgGroup::from_invariants({2, 4}), 2) == 2);
  CHECK(torsion_exponent(FgGroup::from_invariants({12}), 2) == std::nullopt);
  CHECK(torsion_exponent(FgGroup::from_invariants({12}), 6) == 2);
  CHECK(torsion_exponent(FgGroup::from_invariants({9}), 3) == 2);
  CHECK(torsion_exponent(FgGroup(), 2) == 0);
  CHECK(torsion_exponent(FgGroup::free_group(1), 2) == std::nullopt);
}

TEST_CASE("inverting primes on finite groups") {
  FgGroup z12 = FgGroup::from_invariants({12});
  CHECK(invert_primes(z12, 2).str() == "Z/3");
  CHECK(invert_primes(z12, 3).str() == "Z/4");
  CHECK(invert_primes(z12, 6).trivial());
  CHECK(invert_primes(z12, 5).str() == "Z/12");
  CHECK(invert_primes(z12, 0).trivial());
  FgGroup mixed = FgGroup::from_invariants({6}, 2);
  CHECK(invert_primes(mixed, 3).str() == "Z^2 x Z/2");
  CHECK(invert_primes(mixed, 0).str() == "Z^2");
}
