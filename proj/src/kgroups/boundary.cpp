// Milnor patching boundary K_1(B') -> K_0(A) and the Bass-Milnor sequence.
// P_u lives inside A' + B as the kernel of (a', b) |-> fp(a') u - gp(b); the
// A-action goes through (f, g). Local freeness of rank one is certified by
// exhibiting a generator whose orbit map is bijective on each component.

#include <map>
#include <set>

#include "excision/error.hpp"
#include "excision/kgroups.hpp"

namespace exl::kgroups {

namespace {

// (f(a) a', g(a) b) on concatenated coordinates of A' + B
Coords act(const squares::RingSquare& sq, const Coords& a, const Coords& p) {
  int na = sq.ap->ngens();
  Coords left(p.begin(), p.begin() + na), right(p.begin() + na, p.end());
  left = sq.ap->mul(sq.f.apply(a), left);
  right = sq.b->mul(sq.g.apply(a), right);
  left.insert(left.end(), right.begin(), right.end());
  return left;
}

std::vector<Coords> subgroup_elements(const rings::Subgroup& s) {
  std::vector<Coords> out;
  std::vector<Int> c(size_t(s.rank()), 0);
  for (;;) {
    out.push_back(s.elem_of(c));
    int i = 0;
    for (; i < s.rank(); ++i) {
      if (++c[size_t(i)] < s.basis_orders()[size_t(i)]) break;
      c[size_t(i)] = 0;
    }
    if (i == s.rank()) return out;
  }
}

}  // namespace

BoundaryClass boundary(const Coords& u, const squares::RingSquare& sq) {
  Verdict milnor = squares::is_milnor(sq);
  if (!milnor.holds)
    throw InvalidObjectError("boundary needs a finite Milnor square: " + milnor.evidence);
  if (!sq.bp->is_unit(u))
    throw InvalidObjectError("boundary argument " + sq.bp->elem_str(u) + " is not a unit of " +
                             sq.bp->name());
  K0Data base = k0(sq.a);

  rings::ProductRing prod = rings::product_ring(sq.ap, sq.b);
  IntMat m = (sq.bp->right_mult_matrix(u) * sq.fp.matrix()).hstack(-sq.gp.matrix());
  lin::GroupHom patch(prod.ring->additive_group(), sq.bp->additive_group(), std::move(m));
  rings::Subgroup p(prod.ring, patch.kernel_generators());
  std::vector<Coords> p_elems = subgroup_elements(p);

  std::vector<Int> ranks;
  for (const Coords& e : base.components) {
    std::set<Coords> local_ring;
    for (const Coords& a : sq.a->all_elements()) local_ring.insert(sq.a->mul(e, a));
    std::set<Coords> local_mod;
    for (const Coords& x : p_elems) local_mod.insert(prod.ring->reduce(act(sq, e, x)));

    bool free_rank_one = false;
    if (local_mod.size() == local_ring.size()) {
      for (const Coords& cand : local_mod) {
        std::set<Coords> orbit;
        for (const Coords& a : local_ring) orbit.insert(prod.ring->reduce(act(sq, a, cand)));
        if (orbit.size() == local_ring.size() && orbit == local_mod) {
          free_rank_one = true;
          break;
        }
      }
    }
    if (!free_rank_one)
      throw InvalidObjectError("patching module of " + sq.bp->elem_str(u) +
                               " is not free of rank one over the component at " +
                               sq.a->elem_str(e) + "; the square is not Milnor-patchable");
    ranks.push_back(1);
  }

  std::vector<Int> cls = ranks;
  for (Int& c : cls) c -= 1;
  return BoundaryClass{std::move(ranks), std::move(cls)};
}

namespace {

IntMat stack_logs(const K1Data& top, const K1Data& bottom, const rings::RingHom& ftop,
                  const rings::RingHom& fbottom, const std::vector<Coords>& gens) {
  IntMat m(int(top.gens.size() + bottom.gens.size()), int(gens.size()));
  for (size_t i = 0; i < gens.size(); ++i) {
    const std::vector<Int>& hi = top.log_of(ftop.apply(gens[i]));
    const std::vector<Int>& lo = bottom.log_of(fbottom.apply(gens[i]));
    for (size_t j = 0; j < hi.size(); ++j) m.at(int(j), int(i)) = hi[j];
    for (size_t j = 0; j < lo.size(); ++j) m.at(int(top.gens.size() + j), int(i)) = lo[j];
  }
  return m;
}

}  // namespace

BassMilnorSequence bass_milnor(const squares::RingSquare& sq) {
  Verdict milnor = squares::is_milnor(sq);
  if (!milnor.holds)
    throw InvalidObjectError("Bass-Milnor sequence needs a Milnor square: " + milnor.evidence);

  K1Data k1_a = k1(sq.a), k1_ap = k1(sq.ap), k1_b = k1(sq.b), k1_bp = k1(sq.bp);
  K0Data k0_a = k0(sq.a), k0_ap = k0(sq.ap), k0_b = k0(sq.b), k0_bp = k0(sq.bp);
  FgGroup k1_sum = lin::direct_sum(k1_ap.group, k1_b.group);
  FgGroup k0_sum = lin::direct_sum(k0_ap.group, k0_b.group);

  GroupHom d1(k1_a.group, k1_sum, stack_logs(k1_ap, k1_b, sq.f, sq.g, k1_a.gens));

  IntMat m2(int(k1_bp.gens.size()), int(k1_ap.gens.size() + k1_b.gens.size()));
  for (size_t i = 0; i < k1_ap.gens.size(); ++i) {
    const std::vector<Int>& col = k1_bp.log_of(sq.fp.apply(k1_ap.gens[i]));
    for (size_t j = 0; j < col.size(); ++j) m2.at(int(j), int(i)) = col[j];
  }
  for (size_t i = 0; i < k1_b.gens.size(); ++i) {
    const std::vector<Int>& col = k1_bp.log_of(sq.gp.apply(k1_b.gens[i]));
    for (size_t j = 0; j < col.size(); ++j) m2.at(int(j), int(k1_ap.gens.size() + i)) = -col[j];
  }
  GroupHom d2(k1_sum, k1_bp.group, std::move(m2));

  IntMat mdel(int(k0_a.components.size()), int(k1_bp.gens.size()));
  for (size_t i = 0; i < k1_bp.gens.size(); ++i) {
    BoundaryClass bc = boundary(k1_bp.gens[i], sq);
    for (size_t j = 0; j < bc.k0_class.size(); ++j) mdel.at(int(j), int(i)) = bc.k0_class[j];
  }
  GroupHom del(k1_bp.group, k0_a.group, std::move(mdel));

  IntMat m3(int(k0_ap.components.size() + k0_b.components.size()), int(k0_a.components.size()));
  for (size_t i = 0; i < k0_a.components.size(); ++i) {
    std::vector<Int> hi = idempotent_class(k0_ap, sq.f.apply(k0_a.components[i]));
    std::vector<Int> lo = idempotent_class(k0_b, sq.g.apply(k0_a.components[i]));
    for (size_t j = 0; j < hi.size(); ++j) m3.at(int(j), int(i)) = hi[j];
    for (size_t j = 0; j < lo.size(); ++j) m3.at(int(k0_ap.components.size() + j), int(i)) = lo[j];
  }
  GroupHom d3(k0_a.group, k0_sum, std::move(m3));

  IntMat m4(int(k0_bp.components.size()), int(k0_ap.components.size() + k0_b.components.size()));
  for (size_t i = 0; i < k0_ap.components.size(); ++i) {
    std::vector<Int> col = idempotent_class(k0_bp, sq.fp.apply(k0_ap.components[i]));
    for (size_t j = 0; j < col.size(); ++j) m4.at(int(j), int(i)) = col[j];
  }
  for (size_t i = 0; i < k0_b.components.size(); ++i) {
    std::vector<Int> col = idempotent_class(k0_bp, sq.gp.apply(k0_b.components[i]));
    for (size_t j = 0; j < col.size(); ++j)
      m4.at(int(j), int(k0_ap.components.size() + i)) = -col[j];
  }
  GroupHom d4(k0_sum, k0_bp.group, std::move(m4));

  std::vector<SequencePosition> positions;
  positions.push_back({"K1(A') + K1(B)", lin::exactness_at(d1, d2)});
  positions.push_back({"K1(B')", lin::exactness_at(d2, del)});
  positions.push_back({"K0(A)", lin::exactness_at(del, d3)});
  positions.push_back({"K0(A') + K0(B)", lin::exactness_at(d3, d4)});

  bool composites = true, exact = true;
  for (const SequencePosition& pos : positions) {
    composites = composites && pos.report.composite_zero;
    exact = exact && pos.report.exact;
  }

  return BassMilnorSequence{std::move(k1_a),  std::move(k1_ap), std::move(k1_b),
                            std::move(k1_bp), std::move(k0_a),  std::move(k0_ap),
                            std::move(k0_b),  std::move(k0_bp), std::move(k1_sum),
                            std::move(k0_sum), std::move(d1),   std::move(d2),
                            std::move(del),   std::move(d3),    std::move(d4),
                            std::move(positions), composites,   exact};
}

}  // namespace exl::kgroups
