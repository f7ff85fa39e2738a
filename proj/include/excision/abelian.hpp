#pragma once
// Finitely generated abelian groups presented as Z^n modulo the column span
// of a relation matrix, homs between them, kernels/images, and exactness
// checking. Torsion-only groups print as products of cyclic groups; the
// K_0 rows of Bass-Milnor sequences need the free rank too, so the type
// carries both.

#include <optional>
#include <string>
#include <vector>

#include "excision/intmat.hpp"

namespace exl::lin {

class FgGroup {
public:
  FgGroup() : FgGroup(0, IntMat(0, 0)) {}
  FgGroup(int ngens, IntMat rels);
  static FgGroup free_group(int rank);
  static FgGroup from_invariants(const std::vector<Int>& inv, int free_rank = 0);

  int ngens() const { return ngens_; }
  const IntMat& rels() const { return rels_; }
  const std::vector<Int>& invariant_factors() const { return inv_; }
  int free_rank() const { return free_rank_; }
  Int order() const;  // 0 for infinite
  bool trivial() const { return inv_.empty() && free_rank_ == 0; }
  bool finite() const { return free_rank_ == 0; }

  // canonical coordinates: one per invariant factor (reduced mod it), then
  // one per free rank
  int canon_dim() const { return int(inv_.size()) + free_rank_; }
  std::vector<Int> canon(const std::vector<Int>& x) const;
  bool is_zero(const std::vector<Int>& x) const;
  // generator coordinates of the k-th canonical generator
  std::vector<Int> canon_generator(int k) const;

  bool same_isomorphism_class(const FgGroup& o) const {
    return inv_ == o.inv_ && free_rank_ == o.free_rank_;
  }
  std::string str() const;  // "0", "Z/2 x Z/4", "Z^2 x Z/3", ...

private:
  int ngens_;
  IntMat rels_;
  std::vector<Int> inv_;
  int free_rank_ = 0;
  IntMat u_, uinv_;                 // u * rels * v = d from Smith reduction
  std::vector<int> canon_rows_;     // rows of u_ giving canonical coords
  std::vector<Int> canon_moduli_;   // 0 for free coordinates
};

// least e with N^e * G = 0; nullopt if no power of N kills G
std::optional<int> torsion_exponent(const FgGroup& g, const Int& n);

// G with the p-primary components for p | s removed (localization G -> G[1/s]);
// s == 0 means rationalization (kills all torsion).
FgGroup invert_primes(const FgGroup& g, const Int& s);

class GroupHom {
public:
  // m maps generator coordinates of src to generator coordinates of tgt;
  // well-definedness (m * rels_src inside span rels_tgt) is checked.
  GroupHom(FgGroup src, FgGroup tgt, IntMat m);
  static GroupHom zero(FgGroup src, FgGroup tgt);
  static GroupHom identity(FgGroup g);
  static GroupHom mult_by(const FgGroup& g, const Int& c);

  const FgGroup& src() const { return src_; }
  const FgGroup& tgt() const { return tgt_; }
  const IntMat& matrix() const { return m_; }

  std::vector<Int> apply(const std::vector<Int>& x) const { return mat_vec(m_, x); }
  GroupHom compose(const GroupHom& inner) const;  // this(inner(x))
  GroupHom direct_sum(const GroupHom& o) const;
  bool is_zero() const;

  FgGroup kernel_group() const;
  IntMat kernel_generators() const;  // columns in src generator coordinates
  FgGroup image_group() const;
  FgGroup cokernel_group() const;
  bool injective() const;
  bool surjective() const;
  bool bijective() const { return injective() && surjective(); }

private:
  FgGroup src_, tgt_;
  IntMat m_;
};

// direct sum with the two injections' data folded into one group
FgGroup direct_sum(const FgGroup& a, const FgGroup& b);

struct ExactnessReport {
  bool composite_zero = false;
  bool exact = false;
  FgGroup homology;  // ker(g) / im(f)
  // a middle-group element witnessing failure: in ker(g) \ im(f), or with
  // g(f(x)) != 0 when the composite is nonzero
  std::optional<std::vector<Int>> witness;
};

// exactness of A --f--> B --g--> C at B
ExactnessReport exactness_at(const GroupHom& f, const GroupHom& g);

}  // namespace exl::lin
