#pragma once
// Finite unital rings presented by a bilinear multiplication table on the
// generators of the additive group, plus the constructions the excision
// checks need: quotients by ideals, fiber products along a surjection,
// unitalizations k|x I, products, and commutative Z/N presentations.
//
// Elements are coordinate vectors over the additive generators, reduced
// modulo the generator orders. Everything is verified at construction time:
// a FiniteRing that exists is associative, unital, and respects its additive
// structure.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "excision/abelian.hpp"
#include "excision/intmat.hpp"

namespace exl::rings {

using lin::FgGroup;
using lin::Int;
using lin::IntMat;

using Coords = std::vector<Int>;

class FiniteRing;
using RingPtr = std::shared_ptr<const FiniteRing>;

class FiniteRing {
public:
  // table[i][j] = coordinates of g_i * g_j; throws InvalidObjectError unless
  // the data defines an associative unital ring
  FiniteRing(std::vector<Int> dims, std::vector<std::vector<Coords>> table, Coords unit,
             std::vector<std::string> gen_names = {}, std::string name = "");

  int ngens() const { return int(dims_.size()); }
  const std::vector<Int>& dims() const { return dims_; }
  Int order() const;
  bool commutative() const { return commutative_; }
  const Coords& unit() const { return unit_; }
  const std::string& name() const { return name_; }
  void rename(std::string n) { name_ = std::move(n); }

  Coords zero() const { return Coords(dims_.size(), 0); }
  Coords gen(int i) const;
  Coords reduce(Coords x) const;
  Coords add(const Coords& a, const Coords& b) const;
  Coords sub(const Coords& a, const Coords& b) const;
  Coords neg(const Coords& a) const;
  Coords mul(const Coords& a, const Coords& b) const;
  Coords power(Coords a, Int e) const;
  Coords from_int(const Int& n) const;
  bool is_zero(const Coords& a) const;
  bool equal(const Coords& a, const Coords& b) const;
  bool is_one(const Coords& a) const { return equal(a, unit_); }

  // action of left/right multiplication by a on additive coordinates
  IntMat left_mult_matrix(const Coords& a) const;
  IntMat right_mult_matrix(const Coords& a) const;

  bool is_unit(const Coords& a) const { return inverse(a).has_value(); }
  std::optional<Coords> inverse(const Coords& a) const;
  bool is_nilpotent(const Coords& a) const;
  bool is_idempotent(const Coords& a) const { return equal(mul(a, a), a); }

  // mixed-radix enumeration of all elements; throws LimitError above cap
  std::vector<Coords> all_elements(size_t cap = size_t(1) << 16) const;

  FgGroup additive_group() const;  // Z^n modulo diag(dims)
  IntMat additive_rels() const;

  std::string elem_str(const Coords& a) const;
  const std::vector<std::string>& gen_names() const { return gen_names_; }
  // stable textual form, used for cache keys and object hashing
  std::string canonical_serialization() const;

private:
  std::vector<Int> dims_;
  std::vector<std::vector<Coords>> table_;
  Coords unit_;
  std::vector<std::string> gen_names_;
  std::string name_;
  bool commutative_ = false;

  void verify() const;
};

RingPtr make_ring(FiniteRing r);

// ---- presentations -------------------------------------------------------

struct RingPresentation {
  Int modulus;                     // base Z/N, N >= 2
  std::vector<std::string> gens;   // commuting generators
  std::vector<std::string> rels;   // polynomial expressions that vanish
};

// Commutative Z/N-algebra from a presentation. The relation set is completed
// to a confluent monomial rewriting system; presentations that would need a
// rule with a non-invertible leading coefficient mod N are rejected as
// unsupported. Finiteness is detected by enumerating standard monomials,
// capped so the ring order stays <= cap.
RingPtr make_finite_ring(const RingPresentation& pres, size_t cap = size_t(1) << 16);

// same, but also reports the class of each presentation generator, keyed in
// presentation order; needed to evaluate element expressions in the quotient
struct PresentedRing {
  RingPtr ring;
  std::vector<Coords> gen_images;
};
PresentedRing present_finite_ring(const RingPresentation& pres, size_t cap = size_t(1) << 16);

// Z/N itself
RingPtr make_zmod(const Int& n);

// ---- homs ----------------------------------------------------------------

class RingHom {
public:
  // m: additive-generator matrix (tgt.ngens x src.ngens); must be additive,
  // unital and multiplicative
  RingHom(RingPtr src, RingPtr tgt, IntMat m, std::string name = "");
  static RingHom identity(RingPtr r);

  const RingPtr& src() const { return src_; }
  const RingPtr& tgt() const { return tgt_; }
  const IntMat& matrix() const { return m_; }
  const std::string& name() const { return name_; }

  Coords apply(const Coords& x) const { return tgt_->reduce(lin::mat_vec(m_, x)); }
  RingHom compose(const RingHom& inner) const;  // this(inner(x))

  bool is_surjective() const;
  bool is_injective() const;
  // additive generators of the kernel, as source elements
  std::vector<Coords> kernel_generators() const;
  lin::GroupHom additive_hom() const;

private:
  RingPtr src_, tgt_;
  IntMat m_;
  std::string name_;
};

// hom determined by images of the *presentation* generators is built at the
// io layer; this helper builds one from images of all additive generators
RingHom hom_from_gen_images(RingPtr src, RingPtr tgt, const std::vector<Coords>& images,
                            std::string name = "");

// the unique hom tgt(p) -> tgt(q) with (induced . p) = q, for surjective p with
// ker(p) inside ker(q); throws InvalidObjectError otherwise
RingHom induced_hom(const RingHom& p, const RingHom& q, std::string name = "");

// ---- ideals and subgroups -------------------------------------------------

// additive subgroup of a ring with a canonical basis; closed under the ring
// multiplications when constructed via ideal_from_generators
class Subgroup {
public:
  Subgroup(RingPtr ring, const IntMat& lattice_cols);

  const RingPtr& ring() const { return ring_; }
  int rank() const { return int(basis_.size()); }  // number of canonical generators
  const std::vector<Coords>& basis() const { return basis_; }
  const std::vector<Int>& basis_orders() const { return orders_; }
  Int order() const;
  bool contains(const Coords& x) const;
  bool contains_subgroup(const Subgroup& o) const;
  // coordinates of a member element over the canonical basis
  std::vector<Int> coords_of(const Coords& x) const;
  Coords elem_of(const std::vector<Int>& c) const;
  const IntMat& lattice() const { return lattice_; }

private:
  RingPtr ring_;
  IntMat lattice_;  // ambient columns spanning the subgroup (mod ring rels)
  FgGroup abstract_;
  std::vector<Coords> basis_;
  std::vector<Int> orders_;
};

struct Ideal {
  Subgroup sub;
  std::vector<Coords> given_gens;
  bool is_nilpotent() const;
  bool is_square_zero() const;
};

// two-sided ideal generated by elements (closure under both multiplications)
Ideal ideal_from_generators(RingPtr r, const std::vector<Coords>& gens);
Ideal kernel_ideal(const RingHom& f);

// nilradical for commutative rings, honest Jacobson radical (via
// quasi-regularity of 1 - x*r) for small noncommutative ones
Ideal jacobson_radical(RingPtr r);

std::vector<Coords> idempotents(RingPtr r, size_t cap = size_t(1) << 16);
// complete orthogonal set of primitive idempotents of a commutative ring
std::vector<Coords> primitive_idempotents(RingPtr r, size_t cap = size_t(1) << 16);

std::vector<Coords> unit_elements(RingPtr r, size_t cap = size_t(1) << 16);

// ---- constructions --------------------------------------------------------

struct QuotientRing {
  RingPtr ring;
  RingHom projection;  // ambient -> quotient
};
QuotientRing quotient_ring(RingPtr r, const Ideal& ideal, std::string name = "");

struct FiberProduct {
  RingPtr ring;        // A = A' x_{B'} B
  RingHom to_first;    // A -> A'
  RingHom to_second;   // A -> B
};
// pullback of  A' --f--> B' <--g-- B ; g must be surjective so the result is
// a Milnor-style corner (checked)
FiberProduct fiber_product_ring(const RingHom& f, const RingHom& g);

struct ProductRing {
  RingPtr ring;
  RingHom to_first, to_second;
};
ProductRing product_ring(RingPtr a, RingPtr b);

// ---- nonunital rings and unitalization ------------------------------------

class NonUnitalRing {
public:
  NonUnitalRing(std::vector<Int> dims, std::vector<std::vector<Coords>> table,
                std::vector<std::string> gen_names = {});

  int ngens() const { return int(dims_.size()); }
  const std::vector<Int>& dims() const { return dims_; }
  const std::vector<std::vector<Coords>>& table() const { return table_; }
  Coords reduce(Coords x) const;
  Coords mul(const Coords& a, const Coords& b) const;
  const std::vector<std::string>& gen_names() const { return gen_names_; }

private:
  std::vector<Int> dims_;
  std::vector<std::vector<Coords>> table_;
  std::vector<std::string> gen_names_;
};

// multiplication of an ideal forgetting the ambient unit
NonUnitalRing ideal_as_nonunital(const Ideal& i);

// k-bimodule structure on a nonunital ring: per k-generator action matrices
struct BimoduleAction {
  std::vector<IntMat> left;   // left[u]: I-coords -> I-coords, action of k-gen u
  std::vector<IntMat> right;
};

struct Unitalization {
  RingPtr ring;              // k |x I
  RingHom to_base;           // projection onto k
  std::vector<Coords> ideal_gens;  // the copy of I inside k |x I
};
// (a,x)(b,y) = (ab, a y + x b + x y); throws InvalidObjectError("incompatible
// bimodule action ...") when the data fails associativity/compatibility
Unitalization unitalization(RingPtr k, const NonUnitalRing& i, const BimoduleAction& act);

// stock action for a base generated by its unit (Z/N, F_p): the unit acts as
// the identity on both sides
BimoduleAction scalar_action(RingPtr k, const NonUnitalRing& i);

}  // namespace exl::rings
