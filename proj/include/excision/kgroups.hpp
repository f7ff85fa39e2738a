#pragma once
// K_0 and K_1 of finite commutative rings, the Milnor-patching boundary map,
// and assembly plus exactness checking of the six-term Bass-Milnor sequence
// of a finite Milnor square. K_1 = units throughout: SK_1 vanishes for
// commutative semilocal rings, and finite commutative rings are semilocal.
// The symbolic K_1 computations for k[x] and k[x,x^-1] over a prime field
// run on the polynomial and rewrite layers with a bounded inverse search.

#include <optional>
#include <string>
#include <vector>

#include "excision/abelian.hpp"
#include "excision/rings.hpp"
#include "excision/squares.hpp"

namespace exl::kgroups {

using lin::FgGroup;
using lin::GroupHom;
using lin::Int;
using lin::IntMat;
using rings::Coords;
using rings::RingPtr;
using squares::Verdict;

// K_0 = Z^c on the complete orthogonal set of primitive idempotents
struct K0Data {
  RingPtr ring;
  std::vector<Coords> components;
  FgGroup group;
};
K0Data k0(RingPtr r);

// coordinates of [eR] over the components; e must be idempotent
std::vector<Int> idempotent_class(const K0Data& k, const Coords& e);

// unit group with a generating set and a Schreier presentation: every unit
// carries an exponent vector over the chosen generators, and the relation
// lattice is generated by expr(u) + e_j - expr(u * g_j)
struct K1Data {
  RingPtr ring;
  std::vector<Coords> units;
  std::vector<Coords> gens;
  FgGroup group;
  std::vector<std::vector<Int>> logs;  // aligned with units
  const std::vector<Int>& log_of(const Coords& u) const;  // throws on non-units
};
K1Data k1(RingPtr r);

// unit-group map induced by a ring hom, columns = logs of generator images
GroupHom induced_on_units(const K1Data& src, const K1Data& tgt, const rings::RingHom& f);

// [P_u] - [A] for the patching module P_u = {(a',b) : fp(a') u = gp(b)},
// certified locally free of rank one over every component of A
struct BoundaryClass {
  std::vector<Int> ranks;
  std::vector<Int> k0_class;  // ranks minus the class of A itself
};
BoundaryClass boundary(const Coords& u, const squares::RingSquare& sq);

struct SequencePosition {
  std::string at;
  lin::ExactnessReport report;
};

// K1(A) -> K1(A')+K1(B) -> K1(B') -> K0(A) -> K0(A')+K0(B) -> K0(B')
struct BassMilnorSequence {
  K1Data k1_a, k1_ap, k1_b, k1_bp;
  K0Data k0_a, k0_ap, k0_b, k0_bp;
  FgGroup k1_sum, k0_sum;
  GroupHom d1;        // u |-> (f(u), g(u))
  GroupHom d2;        // (v, w) |-> fp(v) gp(w)^-1
  GroupHom boundary;  // Milnor patching
  GroupHom d3;        // [P] |-> ([A' (x) P], [B (x) P])
  GroupHom d4;        // difference map on K_0
  std::vector<SequencePosition> positions;  // the four interior spots
  bool composites_zero = false;
  bool exact = false;
};
BassMilnorSequence bass_milnor(const squares::RingSquare& sq);

// K_1(k[x,x^-1]) for a prime field k: units are c x^n, so k^x plus free rank
// one. Constructive side: every c x^n gets an explicit inverse. Completeness
// side: no element of window degree <= 2 with two or more terms has an
// inverse of degree <= degree_bound (linear solve), and extremal terms of a
// product multiply, which rules out multi-term units of any degree.
struct LaurentK1 {
  FgGroup group;        // k^x + Z
  FgGroup finite_part;  // k^x
  int free_rank = 1;
  Verdict monomials_only;
  std::string certificate;
};
LaurentK1 laurent_units(RingPtr k, int degree_bound = 6);

// bounded-degree unit search in k[x]: only the nonzero constants
struct NK1Report {
  bool trivial = false;
  Int constant_units = 0;  // count of units found, |k| - 1
  std::string certificate;
};
NK1Report nk1_field(RingPtr k, int degree_bound = 6);

}  // namespace exl::kgroups
