#pragma once
// Commutative finitely presented algebras over F_p or Q: degrevlex polynomial
// arithmetic, Buchberger completion, quotient normal forms, and finitely
// presented modules with syzygy-based free resolutions, kernels and homology.

#include <gmpxx.h>

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "excision/expr.hpp"

namespace exl::poly {

using Int = mpz_class;
using Rat = mpq_class;

// coefficient field: F_p for prime p > 0, Q for p = 0
struct Field {
  Int p = 0;
  Rat reduce(Rat c) const;
  Rat inv(const Rat& c) const;  // throws on zero
  bool equal(const Rat& a, const Rat& b) const;
  std::string str() const;
};
Field rationals();
Field prime_field(const Int& p);

// monomial = exponent vector over the ring's variables
using Mono = std::vector<int>;
int total_degree(const Mono& m);
bool mono_divides(const Mono& a, const Mono& b);
Mono mono_mul(const Mono& a, const Mono& b);
Mono mono_quot(const Mono& b, const Mono& a);  // b / a, requires divisibility
Mono mono_lcm(const Mono& a, const Mono& b);
bool mono_equal(const Mono& a, const Mono& b);
// degree-reverse-lexicographic, earlier variables larger
bool degrevlex_less(const Mono& a, const Mono& b);

// elim > 0 puts the first elim variables into a dominating block, so Groebner
// bases eliminate them; elim = 0 is plain degrevlex
struct MonoOrder {
  int elim = 0;
  bool less(const Mono& a, const Mono& b) const;
};

struct Term {
  Mono m;
  Rat c;
};

// terms sorted strictly descending, no zero coefficients
struct Poly {
  std::vector<Term> t;
  bool zero() const { return t.empty(); }
  const Term& lead() const { return t.front(); }
  int degree() const;  // -1 for zero
};

class PolyRing;
using PolyRingPtr = std::shared_ptr<const PolyRing>;

// free commutative polynomial ring k[vars] with the fixed degrevlex order
class PolyRing : public std::enable_shared_from_this<PolyRing> {
public:
  PolyRing(Field k, std::vector<std::string> vars, MonoOrder order = {});

  const Field& field() const { return k_; }
  int nvars() const { return int(vars_.size()); }
  const std::vector<std::string>& vars() const { return vars_; }
  const MonoOrder& order() const { return order_; }
  bool mono_less(const Mono& a, const Mono& b) const { return order_.less(a, b); }

  Poly zero() const { return {}; }
  Poly constant(Rat c) const;
  Poly one() const { return constant(1); }
  Poly var(int i) const;
  Poly monomial(Mono m, Rat c) const;

  Poly add(const Poly& a, const Poly& b) const;
  Poly sub(const Poly& a, const Poly& b) const;
  Poly neg(const Poly& a) const;
  Poly mul(const Poly& a, const Poly& b) const;
  Poly mul_term(const Poly& a, const Term& t) const;
  Poly scale(const Poly& a, const Rat& c) const;
  Poly monic(const Poly& a) const;
  Poly power(const Poly& a, int n) const;
  bool equal(const Poly& a, const Poly& b) const;

  Poly from_expr(const expr::NodePtr& e) const;  // variables must be declared
  Poly parse(const std::string& text) const;
  std::string str(const Poly& a) const;

private:
  Field k_;
  std::vector<std::string> vars_;
  MonoOrder order_;
};

// remainder of f on division by gs (any generating set; gs lead coeffs may be
// arbitrary nonzero)
Poly normal_form(const PolyRing& r, Poly f, const std::vector<Poly>& gs);
// the unique reduced monic Groebner basis of the ideal (gens)
std::vector<Poly> groebner(const PolyRing& r, std::vector<Poly> gens);

// ---- free-module layer ------------------------------------------------------

// element of R^rows: one polynomial per component
using VPoly = std::vector<Poly>;
bool vzero(const VPoly& v);

// Groebner basis of a submodule of R^rows; term order: components below split
// dominate the rest (block elimination), inside a block degrevlex with ties to
// the smaller component
struct ModGB {
  int rows = 0;
  int split = 0;  // 0: plain order, no elimination block
  std::vector<VPoly> g;
};
ModGB module_gb(const PolyRing& r, std::vector<VPoly> gens, int rows, int split = 0);
VPoly module_nf(const PolyRing& r, VPoly w, const ModGB& gb);
bool module_member(const PolyRing& r, const VPoly& w, const ModGB& gb);

// generating syzygies of the given columns: all (a_i) with sum a_i cols_i = 0
std::vector<VPoly> syzygies(const PolyRing& r, const std::vector<VPoly>& cols, int rows);
// coordinates of w over cols, if w lies in their span
std::optional<VPoly> module_lift(const PolyRing& r, const VPoly& w,
                                 const std::vector<VPoly>& cols, int rows);

// ---- quotient rings ---------------------------------------------------------

class PolyQuotRing;
using QuotPtr = std::shared_ptr<const PolyQuotRing>;

// A = k[vars]/(rels) with a reduced Groebner basis; normal forms are unique
class PolyQuotRing : public std::enable_shared_from_this<PolyQuotRing> {
public:
  PolyQuotRing(Field k, std::vector<std::string> vars, const std::vector<std::string>& rels,
               std::string name = "");
  PolyQuotRing(PolyRingPtr base, std::vector<Poly> rels, std::string name = "");

  const PolyRingPtr& base() const { return base_; }
  const std::vector<Poly>& given_rels() const { return given_; }
  const std::vector<Poly>& gb() const { return gb_; }
  const std::string& name() const { return name_; }

  Poly reduce(Poly f) const;
  bool is_zero(const Poly& f) const;
  bool equal(const Poly& a, const Poly& b) const;
  Poly parse(const std::string& text) const;
  std::string str(const Poly& f) const;

  // k-dimension by standard-monomial count; nullopt when it exceeds cap
  std::optional<long> vec_dim(long cap = 100000) const;
  std::string canonical_serialization() const;

private:
  PolyRingPtr base_;
  std::vector<Poly> given_, gb_;
  std::string name_;
};

QuotPtr make_poly_ring(Field k, std::vector<std::string> vars, std::vector<std::string> rels,
                       std::string name = "");

// ---- ideals of a quotient ring ----------------------------------------------

// ideals are generator lists, compared through Groebner bases of their lifts
struct QIdeal {
  QuotPtr ring;
  std::vector<Poly> gens;
};
QIdeal ideal(QuotPtr a, std::vector<Poly> gens);
QIdeal ideal_sum(const QIdeal& i, const QIdeal& j);
QIdeal ideal_product(const QIdeal& i, const QIdeal& j);
QIdeal ideal_power(const QIdeal& i, int n);
QIdeal ideal_intersection(const QIdeal& i, const QIdeal& j);
bool ideal_contains(const QIdeal& i, const Poly& f);
bool ideal_contains_ideal(const QIdeal& i, const QIdeal& j);
bool ideal_equal(const QIdeal& i, const QIdeal& j);
bool ideal_is_zero(const QIdeal& i);
// radical membership of every generator; enough for nilpotence of a finitely
// generated ideal in a commutative ring
bool ideal_is_nilpotent(const QIdeal& i);

// ---- ring maps ---------------------------------------------------------------

// determined by images of the source variables; relation preservation checked
struct QHomData {
  QuotPtr src, tgt;
  std::vector<Poly> images;
  std::string name;
};
QHomData poly_hom(QuotPtr src, QuotPtr tgt, std::vector<Poly> images, std::string name = "");
QHomData poly_hom(QuotPtr src, QuotPtr tgt, const std::vector<std::string>& images,
                  std::string name = "");
inline QHomData poly_hom(QuotPtr src, QuotPtr tgt, std::initializer_list<const char*> images,
                         std::string name = "") {
  return poly_hom(std::move(src), std::move(tgt),
                  std::vector<std::string>(images.begin(), images.end()), std::move(name));
}
Poly apply_hom(const QHomData& h, const Poly& f);
QHomData compose(const QHomData& outer, const QHomData& inner);
// both computed from one elimination basis of the graph ideal
bool is_surjective(const QHomData& h);
QIdeal kernel_ideal(const QHomData& h);

// ---- squares of quotient rings ------------------------------------------------

struct PolySquare {
  QHomData f;   // A -> A'
  QHomData g;   // A -> B
  QHomData fp;  // A' -> B'
  QHomData gp;  // B -> B'
  std::string name;
};
PolySquare poly_square(QHomData f, QHomData g, QHomData fp, QHomData gp, std::string name = "");

struct PolyVerdict {
  bool holds = false;
  std::string evidence;
};
// kernel criterion: f surjective, ker f meets ker g trivially, and
// ker f + ker g = ker(A -> B'); requires gp surjective
PolyVerdict is_pullback(const PolySquare& sq);
PolyVerdict is_milnor(const PolySquare& sq);

// ---- finitely presented modules -----------------------------------------------

// coker(A^{rels} -> A^{gens}); elements are coordinate vectors of polynomials
struct QModule {
  QuotPtr ring;
  int gens = 0;
  std::vector<VPoly> rels;
  std::string label;
};
QModule free_module(QuotPtr a, int rank, std::string label = "");
QModule cyclic_module(QuotPtr a, const QIdeal& i, std::string label = "");  // A/I
QModule ideal_module(const QIdeal& i, std::string label = "");  // I as a module
QModule module_from_columns(QuotPtr a, int rows, std::vector<VPoly> cols, std::string label = "");

// relation submodule plus the per-component copies of the defining ideal,
// lifted to the free cover; the Groebner basis behind every membership test
ModGB relation_gb(const QModule& m);
bool elem_is_zero(const QModule& m, const VPoly& v);
bool module_is_zero(const QModule& m);
std::optional<long> module_dim(const QModule& m, long cap = 100000);
// standard monomial basis (component, monomial), only when finite-dimensional
struct StdBasis {
  std::vector<std::pair<int, Mono>> mono;
};
std::optional<StdBasis> module_basis(const QModule& m, long cap = 100000);

// map of fp modules: column j = image of source generator j in the target cover
struct QModHom {
  QModule src, tgt;
  std::vector<VPoly> cols;
};
QModHom module_hom(QModule src, QModule tgt, std::vector<VPoly> cols);  // checked
bool hom_is_zero(const QModHom& h);
QModHom compose(const QModHom& outer, const QModHom& inner);
// generators of ker(h) as vectors in the source cover
std::vector<VPoly> kernel_columns(const QModHom& h);
QModule kernel_module(const QModHom& h);
QModule cokernel_module(const QModHom& h);

// ---- complexes, resolutions, Tor ------------------------------------------------

// complex of free A-modules, d[t]: A^{ranks[t+1]} -> A^{ranks[t]} given by columns
struct QComplex {
  QuotPtr ring;
  std::vector<int> ranks;
  std::vector<std::vector<VPoly>> d;
};
QComplex free_complex(QuotPtr a, std::vector<int> ranks, std::vector<std::vector<VPoly>> d);
// mapping cone of a degreewise map of free complexes
QComplex cone(const QComplex& src, const QComplex& tgt, const std::vector<std::vector<VPoly>>& f);

struct QResolution {
  QModule target;
  std::vector<int> ranks;              // ranks[0] = target.gens
  std::vector<std::vector<VPoly>> d;   // d[0] = target.rels, then iterated syzygies
};
QResolution free_resolution(const QModule& m, int length);
QComplex resolution_complex(const QResolution& r);

// homology of (free complex) tensor N at degree i, as an fp module whose
// generators are cycle columns in N^{ranks[i]}
struct QHomology {
  QModule group;
  std::vector<VPoly> cycles;      // generator j of group = cycles[j]
  std::vector<VPoly> boundaries;  // image columns plus coefficient relations
};
QHomology tensor_homology(const QComplex& cx, const QModule& n, int i);
QHomology complex_homology(const QComplex& cx, int i);  // N = A

struct TorData {
  QModule group;
  std::optional<long> dim;
};
TorData tor(const QModule& m, const QModule& n, int i);

// Koszul complex on the sequence c (free over A, rank C(r,j) in degree j)
QComplex koszul_complex(QuotPtr a, const std::vector<Poly>& c);
TorData koszul_homology(QuotPtr a, const std::vector<Poly>& c, int i);

}  // namespace exl::poly
