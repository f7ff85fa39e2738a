#pragma once
// Modules over a FiniteRing, free resolutions, chain complexes of finitely
// generated abelian groups, homology with representatives, Tor, and the
// universal-coefficient machinery.
//
// Convention: resolutions resolve right modules. A map of free right modules
// R^c -> R^r is a ring matrix whose column j lists the image of e_j; its
// action on additive coordinates is by blocks of left-multiplication
// matrices, and tensoring with a left module N substitutes the left action
// of each entry on N.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "excision/abelian.hpp"
#include "excision/rings.hpp"

namespace exl::homalg {

using lin::FgGroup;
using lin::GroupHom;
using lin::Int;
using lin::IntMat;
using rings::Coords;
using rings::RingPtr;

// ---- matrices over a ring --------------------------------------------------

struct RingMat {
  RingPtr ring;
  int rows = 0, cols = 0;
  std::vector<std::vector<Coords>> e;  // e[r][c]

  RingMat() = default;
  RingMat(RingPtr rg, int r, int c);
  Coords& at(int r, int c) { return e[r][c]; }
  const Coords& at(int r, int c) const { return e[r][c]; }
  RingMat mul(const RingMat& o) const;
  bool is_zero() const;
  // additive-coordinate matrix of the right-module map: left-mult blocks
  IntMat additive() const;
  std::string str() const;
};

// block-diagonal additive relations of the free module R^k
IntMat free_rels(const RingPtr& r, int k);

// ---- modules ----------------------------------------------------------------

enum class Side { Right, Left };

// module given by its additive group plus the action of each additive ring
// generator; act[u] is x -> x*g_u (Right) or x -> g_u*x (Left).
// mod_gens lists additive coordinates of a module generating set; it seeds
// the rank of F_0 in resolutions (free modules get their basis, so their
// resolution has length 0)
struct FinModule {
  RingPtr ring;
  FgGroup add;
  std::vector<IntMat> act;
  std::vector<std::vector<Int>> mod_gens;
  Side side = Side::Right;
  std::string label;

  // action matrix of an arbitrary ring element
  IntMat act_of(const Coords& r) const;
};

// verified constructor; throws InvalidObjectError on a broken action.
// mod_gens empty means "use the canonical generators of the additive group"
FinModule fin_module(RingPtr ring, FgGroup add, std::vector<IntMat> act,
                     Side side = Side::Right, std::string label = "",
                     std::vector<std::vector<Int>> mod_gens = {});

FinModule ring_as_module(RingPtr r, Side side = Side::Right);
FinModule zero_module(RingPtr r);
// cokernel of a ring matrix: gens x rels presentation
FinModule module_from_presentation(RingPtr r, int gens, const RingMat& rels,
                                   Side side = Side::Right, std::string label = "");
// A/I with its induced action
FinModule quotient_module(RingPtr r, const rings::Ideal& ideal, Side side = Side::Right);
// I as a module over the ambient ring, coordinates over the subgroup basis
FinModule ideal_module(const rings::Ideal& ideal, Side side = Side::Right);
// the target of f as a module over the source (restriction of scalars)
FinModule module_via_hom(const rings::RingHom& f, Side side = Side::Right);

// additive hom compatible with the actions (checked)
struct ModuleHom {
  const FinModule *src, *tgt;
  IntMat m;
};
ModuleHom module_hom(const FinModule& src, const FinModule& tgt, IntMat m);

// ---- free resolutions --------------------------------------------------------

struct FreeResolution {
  RingPtr ring;
  FinModule target;
  std::vector<int> ranks;   // ranks[0..len]
  std::vector<RingMat> d;   // d[t]: F_{t+1} -> F_t, t = 0..len-1
  IntMat augmentation() const;  // additive matrix F_0 -> target
};

class ResolutionCache {
public:
  explicit ResolutionCache(std::filesystem::path dir) : dir_(std::move(dir)) {}
  std::optional<FreeResolution> load(const std::string& key, const FinModule& target) const;
  void store(const std::string& key, const FreeResolution& r) const;
  static std::string key_for(const FinModule& m, int length);

private:
  std::filesystem::path dir_;
};

// exact in degrees < length; no minimization beyond re-presenting each kernel
// on a canonical generating set of its additive group
FreeResolution free_resolution(const FinModule& m, int length,
                               const ResolutionCache* cache = nullptr);

// chain map over a module hom phi: lifts[t]: P_t -> Q_t with d and
// augmentations commuting (comparison theorem, solved degreewise)
std::vector<RingMat> lift_to_resolutions(const FreeResolution& p, const FreeResolution& q,
                                         const IntMat& phi);

// ---- chain complexes ---------------------------------------------------------

// bounded complex of f.g. abelian groups, degrees 0..top
struct ChainComplex {
  std::vector<FgGroup> c;
  std::vector<IntMat> d;  // d[i]: c[i] -> c[i-1], i >= 1; d[0] unused placeholder
  int top() const { return int(c.size()) - 1; }
};
// verifies shapes, d maps rels into rels, and d.d = 0
ChainComplex chain_complex(std::vector<FgGroup> groups, std::vector<IntMat> diffs);

struct ChainMap {
  const ChainComplex *src, *tgt;
  std::vector<IntMat> f;  // f[i]: src.c[i] -> tgt.c[i]; missing degrees are zero
};
ChainMap chain_map(const ChainComplex& src, const ChainComplex& tgt, std::vector<IntMat> f);

struct HomologyData {
  FgGroup group;
  IntMat cycles;                        // lattice of cycles in c[i] coordinates
  std::vector<std::vector<Int>> reps;   // representative cycle per canonical generator
};
HomologyData homology(const ChainComplex& cx, int i);

// coordinates of a cycle's homology class
std::vector<Int> class_of(const ChainComplex& cx, int i, const HomologyData& h,
                          const std::vector<Int>& cycle);

// map induced on H_i by a degree-i endomorphism matrix that commutes with d
GroupHom induced_on_homology(const ChainComplex& cx, int i, const HomologyData& h,
                             const IntMat& t);

// resolution of M tensored over the ring with the left module N
ChainComplex tensor_complex(const FreeResolution& res, const FinModule& n);

// cone of f: cone_i = src_{i-1} + tgt_i, d(x,y) = (-dx, dy - f(x));
// H_i(fib f) = H_{i+1}(cone f)
ChainComplex cone(const ChainMap& f);

// complex with Z/m coefficients: same differentials, every group modulo m
ChainComplex reduce_mod(const ChainComplex& cx, const Int& m);

// least i in [0, range] with H_i nonzero; nullopt when all vanish
struct FirstHomology {
  std::optional<int> degree;
  FgGroup witness;
};
FirstHomology first_nonzero_homology(const ChainComplex& cx, int range);

// largest n with fib(f) n-connective, probed in degrees <= range.
// exact=false means every probed degree vanished, so n is only a lower bound.
struct Connectivity {
  int n = 0;
  bool exact = false;
  FgGroup witness;  // H_n(fib) when exact
};
Connectivity connectivity_of_map(const ChainMap& f, int range,
                                 const std::optional<Int>& mod = std::nullopt);

// ---- Tor ---------------------------------------------------------------------

// Tor_i^R(M, N), M right / N left (any sides when the ring is commutative)
FgGroup tor(const FinModule& m, const FinModule& n, int i,
            const ResolutionCache* cache = nullptr);
// shares one resolution across degrees 0..imax
std::vector<FgGroup> tor_range(const FinModule& m, const FinModule& n, int imax,
                               const ResolutionCache* cache = nullptr);

// H_i(C; Z/m) for i = 0..imax
std::vector<FgGroup> with_coefficients(const ChainComplex& cx, const Int& m, int imax);

// the universal-coefficient comparison maps at degree i:
//   alpha: H_i(C) -> H_i(C; Z/m)   (reduce an integral cycle)
//   beta:  H_i(C; Z/m) -> H_{i-1}(C)   (divide the boundary by m)
// 0 -> H_i/m -> H_i(C;Z/m) -> H_{i-1}[m] -> 0 makes alpha,beta exact in the
// middle with ker(alpha) = m H_i and im(beta) = H_{i-1}[m]
struct UctMaps {
  GroupHom alpha, beta;
};
UctMaps uct_maps(const ChainComplex& cx, int i, const Int& m);

// quotient of h by the differences of two action matrix families
FgGroup symmetrized_quotient(const FgGroup& h, const std::vector<IntMat>& left,
                             const std::vector<IntMat>& right);

}  // namespace exl::homalg
