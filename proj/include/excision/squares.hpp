#pragma once
// Commutative squares of finite rings
//
//       A --g--> B
//       |f       |gp
//       A' -fp-> B'
//
// classification (pullback, Milnor), the hypotheses excision results turn on
// (the pi_0 identification of A' (x)_A B with B', connectivity of the
// multiplication map, Tor-unitality of A -> A', torsion exponents, the
// vanishing condition for nonunital ideals), and a consolidated analysis
// report. Coefficients can be integral, Z/m, or a localization of Z.

#include <optional>
#include <string>
#include <vector>

#include "excision/homalg.hpp"
#include "excision/rings.hpp"

namespace exl::squares {

using homalg::ChainComplex;
using homalg::FinModule;
using homalg::FreeResolution;
using homalg::ResolutionCache;
using lin::FgGroup;
using lin::Int;
using lin::IntMat;

struct RingSquare {
  rings::RingPtr a, b, ap, bp;
  rings::RingHom f;   // A  -> A'
  rings::RingHom g;   // A  -> B
  rings::RingHom fp;  // A' -> B'
  rings::RingHom gp;  // B  -> B'
  std::string name;
};

// verified constructor: endpoints of the four maps must fit the square and
// fp . f = gp . g as additive maps (hence on all elements)
RingSquare ring_square(rings::RingHom f, rings::RingHom g, rings::RingHom fp,
                       rings::RingHom gp, std::string name = "");

// the tautological square of a fiber product A = A' x_{B'} B
RingSquare square_from_fiber_product(const rings::FiberProduct& fib, const rings::RingHom& fp,
                                     const rings::RingHom& gp, std::string name = "");

struct Verdict {
  bool holds = false;
  std::string evidence;
};

// A = A' x_{B'} B by element matching: every compatible pair (a', b) is hit
// exactly once by a |-> (f(a), g(a)); counterexample pair in the evidence
Verdict is_pullback(const RingSquare& sq, size_t cap = size_t(1) << 16);

// alternative criterion: f surjective and ker(f) -> ker(gp) bijective under g;
// equivalent to is_pullback when gp is surjective (throws UnsupportedError
// otherwise, the criterion does not apply)
Verdict is_pullback_via_kernels(const RingSquare& sq);

// pullback with gp surjective
Verdict is_milnor(const RingSquare& sq, size_t cap = size_t(1) << 16);

// ---- coefficients -----------------------------------------------------------

struct Coefficients {
  enum class Kind { Integral, ModM, InvertS, Rational };
  Kind kind = Kind::Integral;
  Int param = 0;  // m for ModM, s for InvertS

  static Coefficients integral() { return {}; }
  static Coefficients mod(Int m) { return {Kind::ModM, std::move(m)}; }
  static Coefficients invert(Int s) { return {Kind::InvertS, std::move(s)}; }
  static Coefficients rational() { return {Kind::Rational, 0}; }
  std::string str() const;
};

// M (x)_Z Lambda as a module over the same ring: M/mM for Z/m, the quotient by
// the s-primary part for Z[1/s], zero for Q (finite modules only)
FinModule coefficient_module(const FinModule& m, const Coefficients& lambda);

// ---- the multiplication map A' (x)_A B -> B' ---------------------------------

// chain-level data: A' resolved as a right A-module, tensored with B, mapped
// to B' in degree 0 by slot j (x) b |-> fp(a'_j) gp(b)
struct MultiplicationMap {
  FreeResolution res;
  ChainComplex source;  // res (x)_A B, so H_i = Tor_i^A(A', B)
  ChainComplex target;  // B' concentrated in degree 0
  IntMat mu0;
};
MultiplicationMap multiplication_map(const RingSquare& sq, int length,
                                     const ResolutionCache* cache = nullptr);

struct TorEntry {
  int degree = 0;
  FgGroup group;         // Tor in the active coefficients (integral for Z/m)
  int certified_by = 0;  // resolution length behind the computation
  // m-multiplication pattern on the integral group, Z/m coefficients only
  std::optional<bool> mult_iso, mult_surj;
};

// verdicts on the two excision conditions: (E1) the square is a pullback,
// (E2) pi_0(A' (x)_A B) -> pi_0(B') is an isomorphism
struct ExcisionConditions {
  Verdict e1, e2;
};
ExcisionConditions check_E1_E2(const RingSquare& sq, const ResolutionCache* cache = nullptr);

struct ConnectivityReport {
  Coefficients lambda;
  Verdict pi0;                // the (E2) identification, always integral
  std::vector<TorEntry> tor;  // degrees 1..n_max-1
  int n = 0;                  // largest certified connectivity <= n_max
  bool exhausted = false;     // no obstruction in range: n is only a lower bound
  std::optional<int> obstruction_degree;
  FgGroup obstruction;
  std::string conclusion;  // predicted cartesianness of the K-theory square
};
// Tor_i^A(A', B) for 1 <= i <= n_max-1 in the requested coefficients plus the
// pi_0 check; n is the largest degree the table certifies. Z/m coefficients
// certify n when m-multiplication is bijective on Tor_i for i <= n-2 and
// surjective for i = n-1; localizations when the localized Tor vanish below n.
ConnectivityReport multiplication_connectivity(const RingSquare& sq, int n_max,
                                               Coefficients lambda = {},
                                               const ResolutionCache* cache = nullptr);

// ---- Tor-unitality of a ring map ---------------------------------------------

struct TorUnitality {
  std::vector<TorEntry> tor;  // Tor_i^A(A', A' (x) Lambda), degrees 1..n-1
  std::optional<int> first_nonzero;
  FgGroup witness;
  bool unital_in_range = false;
};
TorUnitality tor_unitality(const rings::RingHom& f, int n, Coefficients lambda = {},
                           const ResolutionCache* cache = nullptr);

// ---- vanishing condition for a nonunital ideal --------------------------------

// Tor_i^{k|xI}(k, k (x) Lambda) for 1 <= i <= n; all zero means I satisfies
// excision up to degree n over this base
struct SuslinReport {
  std::vector<TorEntry> tor;
  std::optional<int> first_nonzero;
  FgGroup witness;
  bool vanishes = false;
};
SuslinReport suslin_condition(rings::RingPtr k, const rings::NonUnitalRing& ideal,
                              const rings::BimoduleAction& act, Coefficients lambda = {},
                              int n = 4, const ResolutionCache* cache = nullptr);

// ---- torsion bounds -----------------------------------------------------------

struct TorsionEntry {
  int degree = 0;
  FgGroup group;
  std::optional<int> exponent;  // least e with N^e killing the group
};
struct TorsionBoundReport {
  Int modulus;                        // N
  std::vector<TorsionEntry> entries;  // degrees 1..n
  bool one_connective = false;        // the pi_0 identification holds
  bool bounded = false;               // every exponent finite
  std::optional<int> failing_degree;
  std::string conclusion;  // emitted bound on birelative K-groups, or withheld
};
TorsionBoundReport torsion_bound_report(const RingSquare& sq, const Int& n_torsion, int n,
                                        const ResolutionCache* cache = nullptr);

// ---- consolidated analysis ----------------------------------------------------

struct AnalysisOptions {
  int degree = 4;  // n_max for the connectivity probe
  Coefficients lambda;
  std::optional<Int> torsion;  // N for the torsion report
  bool probe_unitality = true;
  const ResolutionCache* cache = nullptr;
};

struct AnalysisReport {
  std::string name;
  Verdict pullback, milnor, e1, e2;
  ConnectivityReport connectivity;  // integral
  std::optional<ConnectivityReport> lambda_connectivity;
  std::optional<TorUnitality> unitality;
  std::optional<TorsionBoundReport> torsion;
  std::vector<std::string> notes;
};
AnalysisReport analyze(const RingSquare& sq, const AnalysisOptions& opts = {});

}  // namespace exl::squares
