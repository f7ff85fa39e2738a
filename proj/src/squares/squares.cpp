#include "excision/squares.hpp"

#include <map>
#include <set>
#include <stdexcept>
#include <utility>

#include "excision/error.hpp"

namespace exl::squares {

using homalg::GroupHom;
using homalg::HomologyData;
using homalg::Side;
using rings::Coords;
using rings::RingHom;
using rings::RingPtr;

RingSquare ring_square(RingHom f, RingHom g, RingHom fp, RingHom gp, std::string name) {
  if (f.src().get() != g.src().get() || f.tgt().get() != fp.src().get() ||
      g.tgt().get() != gp.src().get() || fp.tgt().get() != gp.tgt().get())
    throw InvalidObjectError("square maps do not share the required endpoints");
  if (!lin::lattice_contains(gp.tgt()->additive_rels(),
                             fp.matrix() * f.matrix() - gp.matrix() * g.matrix()))
    throw InvalidObjectError("square does not commute");
  RingPtr a = f.src(), b = g.tgt(), ap = f.tgt(), bp = fp.tgt();
  return RingSquare{std::move(a),  std::move(b),  std::move(ap), std::move(bp),
                    std::move(f),  std::move(g),  std::move(fp), std::move(gp),
                    std::move(name)};
}

RingSquare square_from_fiber_product(const rings::FiberProduct& fib, const RingHom& fp,
                                     const RingHom& gp, std::string name) {
  return ring_square(fib.to_first, fib.to_second, fp, gp, std::move(name));
}

Verdict is_pullback(const RingSquare& sq, size_t cap) {
  std::map<Coords, std::vector<Coords>> by_image;
  for (const Coords& x : sq.b->all_elements(cap)) by_image[sq.gp.apply(x)].push_back(x);
  std::set<std::pair<Coords, Coords>> compat;
  for (const Coords& x : sq.ap->all_elements(cap)) {
    auto it = by_image.find(sq.fp.apply(x));
    if (it == by_image.end()) continue;
    for (const Coords& y : it->second) {
      compat.insert({x, y});
      if (compat.size() > cap) throw LimitError("pullback check: too many compatible pairs");
    }
  }
  std::set<std::pair<Coords, Coords>> hit;
  for (const Coords& x : sq.a->all_elements(cap)) {
    std::pair<Coords, Coords> pr{sq.f.apply(x), sq.g.apply(x)};
    if (!hit.insert(pr).second)
      return {false, "two elements of A share the image pair (" + sq.ap->elem_str(pr.first) +
                         ", " + sq.b->elem_str(pr.second) + ")"};
  }
  for (const auto& pr : compat)
    if (!hit.count(pr))
      return {false, "compatible pair (" + sq.ap->elem_str(pr.first) + ", " +
                         sq.b->elem_str(pr.second) + ") is not the image of any element of A"};
  return {true, "all " + std::to_string(compat.size()) +
                    " compatible pairs are matched by A exactly once"};
}

Verdict is_pullback_via_kernels(const RingSquare& sq) {
  if (!sq.gp.is_surjective())
    throw UnsupportedError("kernel criterion needs B -> B' surjective");
  if (!sq.f.is_surjective()) return {false, "A -> A' is not surjective"};
  rings::Ideal kf = rings::kernel_ideal(sq.f);
  rings::Ideal kgp = rings::kernel_ideal(sq.gp);
  rings::Subgroup img(sq.b, sq.g.matrix() * kf.sub.lattice());
  if (img.order() != kf.sub.order())
    return {false, "ker(A -> A') of order " + kf.sub.order().get_str() +
                       " maps to a subgroup of order " + img.order().get_str() + " in B"};
  if (img.order() != kgp.sub.order() || !kgp.sub.contains_subgroup(img))
    return {false, "image of ker(A -> A') has order " + img.order().get_str() +
                       " inside ker(B -> B') of order " + kgp.sub.order().get_str()};
  return {true, "A -> A' surjective and ker(A -> A') maps isomorphically to ker(B -> B'), order " +
                    img.order().get_str()};
}

Verdict is_milnor(const RingSquare& sq, size_t cap) {
  if (!sq.gp.is_surjective()) return {false, "B -> B' is not surjective"};
  Verdict pb = is_pullback(sq, cap);
  if (!pb.holds) return {false, "B -> B' surjective but not a pullback: " + pb.evidence};
  return {true, "pullback with B -> B' surjective"};
}

std::string Coefficients::str() const {
  switch (kind) {
    case Kind::Integral: return "Z";
    case Kind::ModM: return "Z/" + param.get_str();
    case Kind::InvertS: return "Z[1/" + param.get_str() + "]";
    case Kind::Rational: return "Q";
  }
  return "?";
}

FinModule coefficient_module(const FinModule& m, const Coefficients& lambda) {
  int a = m.add.ngens();
  switch (lambda.kind) {
    case Coefficients::Kind::Integral:
      return m;
    case Coefficients::Kind::ModM: {
      if (lambda.param <= 0) throw std::invalid_argument("coefficient modulus must be positive");
      FgGroup add(a, m.add.rels().hstack(IntMat::identity(a) * lambda.param));
      return fin_module(m.ring, std::move(add), m.act, m.side,
                        m.label + " (x) Z/" + lambda.param.get_str(), m.mod_gens);
    }
    case Coefficients::Kind::InvertS: {
      if (!m.add.finite()) throw UnsupportedError("localization implemented for finite modules");
      if (lambda.param == 0)
        return coefficient_module(m, Coefficients::rational());
      Int s = abs(lambda.param);
      Int e = m.add.invariant_factors().empty() ? Int(1) : m.add.invariant_factors().back();
      Int c = e;
      for (Int d = gcd(c, s); d > 1; d = gcd(c, s)) c /= d;
      Int t = e / c;  // the s-primary part of the exponent kills exactly what dies
      IntMat torsion = lin::preimage_lattice(IntMat::identity(a) * t, m.add.rels());
      FgGroup add(a, m.add.rels().hstack(torsion));
      return fin_module(m.ring, std::move(add), m.act, m.side,
                        m.label + " (x) Z[1/" + s.get_str() + "]", m.mod_gens);
    }
    case Coefficients::Kind::Rational: {
      if (!m.add.finite()) throw UnsupportedError("rationalization implemented for finite modules");
      FgGroup add(a, m.add.rels().hstack(IntMat::identity(a)));
      return fin_module(m.ring, std::move(add), m.act, m.side, m.label + " (x) Q", m.mod_gens);
    }
  }
  throw std::logic_error("unreachable coefficient kind");
}

MultiplicationMap multiplication_map(const RingSquare& sq, int length,
                                     const ResolutionCache* cache) {
  FinModule apm = homalg::module_via_hom(sq.f, Side::Right);
  FinModule bm = homalg::module_via_hom(sq.g, Side::Left);
  FreeResolution res = homalg::free_resolution(apm, length, cache);
  ChainComplex source = homalg::tensor_complex(res, bm);
  ChainComplex target = homalg::chain_complex({sq.bp->additive_group()}, {IntMat(0, 0)});
  int nb = bm.add.ngens(), nbp = sq.bp->ngens(), r0 = res.ranks[0];
  IntMat mu0(nbp, r0 * nb);
  for (int j = 0; j < r0; ++j) {
    IntMat blk = sq.bp->left_mult_matrix(sq.fp.apply(apm.mod_gens[j])) * sq.gp.matrix();
    for (int r = 0; r < nbp; ++r)
      for (int c = 0; c < nb; ++c) mu0.at(r, j * nb + c) = blk.at(r, c);
  }
  return MultiplicationMap{std::move(res), std::move(source), std::move(target), std::move(mu0)};
}

namespace {

struct Pi0Check {
  Verdict verdict;
  bool surjective = false;
};

Pi0Check pi0_check(const MultiplicationMap& mm, const RingSquare& sq) {
  HomologyData h0 = homalg::homology(mm.source, 0);
  GroupHom to_bp(h0.group, sq.bp->additive_group(), mm.mu0);
  bool inj = to_bp.injective(), surj = to_bp.surjective();
  if (inj && surj)
    return {{true, "pi_0(A' (x)_A B) -> B' is an isomorphism (order " +
                       sq.bp->order().get_str() + ")"},
            true};
  return {{false, "pi_0(A' (x)_A B) = " + h0.group.str() + " -> B' = " +
                      sq.bp->additive_group().str() +
                      (surj ? " is surjective but not injective" : " is not surjective")},
          surj};
}

std::string with_coeffs(const Coefficients& lambda) {
  return lambda.kind == Coefficients::Kind::Integral ? "" : " with " + lambda.str() + " coefficients";
}

}  // namespace

ExcisionConditions check_E1_E2(const RingSquare& sq, const ResolutionCache* cache) {
  ExcisionConditions out;
  out.e1 = is_pullback(sq);
  out.e2 = pi0_check(multiplication_map(sq, 1, cache), sq).verdict;
  return out;
}

ConnectivityReport multiplication_connectivity(const RingSquare& sq, int n_max,
                                               Coefficients lambda,
                                               const ResolutionCache* cache) {
  if (n_max < 1) throw std::invalid_argument("connectivity probe needs n_max >= 1");
  ConnectivityReport rep;
  rep.lambda = lambda;
  MultiplicationMap mm = multiplication_map(sq, n_max, cache);
  Pi0Check pi0 = pi0_check(mm, sq);
  rep.pi0 = pi0.verdict;

  bool localized = lambda.kind == Coefficients::Kind::InvertS ||
                   lambda.kind == Coefficients::Kind::Rational;
  ChainComplex probe = mm.source;
  if (localized)
    probe = homalg::tensor_complex(
        mm.res, coefficient_module(homalg::module_via_hom(sq.g, Side::Left), lambda));

  for (int i = 1; i <= n_max - 1; ++i) {
    TorEntry e;
    e.degree = i;
    e.certified_by = n_max;
    e.group = homalg::homology(probe, i).group;
    if (lambda.kind == Coefficients::Kind::ModM) {
      GroupHom mult = GroupHom::mult_by(e.group, lambda.param);
      e.mult_iso = mult.bijective();
      e.mult_surj = mult.surjective();
    }
    rep.tor.push_back(std::move(e));
  }

  if (!rep.pi0.holds) {
    rep.n = pi0.surjective ? 0 : -1;
    rep.exhausted = false;
    rep.conclusion = "the multiplication map is not a pi_0-isomorphism (connectivity " +
                     std::to_string(rep.n) + "); no excision prediction";
    return rep;
  }

  std::optional<int> obstruction;
  bool surj_at_obstruction = false;
  for (const TorEntry& e : rep.tor) {
    bool blocked = lambda.kind == Coefficients::Kind::ModM ? !*e.mult_iso : !e.group.trivial();
    if (blocked) {
      obstruction = e.degree;
      surj_at_obstruction = lambda.kind == Coefficients::Kind::ModM && *e.mult_surj;
      rep.obstruction = e.group;
      break;
    }
  }
  if (!obstruction) {
    rep.n = n_max;
    rep.exhausted = true;
    rep.conclusion = "no obstruction through degree " + std::to_string(n_max - 1) +
                     "; the K-theory square is predicted at least " + std::to_string(n_max) +
                     "-cartesian" + with_coeffs(lambda);
  } else {
    rep.obstruction_degree = obstruction;
    rep.n = *obstruction + (surj_at_obstruction ? 1 : 0);
    rep.conclusion = "multiplication map is exactly " + std::to_string(rep.n) +
                     "-connective" + with_coeffs(lambda) + " (obstruction " +
                     rep.obstruction.str() + " in degree " + std::to_string(*obstruction) +
                     "); the K-theory square is predicted " + std::to_string(rep.n) +
                     "-cartesian" + with_coeffs(lambda);
  }
  return rep;
}

TorUnitality tor_unitality(const RingHom& f, int n, Coefficients lambda,
                           const ResolutionCache* cache) {
  if (n < 1) throw std::invalid_argument("unitality probe needs n >= 1");
  TorUnitality out;
  FinModule right = homalg::module_via_hom(f, Side::Right);
  FinModule left = homalg::module_via_hom(f, Side::Left);
  if (lambda.kind == Coefficients::Kind::InvertS || lambda.kind == Coefficients::Kind::Rational)
    left = coefficient_module(left, lambda);
  FreeResolution res = homalg::free_resolution(right, n, cache);
  ChainComplex cx = homalg::tensor_complex(res, left);
  for (int i = 1; i <= n - 1; ++i) {
    TorEntry e;
    e.degree = i;
    e.certified_by = n;
    e.group = homalg::homology(cx, i).group;
    if (lambda.kind == Coefficients::Kind::ModM) {
      GroupHom mult = GroupHom::mult_by(e.group, lambda.param);
      e.mult_iso = mult.bijective();
      e.mult_surj = mult.surjective();
    }
    bool blocked = lambda.kind == Coefficients::Kind::ModM ? !*e.mult_iso : !e.group.trivial();
    if (blocked && !out.first_nonzero) {
      out.first_nonzero = i;
      out.witness = e.group;
    }
    out.tor.push_back(std::move(e));
  }
  out.unital_in_range = !out.first_nonzero.has_value();
  return out;
}

SuslinReport suslin_condition(RingPtr k, const rings::NonUnitalRing& ideal,
                              const rings::BimoduleAction& act, Coefficients lambda, int n,
                              const ResolutionCache* cache) {
  if (n < 1) throw std::invalid_argument("vanishing probe needs n >= 1");
  rings::Unitalization u = rings::unitalization(std::move(k), ideal, act);
  FinModule right = homalg::module_via_hom(u.to_base, Side::Right);
  FinModule left = homalg::module_via_hom(u.to_base, Side::Left);
  if (lambda.kind != Coefficients::Kind::Integral) left = coefficient_module(left, lambda);
  FreeResolution res = homalg::free_resolution(right, n + 1, cache);
  ChainComplex cx = homalg::tensor_complex(res, left);
  SuslinReport rep;
  for (int i = 1; i <= n; ++i) {
    TorEntry e;
    e.degree = i;
    e.certified_by = n + 1;
    e.group = homalg::homology(cx, i).group;
    if (!e.group.trivial() && !rep.first_nonzero) {
      rep.first_nonzero = i;
      rep.witness = e.group;
    }
    rep.tor.push_back(std::move(e));
  }
  rep.vanishes = !rep.first_nonzero.has_value();
  return rep;
}

TorsionBoundReport torsion_bound_report(const RingSquare& sq, const Int& n_torsion, int n,
                                        const ResolutionCache* cache) {
  if (n < 1) throw std::invalid_argument("torsion probe needs n >= 1");
  if (n_torsion < 1) throw std::invalid_argument("torsion modulus must be positive");
  TorsionBoundReport rep;
  rep.modulus = n_torsion;
  MultiplicationMap mm = multiplication_map(sq, n + 1, cache);
  rep.one_connective = pi0_check(mm, sq).verdict.holds;
  int max_exp = 0;
  for (int i = 1; i <= n; ++i) {
    TorsionEntry e;
    e.degree = i;
    e.group = homalg::homology(mm.source, i).group;
    e.exponent = lin::torsion_exponent(e.group, n_torsion);
    if (e.exponent)
      max_exp = std::max(max_exp, *e.exponent);
    else if (!rep.failing_degree)
      rep.failing_degree = i;
    rep.entries.push_back(std::move(e));
  }
  rep.bounded = !rep.failing_degree.has_value();
  if (rep.one_connective && rep.bounded) {
    rep.conclusion = "the birelative K-groups of the square are bounded " +
                     n_torsion.get_str() + "-torsion in degrees <= " + std::to_string(n) +
                     " (largest Tor exponent " + std::to_string(max_exp) + ")";
  } else if (!rep.one_connective) {
    rep.conclusion = "conclusion withheld: the multiplication map is not a pi_0-isomorphism";
  } else {
    rep.conclusion = "conclusion withheld: no power of " + n_torsion.get_str() + " kills Tor_" +
                     std::to_string(*rep.failing_degree) + " = " +
                     rep.entries[*rep.failing_degree - 1].group.str();
  }
  return rep;
}

AnalysisReport analyze(const RingSquare& sq, const AnalysisOptions& opts) {
  AnalysisReport rep;
  rep.name = sq.name;
  rep.pullback = is_pullback(sq);
  if (!sq.gp.is_surjective())
    rep.milnor = {false, "B -> B' is not surjective"};
  else if (!rep.pullback.holds)
    rep.milnor = {false, "B -> B' surjective but not a pullback: " + rep.pullback.evidence};
  else
    rep.milnor = {true, "pullback with B -> B' surjective"};
  rep.e1 = rep.pullback;

  rep.connectivity =
      multiplication_connectivity(sq, opts.degree, Coefficients::integral(), opts.cache);
  rep.e2 = rep.connectivity.pi0;
  if (opts.lambda.kind != Coefficients::Kind::Integral)
    rep.lambda_connectivity = multiplication_connectivity(sq, opts.degree, opts.lambda, opts.cache);
  if (opts.probe_unitality)
    rep.unitality = tor_unitality(sq.f, opts.degree, Coefficients::integral(), opts.cache);
  if (opts.torsion)
    rep.torsion = torsion_bound_report(sq, *opts.torsion, std::max(1, opts.degree - 1), opts.cache);

  if (!rep.pullback.holds)
    rep.notes.push_back("not a pullback square: the excision analysis does not apply");
  if (rep.milnor.holds)
    rep.notes.push_back("Milnor square: B/IB identifies with B', the multiplication map is "
                        "1-connective");
  if (rep.e1.holds && rep.e2.holds)
    rep.notes.push_back("conditions (E1) and (E2) hold: truncating invariants satisfy excision "
                        "for this square");
  if (rings::kernel_ideal(sq.f).is_nilpotent())
    rep.notes.push_back("ker(A -> A') is nilpotent: truncating invariants do not distinguish A "
                        "from A'");
  bool all_zero = rep.connectivity.exhausted;
  for (const TorEntry& e : rep.connectivity.tor) all_zero = all_zero && e.group.trivial();
  if (all_zero && rep.connectivity.pi0.holds)
    rep.notes.push_back("all probed Tor groups vanish: consistent with A' (x)_A B -> B' being "
                        "an equivalence (flat case)");
  return rep;
}

}  // namespace exl::squares
