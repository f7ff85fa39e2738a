#include "excision/error.hpp"
#include "excision/homalg.hpp"

namespace exl::homalg {

using lin::lattice_contains;
using lin::mat_vec;
using lin::preimage_lattice;
using lin::solve_int;

ChainComplex chain_complex(std::vector<FgGroup> groups, std::vector<IntMat> diffs) {
  if (groups.empty()) throw std::invalid_argument("chain complex needs at least degree 0");
  if (diffs.size() != groups.size())
    throw std::invalid_argument("chain complex needs one differential slot per degree");
  diffs[0] = IntMat(0, groups[0].ngens());
  for (size_t i = 1; i < groups.size(); ++i) {
    if (diffs[i].rows() != groups[i - 1].ngens() || diffs[i].cols() != groups[i].ngens())
      throw InvalidObjectError("differential shape mismatch at degree " + std::to_string(i));
    if (!lattice_contains(groups[i - 1].rels(), diffs[i] * groups[i].rels()))
      throw InvalidObjectError("differential not well-defined at degree " + std::to_string(i));
    if (i >= 2 && !lattice_contains(groups[i - 2].rels(), diffs[i - 1] * diffs[i]))
      throw InvalidObjectError("d.d != 0 at degree " + std::to_string(i));
  }
  return ChainComplex{std::move(groups), std::move(diffs)};
}

ChainMap chain_map(const ChainComplex& src, const ChainComplex& tgt, std::vector<IntMat> f) {
  for (size_t i = 0; i < f.size(); ++i) {
    if (int(i) > src.top() || int(i) > tgt.top())
      throw std::invalid_argument("chain map degree out of range");
    if (f[i].rows() != tgt.c[i].ngens() || f[i].cols() != src.c[i].ngens())
      throw InvalidObjectError("chain map shape mismatch at degree " + std::to_string(i));
    if (!lattice_contains(tgt.c[i].rels(), f[i] * src.c[i].rels()))
      throw InvalidObjectError("chain map not well-defined at degree " + std::to_string(i));
  }
  for (size_t i = 1; i < f.size(); ++i)
    if (!lattice_contains(tgt.c[i - 1].rels(), f[i - 1] * src.d[i] - tgt.d[i] * f[i]))
      throw InvalidObjectError("chain map does not commute with d at degree " + std::to_string(i));
  // degrees above f.size() are zero maps; they commute iff the last provided
  // degree kills incoming boundaries
  if (!f.empty() && int(f.size()) <= src.top()) {
    size_t i = f.size();
    if (!lattice_contains(tgt.c[i - 1].rels(), f[i - 1] * src.d[i]))
      throw InvalidObjectError("chain map does not commute with d at degree " + std::to_string(i));
  }
  return ChainMap{&src, &tgt, std::move(f)};
}

HomologyData homology(const ChainComplex& cx, int i) {
  if (i < 0 || i > cx.top()) {
    return HomologyData{FgGroup(0, IntMat(0, 0)), IntMat(0, 0), {}};
  }
  IntMat z = (i == 0) ? IntMat::identity(cx.c[0].ngens())
                      : preimage_lattice(cx.d[i], cx.c[i - 1].rels());
  IntMat bnd = (i < cx.top()) ? cx.d[i + 1] : IntMat(cx.c[i].ngens(), 0);
  FgGroup h(z.cols(), preimage_lattice(z, bnd.hstack(cx.c[i].rels())));
  std::vector<std::vector<Int>> reps;
  for (int k = 0; k < h.canon_dim(); ++k) reps.push_back(mat_vec(z, h.canon_generator(k)));
  return HomologyData{std::move(h), std::move(z), std::move(reps)};
}

std::vector<Int> class_of(const ChainComplex& cx, int i, const HomologyData& h,
                          const std::vector<Int>& cycle) {
  IntMat bnd = (i < cx.top()) ? cx.d[i + 1] : IntMat(cx.c[i].ngens(), 0);
  IntMat sys = h.cycles.hstack(bnd.hstack(cx.c[i].rels()));
  auto sol = solve_int(sys, cycle);
  if (!sol) throw std::invalid_argument("class_of: vector is not a cycle");
  return std::vector<Int>(sol->begin(), sol->begin() + h.cycles.cols());
}

GroupHom induced_on_homology(const ChainComplex& cx, int i, const HomologyData& h,
                             const IntMat& t) {
  IntMat m(h.group.ngens(), h.group.ngens());
  for (int j = 0; j < h.group.ngens(); ++j)
    m.set_col(j, class_of(cx, i, h, mat_vec(t, h.cycles.col(j))));
  return GroupHom(h.group, h.group, std::move(m));
}

ChainComplex tensor_complex(const FreeResolution& res, const FinModule& n) {
  if (res.ring.get() != n.ring.get())
    throw std::invalid_argument("tensor: modules over different rings");
  if (!res.ring->commutative() &&
      (res.target.side != Side::Right || n.side != Side::Left))
    throw UnsupportedError("tensor over a noncommutative ring needs a right module resolved "
                           "against a left coefficient module");
  int a = n.add.ngens();
  auto slot_group = [&](int k) {
    IntMat rels(k * a, 0);
    for (int s = 0; s < k; ++s) {
      IntMat blk(k * a, n.add.rels().cols());
      for (int i = 0; i < a; ++i)
        for (int j = 0; j < n.add.rels().cols(); ++j)
          blk.at(s * a + i, j) = n.add.rels().at(i, j);
      rels = rels.hstack(blk);
    }
    return FgGroup(k * a, rels);
  };
  std::vector<FgGroup> groups;
  std::vector<IntMat> diffs;
  for (size_t t = 0; t < res.ranks.size(); ++t) groups.push_back(slot_group(res.ranks[t]));
  diffs.push_back(IntMat(0, 0));
  for (size_t t = 0; t < res.d.size(); ++t) {
    const RingMat& dm = res.d[t];
    IntMat big(dm.rows * a, dm.cols * a);
    for (int r = 0; r < dm.rows; ++r)
      for (int c = 0; c < dm.cols; ++c) {
        IntMat blk = n.act_of(dm.e[r][c]);
        for (int i = 0; i < a; ++i)
          for (int j = 0; j < a; ++j) big.at(r * a + i, c * a + j) = blk.at(i, j);
      }
    diffs.push_back(std::move(big));
  }
  return chain_complex(std::move(groups), std::move(diffs));
}

namespace {

FgGroup sum_group(const FgGroup& x, const FgGroup& y) {
  IntMat rels(x.ngens() + y.ngens(), x.rels().cols() + y.rels().cols());
  for (int i = 0; i < x.ngens(); ++i)
    for (int j = 0; j < x.rels().cols(); ++j) rels.at(i, j) = x.rels().at(i, j);
  for (int i = 0; i < y.ngens(); ++i)
    for (int j = 0; j < y.rels().cols(); ++j)
      rels.at(x.ngens() + i, x.rels().cols() + j) = y.rels().at(i, j);
  return FgGroup(x.ngens() + y.ngens(), rels);
}

}  // namespace

ChainComplex cone(const ChainMap& f) {
  const ChainComplex& s = *f.src;
  const ChainComplex& t = *f.tgt;
  auto group_at = [](const ChainComplex& cx, int i) {
    return (i >= 0 && i <= cx.top()) ? cx.c[i] : FgGroup(0, IntMat(0, 0));
  };
  auto diff_at = [&](const ChainComplex& cx, int i) {
    if (i >= 1 && i <= cx.top()) return cx.d[i];
    return IntMat(group_at(cx, i - 1).ngens(), group_at(cx, i).ngens());
  };
  auto map_at = [&](int i) {
    if (i >= 0 && i < int(f.f.size())) return f.f[i];
    return IntMat(group_at(t, i).ngens(), group_at(s, i).ngens());
  };
  int top = std::max(s.top() + 1, t.top());
  std::vector<FgGroup> groups;
  std::vector<IntMat> diffs;
  for (int i = 0; i <= top; ++i) groups.push_back(sum_group(group_at(s, i - 1), group_at(t, i)));
  diffs.push_back(IntMat(0, 0));
  for (int i = 1; i <= top; ++i) {
    int sr = group_at(s, i - 2).ngens(), tr = group_at(t, i - 1).ngens();
    int sc = group_at(s, i - 1).ngens(), tc = group_at(t, i).ngens();
    IntMat d(sr + tr, sc + tc);
    IntMat ds = diff_at(s, i - 1), dt = diff_at(t, i), fm = map_at(i - 1);
    for (int r = 0; r < sr; ++r)
      for (int c = 0; c < sc; ++c) d.at(r, c) = -ds.at(r, c);
    for (int r = 0; r < tr; ++r) {
      for (int c = 0; c < sc; ++c) d.at(sr + r, c) = -fm.at(r, c);
      for (int c = 0; c < tc; ++c) d.at(sr + r, sc + c) = dt.at(r, c);
    }
    diffs.push_back(std::move(d));
  }
  return chain_complex(std::move(groups), std::move(diffs));
}

ChainComplex reduce_mod(const ChainComplex& cx, const Int& m) {
  if (m < 2) throw std::invalid_argument("modulus must be >= 2");
  std::vector<FgGroup> groups;
  for (const FgGroup& g : cx.c)
    groups.push_back(FgGroup(g.ngens(), g.rels().hstack(IntMat::identity(g.ngens()) * m)));
  return chain_complex(std::move(groups), cx.d);
}

FirstHomology first_nonzero_homology(const ChainComplex& cx, int range) {
  for (int i = 0; i <= std::min(range, cx.top()); ++i) {
    HomologyData h = homology(cx, i);
    if (!h.group.trivial()) return FirstHomology{i, h.group};
  }
  return FirstHomology{std::nullopt, FgGroup(0, IntMat(0, 0))};
}

Connectivity connectivity_of_map(const ChainMap& f, int range, const std::optional<Int>& mod) {
  ChainComplex cn = cone(f);
  if (mod) cn = reduce_mod(cn, *mod);
  FirstHomology fh = first_nonzero_homology(cn, range + 1);
  if (fh.degree) return Connectivity{*fh.degree - 1, true, fh.witness};
  return Connectivity{range, false, FgGroup(0, IntMat(0, 0))};
}

FgGroup tor(const FinModule& m, const FinModule& n, int i, const ResolutionCache* cache) {
  if (i < 0) throw std::invalid_argument("tor degree must be >= 0");
  FreeResolution res = free_resolution(m, i + 1, cache);
  ChainComplex cx = tensor_complex(res, n);
  return homology(cx, i).group;
}

std::vector<FgGroup> tor_range(const FinModule& m, const FinModule& n, int imax,
                               const ResolutionCache* cache) {
  FreeResolution res = free_resolution(m, imax + 1, cache);
  ChainComplex cx = tensor_complex(res, n);
  std::vector<FgGroup> out;
  for (int i = 0; i <= imax; ++i) out.push_back(homology(cx, i).group);
  return out;
}

std::vector<FgGroup> with_coefficients(const ChainComplex& cx, const Int& m, int imax) {
  for (const FgGroup& g : cx.c)
    if (!g.invariant_factors().empty())
      throw UnsupportedError("with_coefficients expects a complex of free abelian groups; "
                             "take mod-m coefficients through the module instead");
  ChainComplex red = reduce_mod(cx, m);
  std::vector<FgGroup> out;
  for (int i = 0; i <= imax; ++i) out.push_back(homology(red, i).group);
  return out;
}

UctMaps uct_maps(const ChainComplex& cx, int i, const Int& m) {
  for (const FgGroup& g : cx.c)
    if (!g.invariant_factors().empty())
      throw UnsupportedError("universal coefficients need a complex of free abelian groups");
  ChainComplex red = reduce_mod(cx, m);
  HomologyData hi = homology(cx, i);
  HomologyData hm = homology(red, i);
  HomologyData hprev = homology(cx, i - 1);

  IntMat am(hm.group.ngens(), hi.group.ngens());
  for (int j = 0; j < hi.group.ngens(); ++j)
    am.set_col(j, class_of(red, i, hm, hi.cycles.col(j)));
  GroupHom alpha(hi.group, hm.group, std::move(am));

  IntMat bm(hprev.group.ngens(), hm.group.ngens());
  for (int j = 0; j < hm.group.ngens(); ++j) {
    std::vector<Int> w = hm.cycles.col(j);
    std::vector<Int> dw = (i >= 1 && i <= cx.top()) ? mat_vec(cx.d[i], w)
                                                    : std::vector<Int>();
    std::vector<Int> v(dw.size());
    for (size_t t = 0; t < dw.size(); ++t) {
      if (dw[t] % m != 0) throw std::logic_error("uct: boundary of a mod-m cycle not divisible");
      v[t] = dw[t] / m;
    }
    if (i - 1 >= 0 && i - 1 <= cx.top() && !v.empty())
      bm.set_col(j, class_of(cx, i - 1, hprev, v));
  }
  GroupHom beta(hm.group, hprev.group, std::move(bm));
  return UctMaps{std::move(alpha), std::move(beta)};
}

FgGroup symmetrized_quotient(const FgGroup& h, const std::vector<IntMat>& left,
                             const std::vector<IntMat>& right) {
  if (left.size() != right.size())
    throw std::invalid_argument("symmetrized quotient needs matching action families");
  IntMat rels = h.rels();
  for (size_t u = 0; u < left.size(); ++u) rels = rels.hstack(left[u] - right[u]);
  return FgGroup(h.ngens(), rels);
}

}  // namespace exl::homalg
