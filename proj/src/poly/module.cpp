#include <algorithm>
#include <set>
#include <utility>

#include "excision/error.hpp"
#include "excision/poly.hpp"

namespace exl::poly {

namespace {

VPoly reduce_vec(const PolyQuotRing& a, VPoly v) {
  for (Poly& f : v) f = a.reduce(std::move(f));
  return v;
}

// relation columns of the free module A^rows viewed over the base ring: one
// copy of every quotient relation in each component
std::vector<VPoly> free_rel_cols(const QuotPtr& a, int rows) {
  std::vector<VPoly> out;
  for (int u = 0; u < rows; ++u)
    for (const Poly& g : a->gb()) {
      VPoly v(static_cast<size_t>(rows));
      v[size_t(u)] = g;
      out.push_back(std::move(v));
    }
  return out;
}

std::vector<VPoly> rel_cols_full(const QModule& m) {
  std::vector<VPoly> out = m.rels;
  std::vector<VPoly> free_part = free_rel_cols(m.ring, m.gens);
  out.insert(out.end(), free_part.begin(), free_part.end());
  return out;
}

// syzygies of [main | modrels] projected to the main coordinates: generators
// of all coefficient vectors w with sum w_j main_j in the span of modrels
std::vector<VPoly> syz_proj(const QuotPtr& a, const std::vector<VPoly>& main,
                            const std::vector<VPoly>& modrels, int rows) {
  if (main.empty()) return {};
  std::vector<VPoly> cols = main;
  cols.insert(cols.end(), modrels.begin(), modrels.end());
  std::vector<VPoly> out;
  for (const VPoly& s : syzygies(*a->base(), cols, rows)) {
    VPoly w = reduce_vec(*a, VPoly(s.begin(), s.begin() + long(main.size())));
    if (!vzero(w)) out.push_back(std::move(w));
  }
  return out;
}

VPoly apply_cols(const PolyRing& r, const std::vector<VPoly>& cols, const VPoly& w, int rows) {
  VPoly out(static_cast<size_t>(rows));
  for (size_t j = 0; j < cols.size(); ++j) {
    if (w[j].zero()) continue;
    for (int i = 0; i < rows; ++i)
      out[size_t(i)] = r.add(out[size_t(i)], r.mul(cols[j][size_t(i)], w[j]));
  }
  return out;
}

void check_cols(const QModule& m, const std::vector<VPoly>& cols, const char* what) {
  for (const VPoly& v : cols)
    if (int(v.size()) != m.gens)
      throw InvalidObjectError(std::string(what) + " has the wrong number of rows");
}

}  // namespace

QModule free_module(QuotPtr a, int rank, std::string label) {
  if (rank < 0) throw InvalidObjectError("negative module rank");
  if (label.empty()) label = (a->name().empty() ? "A" : a->name()) + "^" + std::to_string(rank);
  return QModule{std::move(a), rank, {}, std::move(label)};
}

QModule cyclic_module(QuotPtr a, const QIdeal& i, std::string label) {
  if (i.ring != a) throw InvalidObjectError("ideal lives in a different ring");
  std::vector<VPoly> rels;
  for (const Poly& f : i.gens) rels.push_back(VPoly{f});
  if (label.empty()) label = (a->name().empty() ? "A" : a->name()) + "/I";
  return QModule{std::move(a), 1, std::move(rels), std::move(label)};
}

QModule ideal_module(const QIdeal& i, std::string label) {
  std::vector<VPoly> cols;
  for (const Poly& f : i.gens) cols.push_back(VPoly{f});
  if (label.empty()) label = "ideal(" + std::to_string(i.gens.size()) + " gens)";
  return module_from_columns(i.ring, 1, std::move(cols), std::move(label));
}

QModule module_from_columns(QuotPtr a, int rows, std::vector<VPoly> cols, std::string label) {
  for (VPoly& v : cols) {
    if (int(v.size()) != rows) throw InvalidObjectError("column has the wrong number of rows");
    v = reduce_vec(*a, std::move(v));
  }
  std::vector<VPoly> rels = syz_proj(a, cols, free_rel_cols(a, rows), rows);
  return QModule{std::move(a), int(cols.size()), std::move(rels), std::move(label)};
}

ModGB relation_gb(const QModule& m) {
  check_cols(m, m.rels, "relation column");
  return module_gb(*m.ring->base(), rel_cols_full(m), m.gens, 0);
}

bool elem_is_zero(const QModule& m, const VPoly& v) {
  return module_member(*m.ring->base(), v, relation_gb(m));
}

bool module_is_zero(const QModule& m) {
  ModGB gb = relation_gb(m);
  for (int u = 0; u < m.gens; ++u) {
    VPoly e(size_t(m.gens));
    e[size_t(u)] = m.ring->base()->one();
    if (!module_member(*m.ring->base(), e, gb)) return false;
  }
  return true;
}

std::optional<StdBasis> module_basis(const QModule& m, long cap) {
  ModGB gb = relation_gb(m);
  const PolyRing& r = *m.ring->base();
  StdBasis basis;
  for (int u = 0; u < m.gens; ++u) {
    // monomials in component u not divisible by a lead with that component
    std::vector<Mono> leads;
    for (const VPoly& g : gb.g) {
      int best = -1;
      for (size_t c = 0; c < g.size(); ++c) {
        if (g[c].zero()) continue;
        if (best < 0 || r.mono_less(g[size_t(best)].lead().m, g[c].lead().m)) best = int(c);
      }
      if (best == u) leads.push_back(g[size_t(best)].lead().m);
    }
    auto standard = [&](const Mono& mo) {
      for (const Mono& l : leads)
        if (mono_divides(l, mo)) return false;
      return true;
    };
    std::vector<Mono> queue;
    std::set<Mono> seen;
    Mono unit(size_t(r.nvars()), 0);
    if (standard(unit)) {
      seen.insert(unit);
      queue.push_back(unit);
    }
    for (size_t q = 0; q < queue.size(); ++q) {
      Mono cur = queue[q];
      for (int i = 0; i < r.nvars(); ++i) {
        Mono next = cur;
        ++next[size_t(i)];
        if (!standard(next) || !seen.insert(next).second) continue;
        queue.push_back(next);
      }
      if (long(basis.mono.size() + seen.size()) > cap) return std::nullopt;
    }
    for (const Mono& mo : seen) basis.mono.emplace_back(u, mo);
    if (long(basis.mono.size()) > cap) return std::nullopt;
  }
  return basis;
}

std::optional<long> module_dim(const QModule& m, long cap) {
  std::optional<StdBasis> b = module_basis(m, cap);
  if (!b) return std::nullopt;
  return long(b->mono.size());
}

QModHom module_hom(QModule src, QModule tgt, std::vector<VPoly> cols) {
  if (src.ring != tgt.ring) throw InvalidObjectError("module map between different rings");
  if (int(cols.size()) != src.gens)
    throw InvalidObjectError("module map needs one column per source generator");
  for (VPoly& v : cols) {
    if (int(v.size()) != tgt.gens) throw InvalidObjectError("column has the wrong number of rows");
    v = reduce_vec(*src.ring, std::move(v));
  }
  ModGB tgt_gb = module_gb(*src.ring->base(), rel_cols_full(tgt), tgt.gens, 0);
  for (const VPoly& r : src.rels) {
    VPoly image = apply_cols(*src.ring->base(), cols, r, tgt.gens);
    if (!module_member(*src.ring->base(), image, tgt_gb))
      throw InvalidObjectError("module map does not send relations into relations");
  }
  return QModHom{std::move(src), std::move(tgt), std::move(cols)};
}

bool hom_is_zero(const QModHom& h) {
  ModGB tgt_gb = module_gb(*h.tgt.ring->base(), rel_cols_full(h.tgt), h.tgt.gens, 0);
  for (const VPoly& c : h.cols)
    if (!module_member(*h.tgt.ring->base(), c, tgt_gb)) return false;
  return true;
}

QModHom compose(const QModHom& outer, const QModHom& inner) {
  if (inner.tgt.ring != outer.src.ring || inner.tgt.gens != outer.src.gens)
    throw InvalidObjectError("module maps do not compose");
  std::vector<VPoly> cols;
  for (const VPoly& c : inner.cols)
    cols.push_back(reduce_vec(*outer.src.ring,
                              apply_cols(*outer.src.ring->base(), outer.cols, c, outer.tgt.gens)));
  return module_hom(inner.src, outer.tgt, std::move(cols));
}

std::vector<VPoly> kernel_columns(const QModHom& h) {
  return syz_proj(h.src.ring, h.cols, rel_cols_full(h.tgt), h.tgt.gens);
}

QModule kernel_module(const QModHom& h) {
  std::vector<VPoly> kern = kernel_columns(h);
  std::vector<VPoly> rels = syz_proj(h.src.ring, kern, rel_cols_full(h.src), h.src.gens);
  return QModule{h.src.ring, int(kern.size()), std::move(rels), "ker(" + h.src.label + ")"};
}

QModule cokernel_module(const QModHom& h) {
  std::vector<VPoly> rels = h.tgt.rels;
  rels.insert(rels.end(), h.cols.begin(), h.cols.end());
  return QModule{h.tgt.ring, h.tgt.gens, std::move(rels), "coker(" + h.tgt.label + ")"};
}

// ---- complexes and homology ---------------------------------------------------

QComplex free_complex(QuotPtr a, std::vector<int> ranks, std::vector<std::vector<VPoly>> d) {
  if (d.size() + 1 != ranks.size())
    throw InvalidObjectError("complex needs one differential between consecutive ranks");
  QComplex cx{std::move(a), std::move(ranks), std::move(d)};
  for (size_t t = 0; t < cx.d.size(); ++t) {
    if (int(cx.d[t].size()) != cx.ranks[t + 1])
      throw InvalidObjectError("differential has the wrong number of columns");
    for (VPoly& v : cx.d[t]) {
      if (int(v.size()) != cx.ranks[t]) throw InvalidObjectError("differential column mismatch");
      v = reduce_vec(*cx.ring, std::move(v));
    }
  }
  for (size_t t = 1; t < cx.d.size(); ++t)
    for (const VPoly& v : cx.d[t]) {
      VPoly sq = apply_cols(*cx.ring->base(), cx.d[t - 1], v, cx.ranks[t - 1]);
      if (!vzero(reduce_vec(*cx.ring, std::move(sq))))
        throw InvalidObjectError("complex differentials do not compose to zero");
    }
  return cx;
}

QComplex cone(const QComplex& src, const QComplex& tgt, const std::vector<std::vector<VPoly>>& f) {
  if (src.ring != tgt.ring) throw InvalidObjectError("cone needs complexes over one ring");
  auto rank_at = [](const QComplex& cx, int i) {
    return (i >= 0 && i < int(cx.ranks.size())) ? cx.ranks[size_t(i)] : 0;
  };
  auto diff_at = [&](const QComplex& cx, int i) -> std::vector<VPoly> {
    // differential out of degree i, columns in A^{rank(i-1)}
    if (i >= 1 && i <= int(cx.d.size())) return cx.d[size_t(i - 1)];
    return std::vector<VPoly>(size_t(rank_at(cx, i)), VPoly(size_t(rank_at(cx, i - 1))));
  };
  auto map_at = [&](int i) -> std::vector<VPoly> {
    if (i >= 0 && i < int(f.size())) return f[size_t(i)];
    return std::vector<VPoly>(size_t(rank_at(src, i)), VPoly(size_t(rank_at(tgt, i))));
  };
  const PolyRing& r = *src.ring->base();
  // chain-map identity d_tgt f = f d_src, degreewise over the quotient
  for (size_t i = 0; i < f.size(); ++i) {
    if (int(f[i].size()) != rank_at(src, int(i)))
      throw InvalidObjectError("chain map has the wrong number of columns");
    for (const VPoly& c : f[i])
      if (int(c.size()) != rank_at(tgt, int(i)))
        throw InvalidObjectError("chain map column has the wrong number of rows");
    if (int(i) == 0) continue;
    std::vector<VPoly> lhs, rhs;
    for (const VPoly& c : diff_at(src, int(i)))
      rhs.push_back(apply_cols(r, map_at(int(i) - 1), c, rank_at(tgt, int(i) - 1)));
    for (const VPoly& c : map_at(int(i)))
      lhs.push_back(apply_cols(r, diff_at(tgt, int(i)), c, rank_at(tgt, int(i) - 1)));
    for (size_t j = 0; j < lhs.size(); ++j) {
      VPoly diff(size_t(rank_at(tgt, int(i) - 1)));
      for (size_t u = 0; u < diff.size(); ++u) diff[u] = r.sub(lhs[j][u], rhs[j][u]);
      if (!vzero(reduce_vec(*src.ring, std::move(diff))))
        throw InvalidObjectError("chain map does not commute with the differentials");
    }
  }
  int top = std::max(int(src.ranks.size()), int(tgt.ranks.size()) - 1);
  std::vector<int> ranks;
  std::vector<std::vector<VPoly>> diffs;
  for (int i = 0; i <= top; ++i) ranks.push_back(rank_at(src, i - 1) + rank_at(tgt, i));
  for (int i = 1; i <= top; ++i) {
    int sr = rank_at(src, i - 2), tr = rank_at(tgt, i - 1);
    std::vector<VPoly> ds = diff_at(src, i - 1), dt = diff_at(tgt, i), fm = map_at(i - 1);
    std::vector<VPoly> cols;
    for (int c = 0; c < rank_at(src, i - 1); ++c) {
      VPoly v(size_t(sr + tr));
      for (int u = 0; u < sr; ++u) v[size_t(u)] = r.neg(ds[size_t(c)][size_t(u)]);
      for (int u = 0; u < tr; ++u) v[size_t(sr + u)] = r.neg(fm[size_t(c)][size_t(u)]);
      cols.push_back(std::move(v));
    }
    for (int c = 0; c < rank_at(tgt, i); ++c) {
      VPoly v(size_t(sr + tr));
      for (int u = 0; u < tr; ++u) v[size_t(sr + u)] = dt[size_t(c)][size_t(u)];
      cols.push_back(std::move(v));
    }
    diffs.push_back(std::move(cols));
  }
  return QComplex{src.ring, std::move(ranks), std::move(diffs)};
}

QResolution free_resolution(const QModule& m, int length) {
  if (length < 0) throw InvalidObjectError("resolution length must be >= 0");
  check_cols(m, m.rels, "relation column");
  QResolution res{m, {m.gens}, {}};
  std::vector<VPoly> cur;
  for (const VPoly& v : m.rels) {
    VPoly w = reduce_vec(*m.ring, v);
    if (!vzero(w)) cur.push_back(std::move(w));
  }
  int rows = m.gens;
  for (int t = 0; t < length; ++t) {
    res.ranks.push_back(int(cur.size()));
    res.d.push_back(cur);
    if (t + 1 < length) {
      std::vector<VPoly> next = syz_proj(m.ring, cur, free_rel_cols(m.ring, rows), rows);
      rows = int(cur.size());
      cur = std::move(next);
    }
  }
  return res;
}

QComplex resolution_complex(const QResolution& r) {
  return QComplex{r.target.ring, r.ranks, r.d};
}

namespace {

// Kronecker extension of a free differential to coefficients in N: slot s
// covers coordinates [s h, (s+1) h) with h = N's generator count
std::vector<VPoly> tensor_cols(const std::vector<VPoly>& d, int src_rank, int tgt_rank, int h) {
  std::vector<VPoly> out;
  for (int j = 0; j < src_rank; ++j)
    for (int v = 0; v < h; ++v) {
      VPoly col(size_t(tgt_rank * h));
      for (int i = 0; i < tgt_rank; ++i) col[size_t(i * h + v)] = d[size_t(j)][size_t(i)];
      out.push_back(std::move(col));
    }
  return out;
}

QModule chain_module(const QComplex& cx, const QModule& n, int i) {
  int rank = (i >= 0 && i < int(cx.ranks.size())) ? cx.ranks[size_t(i)] : 0;
  std::vector<VPoly> rels;
  for (int s = 0; s < rank; ++s)
    for (const VPoly& q : n.rels) {
      VPoly v(size_t(rank * n.gens));
      for (int u = 0; u < n.gens; ++u) v[size_t(s * n.gens + u)] = q[size_t(u)];
      rels.push_back(std::move(v));
    }
  return QModule{cx.ring, rank * n.gens, std::move(rels),
                 n.label + "^" + std::to_string(rank)};
}

}  // namespace

QHomology tensor_homology(const QComplex& cx, const QModule& n, int i) {
  if (n.ring != cx.ring) throw InvalidObjectError("coefficients live in a different ring");
  if (i < 0) throw InvalidObjectError("homology degree must be >= 0");
  const PolyRing& r = *cx.ring->base();
  int h = n.gens;
  auto rank_at = [&](int t) {
    return (t >= 0 && t < int(cx.ranks.size())) ? cx.ranks[size_t(t)] : 0;
  };
  QModule xi = chain_module(cx, n, i);

  std::vector<VPoly> cycles;
  if (i == 0 || i > int(cx.d.size())) {
    for (int u = 0; u < xi.gens; ++u) {
      VPoly e(size_t(xi.gens));
      e[size_t(u)] = r.one();
      cycles.push_back(std::move(e));
    }
  } else {
    std::vector<VPoly> dout = tensor_cols(cx.d[size_t(i - 1)], rank_at(i), rank_at(i - 1), h);
    QModule xprev = chain_module(cx, n, i - 1);
    cycles = syz_proj(cx.ring, dout, rel_cols_full(xprev), xprev.gens);
  }

  std::vector<VPoly> boundaries;
  if (i < int(cx.d.size()))
    boundaries = tensor_cols(cx.d[size_t(i)], rank_at(i + 1), rank_at(i), h);
  std::vector<VPoly> full = rel_cols_full(xi);
  boundaries.insert(boundaries.end(), full.begin(), full.end());

  std::vector<VPoly> rels = syz_proj(cx.ring, cycles, boundaries, xi.gens);
  QModule group{cx.ring, int(cycles.size()), std::move(rels),
                "H_" + std::to_string(i) + "(" + n.label + ")"};
  return QHomology{std::move(group), std::move(cycles), std::move(boundaries)};
}

QHomology complex_homology(const QComplex& cx, int i) {
  return tensor_homology(cx, free_module(cx.ring, 1, "A"), i);
}

TorData tor(const QModule& m, const QModule& n, int i) {
  if (i < 0) throw InvalidObjectError("tor degree must be >= 0");
  QResolution res = free_resolution(m, i + 1);
  QHomology h = tensor_homology(resolution_complex(res), n, i);
  h.group.label = "Tor_" + std::to_string(i) + "(" + m.label + ", " + n.label + ")";
  std::optional<long> dim = module_dim(h.group);
  return TorData{std::move(h.group), dim};
}

QComplex koszul_complex(QuotPtr a, const std::vector<Poly>& c) {
  int rcount = int(c.size());
  if (rcount > 20) throw LimitError("Koszul complex on too many elements");
  std::vector<std::vector<int>> level(size_t(rcount + 1));
  std::vector<int> index(size_t(1) << rcount, -1);
  for (int mask = 0; mask < (1 << rcount); ++mask) {
    int pc = __builtin_popcount(unsigned(mask));
    index[size_t(mask)] = int(level[size_t(pc)].size());
    level[size_t(pc)].push_back(mask);
  }
  const PolyRing& r = *a->base();
  std::vector<int> ranks;
  for (int j = 0; j <= rcount; ++j) ranks.push_back(int(level[size_t(j)].size()));
  std::vector<std::vector<VPoly>> d;
  for (int j = 1; j <= rcount; ++j) {
    std::vector<VPoly> cols;
    for (int mask : level[size_t(j)]) {
      VPoly col(level[size_t(j - 1)].size());
      int pos = 0;
      for (int t = 0; t < rcount; ++t) {
        if (!(mask & (1 << t))) continue;
        Poly entry = a->reduce((pos % 2 == 0) ? c[size_t(t)] : r.neg(c[size_t(t)]));
        col[size_t(index[size_t(mask & ~(1 << t))])] = std::move(entry);
        ++pos;
      }
      cols.push_back(std::move(col));
    }
    d.push_back(std::move(cols));
  }
  return free_complex(std::move(a), std::move(ranks), std::move(d));
}

TorData koszul_homology(QuotPtr a, const std::vector<Poly>& c, int i) {
  QComplex cx = koszul_complex(std::move(a), c);
  QHomology h = complex_homology(cx, i);
  h.group.label = "H_" + std::to_string(i) + "(Koszul)";
  std::optional<long> dim = module_dim(h.group);
  return TorData{std::move(h.group), dim};
}

}  // namespace exl::poly
