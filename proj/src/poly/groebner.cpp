#include <algorithm>
#include <utility>

#include "excision/error.hpp"
#include "excision/poly.hpp"

namespace exl::poly {

bool vzero(const VPoly& v) {
  for (const Poly& f : v)
    if (!f.zero()) return false;
  return true;
}

namespace {

constexpr int kPairBudget = 200000;
constexpr int kBasisBudget = 4000;

// module term (comp, mono); components below split dominate, inside a block
// the ring's monomial order decides with ties won by the smaller component
bool mterm_less(const PolyRing& r, int split, int ca, const Mono& ma, int cb, const Mono& mb) {
  bool main_a = ca < split, main_b = cb < split;
  if (main_a != main_b) return main_b;
  if (!mono_equal(ma, mb)) return r.mono_less(ma, mb);
  return ca > cb;
}

// component of the leading term, -1 for zero; the component's own lead is the
// module lead since the order restricted to one component is the mono order
int lead_comp(const PolyRing& r, int split, const VPoly& v) {
  int best = -1;
  for (size_t c = 0; c < v.size(); ++c) {
    if (v[c].zero()) continue;
    if (best < 0 ||
        mterm_less(r, split, best, v[size_t(best)].lead().m, int(c), v[c].lead().m))
      best = int(c);
  }
  return best;
}

VPoly vsub_mul(const PolyRing& r, VPoly v, const Term& t, const VPoly& g) {
  for (size_t c = 0; c < v.size(); ++c)
    if (!g[c].zero()) v[c] = r.sub(v[c], r.mul_term(g[c], t));
  return v;
}

VPoly vmonic(const PolyRing& r, VPoly v, int split) {
  int c = lead_comp(r, split, v);
  if (c < 0) return v;
  Rat inv = r.field().inv(v[size_t(c)].lead().c);
  for (Poly& f : v) f = r.scale(f, inv);
  return v;
}

VPoly vspoly(const PolyRing& r, const VPoly& a, const VPoly& b, int comp) {
  const Term& ta = a[size_t(comp)].lead();
  const Term& tb = b[size_t(comp)].lead();
  Mono l = mono_lcm(ta.m, tb.m);
  Term ua{mono_quot(l, ta.m), r.field().inv(ta.c)};
  Term ub{mono_quot(l, tb.m), r.field().inv(tb.c)};
  VPoly s(a.size());
  for (size_t c = 0; c < a.size(); ++c) s[c] = r.sub(r.mul_term(a[c], ua), r.mul_term(b[c], ub));
  return s;
}

}  // namespace

VPoly module_nf(const PolyRing& r, VPoly w, const ModGB& gb) {
  VPoly rem(w.size());
  while (true) {
    int c = lead_comp(r, gb.split, w);
    if (c < 0) break;
    const Term lead = w[size_t(c)].lead();
    bool reduced = false;
    for (const VPoly& g : gb.g) {
      int gc = lead_comp(r, gb.split, g);
      if (gc != c) continue;
      const Term& gl = g[size_t(gc)].lead();
      if (!mono_divides(gl.m, lead.m)) continue;
      Rat coef = r.field().reduce(lead.c * r.field().inv(gl.c));
      w = vsub_mul(r, std::move(w), Term{mono_quot(lead.m, gl.m), coef}, g);
      reduced = true;
      break;
    }
    if (!reduced) {
      rem[size_t(c)] = r.add(rem[size_t(c)], r.monomial(lead.m, lead.c));
      w[size_t(c)].t.erase(w[size_t(c)].t.begin());
    }
  }
  return rem;
}

bool module_member(const PolyRing& r, const VPoly& w, const ModGB& gb) {
  return vzero(module_nf(r, w, gb));
}

ModGB module_gb(const PolyRing& r, std::vector<VPoly> gens, int rows, int split) {
  ModGB out{rows, split, {}};
  for (VPoly& v : gens) {
    if (int(v.size()) != rows) throw InvalidObjectError("module generator has the wrong length");
    for (Poly& f : v)
      for (Term& t : f.t) t.c = r.field().reduce(t.c);
    if (!vzero(v)) out.g.push_back(vmonic(r, std::move(v), split));
  }

  struct Pair {
    size_t i, j;
    int deg;
  };
  std::vector<Pair> pairs;
  auto push_pairs = [&](size_t j) {
    int cj = lead_comp(r, split, out.g[j]);
    for (size_t i = 0; i < j; ++i) {
      int ci = lead_comp(r, split, out.g[i]);
      if (ci != cj) continue;
      const Mono& mi = out.g[i][size_t(ci)].lead().m;
      const Mono& mj = out.g[j][size_t(cj)].lead().m;
      // product criterion is only valid for ideals (rank-one modules)
      if (rows == 1 && mono_equal(mono_lcm(mi, mj), mono_mul(mi, mj))) continue;
      pairs.push_back(Pair{i, j, total_degree(mono_lcm(mi, mj))});
    }
  };
  for (size_t j = 0; j < out.g.size(); ++j) push_pairs(j);

  int processed = 0;
  while (!pairs.empty()) {
    if (++processed > kPairBudget)
      throw LimitError("Groebner completion exceeded the pair budget");
    size_t best = 0;
    for (size_t k = 1; k < pairs.size(); ++k)
      if (pairs[k].deg < pairs[best].deg) best = k;
    Pair p = pairs[best];
    pairs.erase(pairs.begin() + long(best));
    int comp = lead_comp(r, split, out.g[p.i]);
    VPoly h = module_nf(r, vspoly(r, out.g[p.i], out.g[p.j], comp), out);
    if (vzero(h)) continue;
    out.g.push_back(vmonic(r, std::move(h), split));
    if (int(out.g.size()) > kBasisBudget)
      throw LimitError("Groebner basis exceeded the size budget");
    push_pairs(out.g.size() - 1);
  }

  // minimalize: drop elements whose lead is a multiple of another lead
  std::vector<VPoly> minimal;
  for (size_t i = 0; i < out.g.size(); ++i) {
    int ci = lead_comp(r, split, out.g[i]);
    const Mono& mi = out.g[i][size_t(ci)].lead().m;
    bool keep = true;
    for (size_t j = 0; j < out.g.size() && keep; ++j) {
      if (i == j) continue;
      int cj = lead_comp(r, split, out.g[j]);
      if (cj != ci) continue;
      const Mono& mj = out.g[j][size_t(cj)].lead().m;
      if (mono_divides(mj, mi) && (!mono_equal(mi, mj) || j < i)) keep = false;
    }
    if (keep) minimal.push_back(out.g[i]);
  }
  out.g = std::move(minimal);

  // tail-reduce each element against the others; leads are already minimal
  for (size_t i = 0; i < out.g.size(); ++i) {
    ModGB others{rows, split, {}};
    for (size_t j = 0; j < out.g.size(); ++j)
      if (j != i) others.g.push_back(out.g[j]);
    out.g[i] = module_nf(r, out.g[i], others);
  }

  std::sort(out.g.begin(), out.g.end(), [&](const VPoly& a, const VPoly& b) {
    int ca = lead_comp(r, split, a), cb = lead_comp(r, split, b);
    return mterm_less(r, split, cb, b[size_t(cb)].lead().m, ca, a[size_t(ca)].lead().m);
  });
  return out;
}

std::vector<Poly> groebner(const PolyRing& r, std::vector<Poly> gens) {
  std::vector<VPoly> wrapped;
  for (Poly& f : gens) wrapped.push_back(VPoly{std::move(f)});
  ModGB gb = module_gb(r, std::move(wrapped), 1, 0);
  std::vector<Poly> out;
  for (VPoly& v : gb.g) out.push_back(std::move(v[0]));
  return out;
}

Poly normal_form(const PolyRing& r, Poly f, const std::vector<Poly>& gs) {
  ModGB gb{1, 0, {}};
  for (const Poly& g : gs)
    if (!g.zero()) gb.g.push_back(VPoly{g});
  return module_nf(r, VPoly{std::move(f)}, gb)[0];
}

namespace {

// columns f_j augmented with unit tags: a Groebner basis of the span of
// (f_j, e_j) in an order where the first `rows` components dominate yields the
// syzygies as the zero-main elements, and membership lifts from the tags
ModGB augmented_gb(const PolyRing& r, const std::vector<VPoly>& cols, int rows) {
  int s = int(cols.size());
  std::vector<VPoly> gens;
  for (int j = 0; j < s; ++j) {
    if (int(cols[size_t(j)].size()) != rows)
      throw InvalidObjectError("column has the wrong number of rows");
    VPoly v(size_t(rows + s));
    for (int c = 0; c < rows; ++c) v[size_t(c)] = cols[size_t(j)][size_t(c)];
    for (int c = 0; c < s; ++c) v[size_t(rows + c)] = (c == j) ? r.one() : r.zero();
    gens.push_back(std::move(v));
  }
  return module_gb(r, std::move(gens), rows + s, rows);
}

}  // namespace

std::vector<VPoly> syzygies(const PolyRing& r, const std::vector<VPoly>& cols, int rows) {
  ModGB agb = augmented_gb(r, cols, rows);
  std::vector<VPoly> out;
  for (const VPoly& g : agb.g) {
    bool main_zero = true;
    for (int c = 0; c < rows && main_zero; ++c) main_zero = g[size_t(c)].zero();
    if (!main_zero) continue;
    out.push_back(VPoly(g.begin() + rows, g.end()));
  }
  return out;
}

std::optional<VPoly> module_lift(const PolyRing& r, const VPoly& w, const std::vector<VPoly>& cols,
                                 int rows) {
  ModGB agb = augmented_gb(r, cols, rows);
  int s = int(cols.size());
  VPoly v(size_t(rows + s));
  for (int c = 0; c < rows; ++c) v[size_t(c)] = w[size_t(c)];
  // reduce while the lead sits in the main block; a clean exit means the main
  // part is in the span and the tags record the negated coordinates
  while (true) {
    int c = lead_comp(r, agb.split, v);
    if (c < 0 || c >= rows) break;
    const Term lead = v[size_t(c)].lead();
    bool reduced = false;
    for (const VPoly& g : agb.g) {
      int gc = lead_comp(r, agb.split, g);
      if (gc != c) continue;
      const Term& gl = g[size_t(gc)].lead();
      if (!mono_divides(gl.m, lead.m)) continue;
      Rat coef = r.field().reduce(lead.c * r.field().inv(gl.c));
      v = vsub_mul(r, std::move(v), Term{mono_quot(lead.m, gl.m), coef}, g);
      reduced = true;
      break;
    }
    if (!reduced) return std::nullopt;
  }
  VPoly coords(static_cast<size_t>(s));
  for (int c = 0; c < s; ++c) coords[size_t(c)] = r.neg(v[size_t(rows + c)]);
  return coords;
}

}  // namespace exl::poly
