#include <sstream>

#include "excision/error.hpp"
#include "excision/homalg.hpp"

namespace exl::homalg {

using lin::lattice_contains;
using lin::vec_is_zero;

RingMat::RingMat(RingPtr rg, int r, int c)
    : ring(std::move(rg)), rows(r), cols(c),
      e(r, std::vector<Coords>(c, Coords(ring->ngens(), 0))) {}

RingMat RingMat::mul(const RingMat& o) const {
  if (cols != o.rows) throw std::invalid_argument("ring matrix shape mismatch");
  RingMat out(ring, rows, o.cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < o.cols; ++j) {
      Coords acc = ring->zero();
      for (int k = 0; k < cols; ++k) acc = ring->add(acc, ring->mul(e[i][k], o.e[k][j]));
      out.e[i][j] = std::move(acc);
    }
  return out;
}

bool RingMat::is_zero() const {
  for (const auto& row : e)
    for (const auto& x : row)
      if (!ring->is_zero(x)) return false;
  return true;
}

IntMat RingMat::additive() const {
  int n = ring->ngens();
  IntMat out(rows * n, cols * n);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      IntMat blk = ring->left_mult_matrix(e[r][c]);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out.at(r * n + i, c * n + j) = blk.at(i, j);
    }
  return out;
}

std::string RingMat::str() const {
  std::ostringstream os;
  os << "[";
  for (int r = 0; r < rows; ++r) {
    os << (r ? "; " : "");
    for (int c = 0; c < cols; ++c) os << (c ? ", " : "") << ring->elem_str(e[r][c]);
  }
  os << "]";
  return os.str();
}

IntMat free_rels(const RingPtr& r, int k) {
  int n = r->ngens();
  IntMat out(k * n, k * n);
  for (int s = 0; s < k; ++s)
    for (int i = 0; i < n; ++i) out.at(s * n + i, s * n + i) = r->dims()[i];
  return out;
}

IntMat FinModule::act_of(const Coords& r) const {
  Coords rr = ring->reduce(r);
  IntMat out(add.ngens(), add.ngens());
  for (int u = 0; u < ring->ngens(); ++u)
    if (rr[u] != 0) out = out + act[u] * rr[u];
  return out;
}

FinModule fin_module(RingPtr ring, FgGroup add, std::vector<IntMat> act, Side side,
                     std::string label, std::vector<std::vector<Int>> mod_gens) {
  int a = add.ngens(), n = ring->ngens();
  if (int(act.size()) != n) throw InvalidObjectError("module needs one action matrix per ring generator");
  for (int u = 0; u < n; ++u) {
    if (act[u].rows() != a || act[u].cols() != a)
      throw InvalidObjectError("module action matrix has wrong shape");
    if (!lattice_contains(add.rels(), act[u] * add.rels()))
      throw InvalidObjectError("module action does not preserve the relations");
    if (!lattice_contains(add.rels(), act[u] * ring->dims()[u]))
      throw InvalidObjectError("module action ignores the additive order of a ring generator");
  }
  if (mod_gens.empty())
    for (int k = 0; k < add.canon_dim(); ++k) mod_gens.push_back(add.canon_generator(k));
  for (const auto& g : mod_gens)
    if (int(g.size()) != a) throw InvalidObjectError("module generator has wrong coordinate size");
  FinModule m{std::move(ring), std::move(add), std::move(act), std::move(mod_gens), side,
              std::move(label)};
  IntMat unit_act = m.act_of(m.ring->unit());
  if (!lattice_contains(m.add.rels(), unit_act - IntMat::identity(a)))
    throw InvalidObjectError("module unit does not act as the identity");
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      IntMat prod = m.act_of(m.ring->mul(m.ring->gen(u), m.ring->gen(v)));
      IntMat comp = side == Side::Right ? m.act[v] * m.act[u] : m.act[u] * m.act[v];
      if (!lattice_contains(m.add.rels(), prod - comp))
        throw InvalidObjectError("module action is not associative");
    }
  // the declared generators must span the module once closed under the action
  std::vector<std::vector<Int>> cols = m.mod_gens;
  for (size_t head = 0; head < cols.size(); ++head)
    for (int u = 0; u < n; ++u) {
      std::vector<Int> img = lin::mat_vec(m.act[u], cols[head]);
      IntMat have = (cols.empty() ? IntMat(a, 0) : IntMat::from_cols(cols)).hstack(m.add.rels());
      if (!lin::solve_int(have, img)) cols.push_back(std::move(img));
    }
  IntMat span = cols.empty() ? IntMat(a, 0) : IntMat::from_cols(cols);
  if (!FgGroup(a, span.hstack(m.add.rels())).trivial())
    throw InvalidObjectError("module generators do not generate the module");
  return m;
}

FinModule ring_as_module(RingPtr r, Side side) {
  std::vector<IntMat> act;
  for (int u = 0; u < r->ngens(); ++u)
    act.push_back(side == Side::Right ? r->right_mult_matrix(r->gen(u))
                                      : r->left_mult_matrix(r->gen(u)));
  FgGroup add = r->additive_group();
  std::string label = r->name();
  std::vector<std::vector<Int>> gens = {r->unit()};
  return fin_module(std::move(r), std::move(add), std::move(act), side, std::move(label),
                    std::move(gens));
}

FinModule zero_module(RingPtr r) {
  return fin_module(std::move(r), FgGroup(0, IntMat(0, 0)), {}, Side::Right, "0");
}

FinModule module_from_presentation(RingPtr r, int gens, const RingMat& rels, Side side,
                                   std::string label) {
  int n = r->ngens();
  if (rels.cols > 0 && rels.rows != gens)
    throw InvalidObjectError("presentation relation matrix has wrong height");
  IntMat rel_add = rels.cols > 0 ? rels.additive() : IntMat(gens * n, 0);
  FgGroup add(gens * n, free_rels(r, gens).hstack(rel_add));
  std::vector<IntMat> act;
  for (int u = 0; u < n; ++u) {
    IntMat blk = side == Side::Right ? r->right_mult_matrix(r->gen(u))
                                     : r->left_mult_matrix(r->gen(u));
    IntMat big(gens * n, gens * n);
    for (int s = 0; s < gens; ++s)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) big.at(s * n + i, s * n + j) = blk.at(i, j);
    act.push_back(std::move(big));
  }
  std::vector<std::vector<Int>> mod_gens;
  for (int s = 0; s < gens; ++s) {
    std::vector<Int> e(gens * n, 0);
    for (int u = 0; u < n; ++u) e[s * n + u] = r->unit()[u];
    mod_gens.push_back(std::move(e));
  }
  return fin_module(std::move(r), std::move(add), std::move(act), side, std::move(label),
                    std::move(mod_gens));
}

FinModule quotient_module(RingPtr r, const rings::Ideal& ideal, Side side) {
  FgGroup add(r->ngens(), r->additive_rels().hstack(ideal.sub.lattice()));
  std::vector<IntMat> act;
  for (int u = 0; u < r->ngens(); ++u)
    act.push_back(side == Side::Right ? r->right_mult_matrix(r->gen(u))
                                      : r->left_mult_matrix(r->gen(u)));
  std::string label = r->name() + "/I";
  std::vector<std::vector<Int>> gens = {r->unit()};
  return fin_module(std::move(r), std::move(add), std::move(act), side, std::move(label),
                    std::move(gens));
}

FinModule ideal_module(const rings::Ideal& ideal, Side side) {
  const rings::Subgroup& s = ideal.sub;
  RingPtr r = s.ring();
  int k = s.rank();
  IntMat rels(k, k);
  for (int i = 0; i < k; ++i) rels.at(i, i) = s.basis_orders()[i];
  FgGroup add(k, rels);
  std::vector<IntMat> act;
  for (int u = 0; u < r->ngens(); ++u) {
    IntMat m(k, k);
    for (int j = 0; j < k; ++j) {
      Coords prod = side == Side::Right ? r->mul(s.basis()[j], r->gen(u))
                                        : r->mul(r->gen(u), s.basis()[j]);
      m.set_col(j, s.coords_of(prod));
    }
    act.push_back(std::move(m));
  }
  return fin_module(r, std::move(add), std::move(act), side, "ideal");
}

FinModule module_via_hom(const rings::RingHom& f, Side side) {
  RingPtr src = f.src(), tgt = f.tgt();
  std::vector<IntMat> act;
  for (int u = 0; u < src->ngens(); ++u) {
    Coords im = f.apply(src->gen(u));
    act.push_back(side == Side::Right ? tgt->right_mult_matrix(im) : tgt->left_mult_matrix(im));
  }
  FgGroup add = tgt->additive_group();
  std::string label = tgt->name();
  return fin_module(src, std::move(add), std::move(act), side, std::move(label));
}

ModuleHom module_hom(const FinModule& src, const FinModule& tgt, IntMat m) {
  if (src.ring.get() != tgt.ring.get())
    throw std::invalid_argument("module hom requires a common base ring");
  if (m.rows() != tgt.add.ngens() || m.cols() != src.add.ngens())
    throw InvalidObjectError("module hom matrix shape mismatch");
  if (!lattice_contains(tgt.add.rels(), m * src.add.rels()))
    throw InvalidObjectError("module hom not additive");
  for (int u = 0; u < src.ring->ngens(); ++u)
    if (!lattice_contains(tgt.add.rels(), m * src.act[u] - tgt.act[u] * m))
      throw InvalidObjectError("module hom does not commute with the action");
  return ModuleHom{&src, &tgt, std::move(m)};
}

}  // namespace exl::homalg
