#include "excision/abelian.hpp"

#include <sstream>
#include <stdexcept>

namespace exl::lin {

FgGroup::FgGroup(int ngens, IntMat rels) : ngens_(ngens), rels_(std::move(rels)) {
  if (rels_.cols() == 0 || rels_.rows() == 0) rels_ = IntMat(ngens_, rels_.cols());
  if (rels_.rows() != ngens_) throw std::invalid_argument("relation matrix row count != ngens");
  Snf s = smith_normal_form(rels_);
  u_ = std::move(s.u);
  uinv_ = unimodular_inverse(u_);
  for (int i = 0; i < s.rank; ++i)
    if (s.diag[i] > 1) {
      canon_rows_.push_back(i);
      canon_moduli_.push_back(s.diag[i]);
      inv_.push_back(s.diag[i]);
    }
  for (int i = s.rank; i < ngens_; ++i) {
    canon_rows_.push_back(i);
    canon_moduli_.push_back(0);
    ++free_rank_;
  }
}

FgGroup FgGroup::free_group(int rank) { return FgGroup(rank, IntMat(rank, 0)); }

FgGroup FgGroup::from_invariants(const std::vector<Int>& inv, int free_rank) {
  int n = int(inv.size()) + free_rank;
  IntMat rels(n, int(inv.size()));
  for (int j = 0; j < int(inv.size()); ++j) rels.at(j, j) = inv[j];
  return FgGroup(n, rels);
}

Int FgGroup::order() const {
  if (free_rank_ > 0) return 0;
  Int o = 1;
  for (const Int& d : inv_) o *= d;
  return o;
}

std::vector<Int> FgGroup::canon(const std::vector<Int>& x) const {
  if (int(x.size()) != ngens_) throw std::invalid_argument("element coordinate size mismatch");
  std::vector<Int> y = mat_vec(u_, x);
  std::vector<Int> c(canon_rows_.size());
  for (size_t k = 0; k < canon_rows_.size(); ++k) {
    c[k] = y[canon_rows_[k]];
    if (canon_moduli_[k] != 0) {
      mpz_fdiv_r(c[k].get_mpz_t(), c[k].get_mpz_t(), canon_moduli_[k].get_mpz_t());
    }
  }
  return c;
}

bool FgGroup::is_zero(const std::vector<Int>& x) const { return vec_is_zero(canon(x)); }

std::vector<Int> FgGroup::canon_generator(int k) const {
  std::vector<Int> e(ngens_);
  e[canon_rows_[k]] = 1;
  return mat_vec(uinv_, e);
}

std::string FgGroup::str() const {
  if (trivial()) return "0";
  std::ostringstream os;
  bool first = true;
  if (free_rank_ == 1) {
    os << "Z";
    first = false;
  } else if (free_rank_ > 1) {
    os << "Z^" << free_rank_;
    first = false;
  }
  for (const Int& d : inv_) {
    os << (first ? "" : " x ") << "Z/" << d.get_str();
    first = false;
  }
  return os.str();
}

std::optional<int> torsion_exponent(const FgGroup& g, const Int& n) {
  if (!g.finite()) return std::nullopt;
  if (g.trivial()) return 0;
  if (n <= 1) return std::nullopt;
  // the largest invariant factor kills the whole group; each multiplication
  // by n strips v_p(n) from every prime p shared with the remainder
  Int r = g.invariant_factors().back();
  int e = 0;
  while (r > 1) {
    Int c = gcd(r, n);
    if (c == 1) return std::nullopt;  // torsion at primes not dividing n
    r /= c;
    ++e;
  }
  return e;
}

FgGroup invert_primes(const FgGroup& g, const Int& s) {
  std::vector<Int> kept;
  for (const Int& d : g.invariant_factors()) {
    if (s == 0) continue;  // rationalization kills all torsion
    Int r = d;
    for (Int c = gcd(r, s); c > 1; c = gcd(r, s)) r /= c;
    if (r > 1) kept.push_back(r);
  }
  return FgGroup::from_invariants(kept, g.free_rank());
}

GroupHom::GroupHom(FgGroup src, FgGroup tgt, IntMat m)
    : src_(std::move(src)), tgt_(std::move(tgt)), m_(std::move(m)) {
  if (m_.rows() != tgt_.ngens() || m_.cols() != src_.ngens())
    throw std::invalid_argument("hom matrix shape mismatch");
  if (!lattice_contains(tgt_.rels(), m_ * src_.rels()))
    throw std::invalid_argument("hom not well-defined on relations");
}

GroupHom GroupHom::zero(FgGroup src, FgGroup tgt) {
  IntMat m(tgt.ngens(), src.ngens());
  return GroupHom(std::move(src), std::move(tgt), std::move(m));
}

GroupHom GroupHom::identity(FgGroup g) {
  IntMat m = IntMat::identity(g.ngens());
  return GroupHom(g, g, std::move(m));
}

GroupHom GroupHom::mult_by(const FgGroup& g, const Int& c) {
  IntMat m(g.ngens(), g.ngens());
  for (int i = 0; i < g.ngens(); ++i) m.at(i, i) = c;
  return GroupHom(g, g, std::move(m));
}

GroupHom GroupHom::compose(const GroupHom& inner) const {
  return GroupHom(inner.src_, tgt_, m_ * inner.m_);
}

GroupHom GroupHom::direct_sum(const GroupHom& o) const {
  FgGroup s = lin::direct_sum(src_, o.src_);
  FgGroup t = lin::direct_sum(tgt_, o.tgt_);
  IntMat m(t.ngens(), s.ngens());
  for (int i = 0; i < m_.rows(); ++i)
    for (int j = 0; j < m_.cols(); ++j) m.at(i, j) = m_.at(i, j);
  for (int i = 0; i < o.m_.rows(); ++i)
    for (int j = 0; j < o.m_.cols(); ++j) m.at(m_.rows() + i, m_.cols() + j) = o.m_.at(i, j);
  return GroupHom(std::move(s), std::move(t), std::move(m));
}

bool GroupHom::is_zero() const {
  for (int j = 0; j < m_.cols(); ++j)
    if (!tgt_.is_zero(m_.col(j))) return false;
  return true;
}

IntMat GroupHom::kernel_generators() const { return preimage_lattice(m_, tgt_.rels()); }

FgGroup GroupHom::kernel_group() const {
  IntMat l = kernel_generators();
  return FgGroup(l.cols(), preimage_lattice(l, src_.rels()));
}

FgGroup GroupHom::image_group() const {
  return FgGroup(src_.ngens(), preimage_lattice(m_, tgt_.rels()));
}

FgGroup GroupHom::cokernel_group() const {
  return FgGroup(tgt_.ngens(), tgt_.rels().hstack(m_));
}

bool GroupHom::injective() const { return kernel_group().trivial(); }
bool GroupHom::surjective() const { return cokernel_group().trivial(); }

FgGroup direct_sum(const FgGroup& a, const FgGroup& b) {
  int n = a.ngens() + b.ngens();
  IntMat rels(n, a.rels().cols() + b.rels().cols());
  for (int i = 0; i < a.ngens(); ++i)
    for (int j = 0; j < a.rels().cols(); ++j) rels.at(i, j) = a.rels().at(i, j);
  for (int i = 0; i < b.ngens(); ++i)
    for (int j = 0; j < b.rels().cols(); ++j)
      rels.at(a.ngens() + i, a.rels().cols() + j) = b.rels().at(i, j);
  return FgGroup(n, std::move(rels));
}

ExactnessReport exactness_at(const GroupHom& f, const GroupHom& g) {
  if (f.tgt().ngens() != g.src().ngens() || !(f.tgt().rels() == g.src().rels()))
    throw std::invalid_argument("exactness_at: middle groups do not match");
  ExactnessReport rep;
  IntMat comp = g.matrix() * f.matrix();
  for (int j = 0; j < comp.cols(); ++j)
    if (!g.tgt().is_zero(comp.col(j))) {
      rep.witness = f.matrix().col(j);
      return rep;  // composite nonzero at image of j-th source generator
    }
  rep.composite_zero = true;

  // homology = ker(g) / (im(f) + relations of the middle group), presented on
  // the kernel lattice columns; the relation lattice {y : l*y in span(denom)}
  // also absorbs integer dependencies among those columns
  IntMat l = preimage_lattice(g.matrix(), g.tgt().rels());
  IntMat denom = f.matrix().hstack(f.tgt().rels());
  rep.homology = FgGroup(l.cols(), preimage_lattice(l, denom));
  rep.exact = rep.homology.trivial();
  if (!rep.exact) {
    std::vector<Int> hz = rep.homology.canon_generator(0);
    rep.witness = mat_vec(l, hz);  // middle-group coordinates of an offending cycle
  }
  return rep;
}

}  // namespace exl::lin
