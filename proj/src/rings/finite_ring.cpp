#include "excision/rings.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "excision/error.hpp"

namespace exl::rings {

using lin::lattice_contains;
using lin::mat_vec;
using lin::preimage_lattice;
using lin::solve_int;
using lin::vec_is_zero;

FiniteRing::FiniteRing(std::vector<Int> dims, std::vector<std::vector<Coords>> table, Coords unit,
                       std::vector<std::string> gen_names, std::string name)
    : dims_(std::move(dims)),
      table_(std::move(table)),
      unit_(std::move(unit)),
      gen_names_(std::move(gen_names)),
      name_(std::move(name)) {
  int n = ngens();
  if (int(table_.size()) != n) throw InvalidObjectError("ring table has wrong row count");
  for (auto& row : table_) {
    if (int(row.size()) != n) throw InvalidObjectError("ring table has wrong column count");
    for (auto& c : row) c = reduce(std::move(c));
  }
  unit_ = reduce(std::move(unit_));
  if (gen_names_.empty()) {
    for (int i = 0; i < n; ++i) gen_names_.push_back("g" + std::to_string(i));
  }
  if (int(gen_names_.size()) != n) throw InvalidObjectError("ring generator name count mismatch");
  verify();
  commutative_ = true;
  for (int i = 0; i < n && commutative_; ++i)
    for (int j = 0; j < i && commutative_; ++j)
      if (table_[i][j] != table_[j][i]) commutative_ = false;
}

void FiniteRing::verify() const {
  int n = ngens();
  for (const Int& d : dims_)
    if (d < 2) throw InvalidObjectError("additive generator order must be >= 2");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (int(table_[i][j].size()) != n) throw InvalidObjectError("ring table entry size mismatch");
      // bilinearity must respect the additive orders of both factors
      if (!is_zero(reduce(lin::vec_scale(dims_[i], table_[i][j]))))
        throw InvalidObjectError("ring table not compatible with additive order of generator " +
                                 std::to_string(i));
      if (!is_zero(reduce(lin::vec_scale(dims_[j], table_[i][j]))))
        throw InvalidObjectError("ring table not compatible with additive order of generator " +
                                 std::to_string(j));
    }
  for (int j = 0; j < n; ++j) {
    if (!equal(mul(unit_, gen(j)), gen(j)) || !equal(mul(gen(j), unit_), gen(j)))
      throw InvalidObjectError("unit law fails on generator " + std::to_string(j));
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (!equal(mul(table_[i][j], gen(k)), mul(gen(i), table_[j][k])))
          throw InvalidObjectError("multiplication not associative at generators (" +
                                   std::to_string(i) + "," + std::to_string(j) + "," +
                                   std::to_string(k) + ")");
}

Int FiniteRing::order() const {
  Int o = 1;
  for (const Int& d : dims_) o *= d;
  return o;
}

Coords FiniteRing::gen(int i) const {
  Coords c(ngens(), 0);
  c[i] = 1;
  return c;
}

Coords FiniteRing::reduce(Coords x) const {
  if (int(x.size()) != ngens()) throw std::invalid_argument("element coordinate size mismatch");
  for (int i = 0; i < ngens(); ++i)
    mpz_fdiv_r(x[i].get_mpz_t(), x[i].get_mpz_t(), dims_[i].get_mpz_t());
  return x;
}

Coords FiniteRing::add(const Coords& a, const Coords& b) const { return reduce(lin::vec_add(a, b)); }
Coords FiniteRing::sub(const Coords& a, const Coords& b) const { return reduce(lin::vec_sub(a, b)); }
Coords FiniteRing::neg(const Coords& a) const { return reduce(lin::vec_scale(-1, a)); }

Coords FiniteRing::mul(const Coords& a, const Coords& b) const {
  Coords acc(ngens(), 0);
  for (int i = 0; i < ngens(); ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < ngens(); ++j) {
      if (b[j] == 0) continue;
      Int c = a[i] * b[j];
      const Coords& t = table_[i][j];
      for (int k = 0; k < ngens(); ++k)
        if (t[k] != 0) acc[k] += c * t[k];
    }
  }
  return reduce(std::move(acc));
}

Coords FiniteRing::power(Coords a, Int e) const {
  Coords r = unit_;
  a = reduce(std::move(a));
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

Coords FiniteRing::from_int(const Int& n) const { return reduce(lin::vec_scale(n, unit_)); }

bool FiniteRing::is_zero(const Coords& a) const { return vec_is_zero(reduce(a)); }
bool FiniteRing::equal(const Coords& a, const Coords& b) const { return reduce(a) == reduce(b); }

IntMat FiniteRing::left_mult_matrix(const Coords& a) const {
  IntMat m(ngens(), ngens());
  for (int j = 0; j < ngens(); ++j) m.set_col(j, mul(a, gen(j)));
  return m;
}

IntMat FiniteRing::right_mult_matrix(const Coords& a) const {
  IntMat m(ngens(), ngens());
  for (int j = 0; j < ngens(); ++j) m.set_col(j, mul(gen(j), a));
  return m;
}

std::optional<Coords> FiniteRing::inverse(const Coords& a) const {
  if (ngens() == 0) return Coords{};  // zero ring: 0 = 1 is invertible
  // solve a*x = 1 additively, then check x*a = 1 (finite rings are
  // Dedekind-finite, so this also certifies two-sidedness)
  IntMat sys = left_mult_matrix(a).hstack(additive_rels());
  auto sol = solve_int(sys, unit_);
  if (!sol) return std::nullopt;
  Coords x(sol->begin(), sol->begin() + ngens());
  x = reduce(std::move(x));
  if (!equal(mul(x, a), unit_)) return std::nullopt;
  return x;
}

bool FiniteRing::is_nilpotent(const Coords& a) const {
  Coords x = reduce(a);
  Int bound = order();
  for (Int k = 1; k <= bound; k *= 2) {
    if (vec_is_zero(x)) return true;
    x = mul(x, x);
  }
  return vec_is_zero(x);
}

std::vector<Coords> FiniteRing::all_elements(size_t cap) const {
  if (order() > Int(static_cast<unsigned long>(cap)))
    throw LimitError("ring of order " + order().get_str() + " exceeds enumeration cap " +
                     std::to_string(cap));
  std::vector<Coords> out;
  Coords x(ngens(), 0);
  for (;;) {
    out.push_back(x);
    int k = 0;
    while (k < ngens()) {
      x[k] += 1;
      if (x[k] < dims_[k]) break;
      x[k] = 0;
      ++k;
    }
    if (k == ngens()) break;
  }
  return out;
}

FgGroup FiniteRing::additive_group() const { return FgGroup(ngens(), additive_rels()); }

IntMat FiniteRing::additive_rels() const {
  IntMat d(ngens(), ngens());
  for (int i = 0; i < ngens(); ++i) d.at(i, i) = dims_[i];
  return d;
}

std::string FiniteRing::elem_str(const Coords& a) const {
  Coords r = reduce(a);
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < ngens(); ++i) {
    if (r[i] == 0) continue;
    if (!first) os << " + ";
    first = false;
    if (gen_names_[i] == "1")
      os << r[i].get_str();
    else if (r[i] == 1)
      os << gen_names_[i];
    else
      os << r[i].get_str() << "*" << gen_names_[i];
  }
  if (first) return "0";
  return os.str();
}

std::string FiniteRing::canonical_serialization() const {
  std::ostringstream os;
  os << "finite-ring{dims=[";
  for (int i = 0; i < ngens(); ++i) os << (i ? "," : "") << dims_[i].get_str();
  os << "];unit=[";
  for (int i = 0; i < ngens(); ++i) os << (i ? "," : "") << unit_[i].get_str();
  os << "];table=[";
  for (int i = 0; i < ngens(); ++i)
    for (int j = 0; j < ngens(); ++j) {
      os << (i || j ? ";" : "") << "[";
      for (int k = 0; k < ngens(); ++k) os << (k ? "," : "") << table_[i][j][k].get_str();
      os << "]";
    }
  os << "]}";
  return os.str();
}

RingPtr make_ring(FiniteRing r) { return std::make_shared<const FiniteRing>(std::move(r)); }

RingPtr make_zmod(const Int& n) {
  if (n < 2) throw InvalidObjectError("Z/N requires N >= 2");
  FiniteRing r({n}, {{{Int(1)}}}, {Int(1)}, {"1"}, "Z/" + n.get_str());
  return make_ring(std::move(r));
}

// ---- RingHom ---------------------------------------------------------------

RingHom::RingHom(RingPtr src, RingPtr tgt, IntMat m, std::string name)
    : src_(std::move(src)), tgt_(std::move(tgt)), m_(std::move(m)), name_(std::move(name)) {
  if (m_.rows() != tgt_->ngens() || m_.cols() != src_->ngens())
    throw InvalidObjectError("hom matrix shape mismatch");
  for (int j = 0; j < m_.cols(); ++j) m_.set_col(j, tgt_->reduce(m_.col(j)));
  if (!lattice_contains(tgt_->additive_rels(), m_ * src_->additive_rels()))
    throw InvalidObjectError("hom not additive: generator orders not respected");
  if (!tgt_->equal(apply(src_->unit()), tgt_->unit()))
    throw InvalidObjectError("hom does not preserve the unit");
  for (int i = 0; i < src_->ngens(); ++i)
    for (int j = 0; j < src_->ngens(); ++j)
      if (!tgt_->equal(apply(src_->mul(src_->gen(i), src_->gen(j))),
                       tgt_->mul(apply(src_->gen(i)), apply(src_->gen(j)))))
        throw InvalidObjectError("hom not multiplicative on generators (" + std::to_string(i) +
                                 "," + std::to_string(j) + ")");
}

RingHom RingHom::identity(RingPtr r) {
  IntMat m = IntMat::identity(r->ngens());
  return RingHom(r, r, std::move(m), "id");
}

RingHom RingHom::compose(const RingHom& inner) const {
  return RingHom(inner.src_, tgt_, m_ * inner.m_,
                 name_.empty() || inner.name_.empty() ? "" : name_ + "." + inner.name_);
}

bool RingHom::is_surjective() const {
  return FgGroup(tgt_->ngens(), tgt_->additive_rels().hstack(m_)).trivial();
}

bool RingHom::is_injective() const {
  IntMat ker = preimage_lattice(m_, tgt_->additive_rels());
  return lattice_contains(src_->additive_rels(), ker);
}

std::vector<Coords> RingHom::kernel_generators() const {
  IntMat ker = preimage_lattice(m_, tgt_->additive_rels());
  std::vector<Coords> out;
  for (int j = 0; j < ker.cols(); ++j) {
    Coords c = src_->reduce(ker.col(j));
    if (!vec_is_zero(c)) out.push_back(std::move(c));
  }
  return out;
}

lin::GroupHom RingHom::additive_hom() const {
  return lin::GroupHom(src_->additive_group(), tgt_->additive_group(), m_);
}

RingHom hom_from_gen_images(RingPtr src, RingPtr tgt, const std::vector<Coords>& images,
                            std::string name) {
  if (int(images.size()) != src->ngens())
    throw InvalidObjectError("hom needs one image per additive generator");
  IntMat m(tgt->ngens(), src->ngens());
  for (int j = 0; j < src->ngens(); ++j) m.set_col(j, images[j]);
  return RingHom(std::move(src), std::move(tgt), std::move(m), std::move(name));
}

RingHom induced_hom(const RingHom& p, const RingHom& q, std::string name) {
  if (p.src().get() != q.src().get())
    throw InvalidObjectError("induced hom needs two maps out of the same ring");
  if (!p.is_surjective())
    throw InvalidObjectError("induced hom needs a surjective projection");
  const RingPtr& mid = p.tgt();
  const RingPtr& tgt = q.tgt();
  IntMat ker = preimage_lattice(p.matrix(), mid->additive_rels());
  if (!lattice_contains(tgt->additive_rels(), q.matrix() * ker))
    throw InvalidObjectError("induced hom: kernel of the projection survives in the target");
  IntMat m(tgt->ngens(), mid->ngens());
  IntMat have = p.matrix().hstack(mid->additive_rels());
  for (int u = 0; u < mid->ngens(); ++u) {
    auto sol = lin::solve_int(have, mid->gen(u));
    if (!sol) throw std::logic_error("induced hom: lift through a surjection failed");
    Coords x(sol->begin(), sol->begin() + p.src()->ngens());
    m.set_col(u, q.apply(x));
  }
  return RingHom(mid, tgt, std::move(m), std::move(name));
}

// ---- Subgroup / Ideal ------------------------------------------------------

Subgroup::Subgroup(RingPtr ring, const IntMat& lattice_cols)
    : ring_(std::move(ring)),
      lattice_(lattice_cols),
      abstract_(lattice_cols.cols(), preimage_lattice(lattice_cols, ring_->additive_rels())) {
  if (lattice_.rows() != ring_->ngens() && lattice_.cols() != 0)
    throw InvalidObjectError("subgroup lattice has wrong ambient dimension");
  if (lattice_.cols() == 0) lattice_ = IntMat(ring_->ngens(), 0);
  if (!abstract_.finite()) throw std::logic_error("subgroup of finite ring must be finite");
  for (int k = 0; k < abstract_.canon_dim(); ++k) {
    basis_.push_back(ring_->reduce(mat_vec(lattice_, abstract_.canon_generator(k))));
    orders_.push_back(abstract_.invariant_factors()[k]);
  }
}

Int Subgroup::order() const { return abstract_.order(); }

bool Subgroup::contains(const Coords& x) const {
  IntMat sys = lattice_.hstack(ring_->additive_rels());
  return solve_int(sys, x).has_value();
}

bool Subgroup::contains_subgroup(const Subgroup& o) const {
  for (const auto& b : o.basis_)
    if (!contains(b)) return false;
  return true;
}

std::vector<Int> Subgroup::coords_of(const Coords& x) const {
  IntMat sys = lattice_.hstack(ring_->additive_rels());
  auto sol = solve_int(sys, x);
  if (!sol) throw std::invalid_argument("element not in subgroup");
  std::vector<Int> z(sol->begin(), sol->begin() + lattice_.cols());
  return abstract_.canon(z);
}

Coords Subgroup::elem_of(const std::vector<Int>& c) const {
  if (int(c.size()) != rank()) throw std::invalid_argument("subgroup coordinate size mismatch");
  Coords acc(ring_->ngens(), 0);
  for (int k = 0; k < rank(); ++k) acc = lin::vec_add(acc, lin::vec_scale(c[k], basis_[k]));
  return ring_->reduce(acc);
}

bool Ideal::is_square_zero() const {
  for (const auto& a : sub.basis())
    for (const auto& b : sub.basis())
      if (!sub.ring()->is_zero(sub.ring()->mul(a, b))) return false;
  return true;
}

bool Ideal::is_nilpotent() const {
  // iterate I^(2^k) until stable or zero
  std::vector<Coords> cur = sub.basis();
  for (int round = 0; round < 64; ++round) {
    if (cur.empty()) return true;
    std::vector<Coords> next;
    for (const auto& a : cur)
      for (const auto& b : cur) {
        Coords p = sub.ring()->mul(a, b);
        if (!sub.ring()->is_zero(p)) next.push_back(std::move(p));
      }
    if (next.empty()) return true;
    IntMat curm = IntMat::from_cols(std::vector<std::vector<Int>>(cur.begin(), cur.end()))
                      .hstack(sub.ring()->additive_rels());
    IntMat nextm = IntMat::from_cols(std::vector<std::vector<Int>>(next.begin(), next.end()));
    if (lattice_contains(nextm.hstack(sub.ring()->additive_rels()), curm))
      return false;  // I^2 = I != 0
    cur = std::move(next);
  }
  return false;
}

Ideal ideal_from_generators(RingPtr r, const std::vector<Coords>& gens) {
  std::vector<Coords> cols;
  for (const auto& g : gens) {
    Coords c = r->reduce(g);
    if (!vec_is_zero(c)) cols.push_back(std::move(c));
  }
  // close under multiplication by ring generators on both sides
  for (size_t head = 0; head < cols.size(); ++head) {
    for (int u = 0; u < r->ngens(); ++u) {
      for (Coords p : {r->mul(r->gen(u), cols[head]), r->mul(cols[head], r->gen(u))}) {
        if (vec_is_zero(p)) continue;
        IntMat have = IntMat::from_cols(std::vector<std::vector<Int>>(cols.begin(), cols.end()))
                          .hstack(r->additive_rels());
        if (!solve_int(have, p).has_value()) cols.push_back(std::move(p));
      }
    }
  }
  IntMat lattice = cols.empty()
                       ? IntMat(r->ngens(), 0)
                       : IntMat::from_cols(std::vector<std::vector<Int>>(cols.begin(), cols.end()));
  return Ideal{Subgroup(r, lattice), gens};
}

Ideal kernel_ideal(const RingHom& f) {
  IntMat ker = preimage_lattice(f.matrix(), f.tgt()->additive_rels());
  Subgroup s(f.src(), ker);
  return Ideal{s, s.basis()};
}

Ideal jacobson_radical(RingPtr r) {
  std::vector<Coords> members;
  if (r->commutative()) {
    for (const auto& x : r->all_elements())
      if (r->is_nilpotent(x) && !vec_is_zero(x)) members.push_back(x);
  } else {
    if (r->order() > 4096)
      throw LimitError("Jacobson radical scan capped at order 4096 for noncommutative rings");
    auto elems = r->all_elements();
    for (const auto& x : elems) {
      if (vec_is_zero(x)) continue;
      bool in_radical = true;
      for (const auto& y : elems) {
        Coords t = r->sub(r->unit(), r->mul(y, x));
        if (!r->is_unit(t)) {
          in_radical = false;
          break;
        }
      }
      if (in_radical) members.push_back(x);
    }
  }
  IntMat lattice = members.empty()
                       ? IntMat(r->ngens(), 0)
                       : IntMat::from_cols(std::vector<std::vector<Int>>(members.begin(), members.end()));
  Subgroup s(r, lattice);
  return Ideal{s, s.basis()};
}

std::vector<Coords> idempotents(RingPtr r, size_t cap) {
  std::vector<Coords> out;
  for (const auto& x : r->all_elements(cap))
    if (r->is_idempotent(x)) out.push_back(x);
  return out;
}

std::vector<Coords> primitive_idempotents(RingPtr r, size_t cap) {
  if (!r->commutative())
    throw UnsupportedError("primitive idempotent decomposition implemented for commutative rings");
  std::vector<Coords> idem = idempotents(r, cap);
  std::vector<Coords> atoms;
  for (const auto& e : idem) {
    if (vec_is_zero(e)) continue;
    bool primitive = true;
    for (const auto& f : idem) {
      if (vec_is_zero(f) || f == e) continue;
      if (r->equal(r->mul(f, e), f)) {  // f <= e, f != 0, f != e
        primitive = false;
        break;
      }
    }
    if (primitive) atoms.push_back(e);
  }
  // sanity: atoms are orthogonal and sum to 1
  Coords sum = r->zero();
  for (const auto& e : atoms) sum = r->add(sum, e);
  if (!r->equal(sum, r->unit()))
    throw std::logic_error("primitive idempotents do not sum to 1");
  for (size_t i = 0; i < atoms.size(); ++i)
    for (size_t j = 0; j < i; ++j)
      if (!r->is_zero(r->mul(atoms[i], atoms[j])))
        throw std::logic_error("primitive idempotents not orthogonal");
  return atoms;
}

std::vector<Coords> unit_elements(RingPtr r, size_t cap) {
  std::vector<Coords> out;
  for (const auto& x : r->all_elements(cap))
    if (r->is_unit(x)) out.push_back(x);
  return out;
}

// ---- constructions ---------------------------------------------------------

QuotientRing quotient_ring(RingPtr r, const Ideal& ideal, std::string name) {
  if (ideal.sub.ring().get() != r.get())
    throw std::invalid_argument("ideal does not live in the given ring");
  FgGroup q(r->ngens(), r->additive_rels().hstack(ideal.sub.lattice()));
  int n = q.canon_dim();
  std::vector<Coords> lifts;
  std::vector<Int> dims;
  std::vector<std::string> names;
  for (int k = 0; k < n; ++k) {
    lifts.push_back(r->reduce(q.canon_generator(k)));
    dims.push_back(q.invariant_factors()[k]);
    names.push_back("[" + r->elem_str(lifts.back()) + "]");
  }
  std::vector<std::vector<Coords>> table(n, std::vector<Coords>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) table[i][j] = q.canon(r->mul(lifts[i], lifts[j]));
  Coords unit = q.canon(r->unit());
  RingPtr qr = make_ring(FiniteRing(dims, table, unit, names,
                                    name.empty() ? r->name() + "/I" : std::move(name)));
  IntMat proj(n, r->ngens());
  for (int j = 0; j < r->ngens(); ++j) {
    std::vector<Int> e(r->ngens(), 0);
    e[j] = 1;
    proj.set_col(j, q.canon(e));
  }
  RingHom p(r, qr, std::move(proj), "proj");
  return QuotientRing{qr, std::move(p)};
}

ProductRing product_ring(RingPtr a, RingPtr b) {
  int na = a->ngens(), nb = b->ngens(), n = na + nb;
  std::vector<Int> dims = a->dims();
  dims.insert(dims.end(), b->dims().begin(), b->dims().end());
  auto embed = [&](const Coords& x, const Coords& y) {
    Coords c(n, 0);
    for (int i = 0; i < na; ++i) c[i] = x[i];
    for (int i = 0; i < nb; ++i) c[na + i] = y[i];
    return c;
  };
  std::vector<std::vector<Coords>> table(n, std::vector<Coords>(n, Coords(n, 0)));
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < na; ++j) table[i][j] = embed(a->mul(a->gen(i), a->gen(j)), b->zero());
  for (int i = 0; i < nb; ++i)
    for (int j = 0; j < nb; ++j) table[na + i][na + j] = embed(a->zero(), b->mul(b->gen(i), b->gen(j)));
  std::vector<std::string> names;
  for (int i = 0; i < na; ++i) names.push_back("(" + a->gen_names()[i] + ",0)");
  for (int i = 0; i < nb; ++i) names.push_back("(0," + b->gen_names()[i] + ")");
  RingPtr p = make_ring(FiniteRing(dims, table, embed(a->unit(), b->unit()), names,
                                   a->name() + " x " + b->name()));
  IntMat pa(na, n), pb(nb, n);
  for (int i = 0; i < na; ++i) pa.at(i, i) = 1;
  for (int i = 0; i < nb; ++i) pb.at(i, na + i) = 1;
  return ProductRing{p, RingHom(p, a, std::move(pa), "pr1"), RingHom(p, b, std::move(pb), "pr2")};
}

FiberProduct fiber_product_ring(const RingHom& f, const RingHom& g) {
  if (f.tgt().get() != g.tgt().get())
    throw std::invalid_argument("fiber product needs homs into the same ring");
  if (!g.is_surjective())
    throw InvalidObjectError("fiber product corner map B -> B' must be surjective");
  RingPtr ap = f.src(), b = g.src(), bp = f.tgt();
  ProductRing amb = product_ring(ap, b);
  // matching condition f(a') - g(b) = 0 in B'
  IntMat cond = f.matrix().hstack(-g.matrix());
  IntMat lattice = preimage_lattice(cond, bp->additive_rels());
  Subgroup s(amb.ring, lattice);
  int n = s.rank();
  std::vector<std::vector<Coords>> table(n, std::vector<Coords>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      table[i][j] = s.coords_of(amb.ring->mul(s.basis()[i], s.basis()[j]));
  Coords unit = s.coords_of(amb.ring->unit());
  std::vector<std::string> names;
  for (int k = 0; k < n; ++k) names.push_back("p" + std::to_string(k));
  RingPtr pr = make_ring(FiniteRing(s.basis_orders(), table, unit, names,
                                    ap->name() + " x_{" + bp->name() + "} " + b->name()));
  IntMat ma(ap->ngens(), n), mb(b->ngens(), n);
  for (int k = 0; k < n; ++k) {
    const Coords& e = s.basis()[k];
    for (int i = 0; i < ap->ngens(); ++i) ma.at(i, k) = e[i];
    for (int i = 0; i < b->ngens(); ++i) mb.at(i, k) = e[ap->ngens() + i];
  }
  return FiberProduct{pr, RingHom(pr, ap, std::move(ma), "pr1"), RingHom(pr, b, std::move(mb), "pr2")};
}

// ---- nonunital -------------------------------------------------------------

NonUnitalRing::NonUnitalRing(std::vector<Int> dims, std::vector<std::vector<Coords>> table,
                             std::vector<std::string> gen_names)
    : dims_(std::move(dims)), table_(std::move(table)), gen_names_(std::move(gen_names)) {
  int n = ngens();
  if (int(table_.size()) != n) throw InvalidObjectError("nonunital table has wrong row count");
  for (auto& row : table_) {
    if (int(row.size()) != n) throw InvalidObjectError("nonunital table has wrong column count");
    for (auto& c : row) c = reduce(std::move(c));
  }
  if (gen_names_.empty())
    for (int i = 0; i < n; ++i) gen_names_.push_back("h" + std::to_string(i));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (!lin::vec_is_zero(reduce(lin::vec_scale(dims_[i], table_[i][j]))) ||
          !lin::vec_is_zero(reduce(lin::vec_scale(dims_[j], table_[i][j]))))
        throw InvalidObjectError("nonunital table not compatible with additive orders");
    }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        Coords gi(n, 0), gk(n, 0);
        gi[i] = 1;
        gk[k] = 1;
        if (mul(table_[i][j], gk) != mul(gi, table_[j][k]))
          throw InvalidObjectError("nonunital multiplication not associative");
      }
}

Coords NonUnitalRing::reduce(Coords x) const {
  for (int i = 0; i < ngens(); ++i)
    mpz_fdiv_r(x[i].get_mpz_t(), x[i].get_mpz_t(), dims_[i].get_mpz_t());
  return x;
}

Coords NonUnitalRing::mul(const Coords& a, const Coords& b) const {
  Coords acc(ngens(), 0);
  for (int i = 0; i < ngens(); ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < ngens(); ++j) {
      if (b[j] == 0) continue;
      Int c = a[i] * b[j];
      for (int k = 0; k < ngens(); ++k)
        if (table_[i][j][k] != 0) acc[k] += c * table_[i][j][k];
    }
  }
  return reduce(std::move(acc));
}

NonUnitalRing ideal_as_nonunital(const Ideal& ideal) {
  const Subgroup& s = ideal.sub;
  int n = s.rank();
  std::vector<std::vector<Coords>> table(n, std::vector<Coords>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      table[i][j] = s.coords_of(s.ring()->mul(s.basis()[i], s.basis()[j]));
  std::vector<std::string> names;
  for (int k = 0; k < n; ++k) names.push_back("i" + std::to_string(k));
  return NonUnitalRing(s.basis_orders(), std::move(table), std::move(names));
}

BimoduleAction scalar_action(RingPtr k, const NonUnitalRing& i) {
  if (k->ngens() != 1 || k->unit() != Coords{Int(1)})
    throw UnsupportedError("scalar action requires the base to be generated by its unit");
  BimoduleAction a;
  a.left.push_back(IntMat::identity(i.ngens()));
  a.right.push_back(IntMat::identity(i.ngens()));
  return a;
}

Unitalization unitalization(RingPtr k, const NonUnitalRing& i, const BimoduleAction& act) {
  int nk = k->ngens(), ni = i.ngens(), n = nk + ni;
  if (int(act.left.size()) != nk || int(act.right.size()) != nk)
    throw InvalidObjectError("incompatible bimodule action: need one matrix per base generator");
  std::vector<Int> dims = k->dims();
  dims.insert(dims.end(), i.dims().begin(), i.dims().end());
  auto embed_k = [&](const Coords& x) {
    Coords c(n, 0);
    for (int t = 0; t < nk; ++t) c[t] = x[t];
    return c;
  };
  auto embed_i = [&](const Coords& y) {
    Coords c(n, 0);
    for (int t = 0; t < ni; ++t) c[nk + t] = y[t];
    return c;
  };
  std::vector<std::vector<Coords>> table(n, std::vector<Coords>(n));
  for (int u = 0; u < nk; ++u)
    for (int v = 0; v < nk; ++v) table[u][v] = embed_k(k->mul(k->gen(u), k->gen(v)));
  for (int u = 0; u < nk; ++u)
    for (int w = 0; w < ni; ++w) {
      table[u][nk + w] = embed_i(act.left[u].col(w));
      table[nk + w][u] = embed_i(act.right[u].col(w));
    }
  for (int w = 0; w < ni; ++w)
    for (int z = 0; z < ni; ++z) {
      Coords gw(ni, 0), gz(ni, 0);
      gw[w] = 1;
      gz[z] = 1;
      table[nk + w][nk + z] = embed_i(i.mul(gw, gz));
    }
  std::vector<std::string> names = k->gen_names();
  names.insert(names.end(), i.gen_names().begin(), i.gen_names().end());
  RingPtr ring;
  try {
    ring = make_ring(FiniteRing(dims, table, embed_k(k->unit()), names,
                                k->name() + " |x I"));
  } catch (const InvalidObjectError& e) {
    throw InvalidObjectError(std::string("incompatible bimodule action: ") + e.what());
  }
  IntMat proj(nk, n);
  for (int t = 0; t < nk; ++t) proj.at(t, t) = 1;
  RingHom to_base(ring, k, std::move(proj), "aug");
  std::vector<Coords> ideal_gens;
  for (int w = 0; w < ni; ++w) ideal_gens.push_back(ring->gen(nk + w));
  return Unitalization{ring, std::move(to_base), std::move(ideal_gens)};
}

}  // namespace exl::rings
