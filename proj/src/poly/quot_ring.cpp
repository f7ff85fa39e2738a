#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

#include "excision/error.hpp"
#include "excision/poly.hpp"

namespace exl::poly {

PolyQuotRing::PolyQuotRing(Field k, std::vector<std::string> vars,
                           const std::vector<std::string>& rels, std::string name)
    : base_(std::make_shared<PolyRing>(std::move(k), std::move(vars))), name_(std::move(name)) {
  for (const std::string& r : rels) given_.push_back(base_->parse(r));
  gb_ = groebner(*base_, given_);
}

PolyQuotRing::PolyQuotRing(PolyRingPtr base, std::vector<Poly> rels, std::string name)
    : base_(std::move(base)), given_(std::move(rels)), name_(std::move(name)) {
  gb_ = groebner(*base_, given_);
}

Poly PolyQuotRing::reduce(Poly f) const { return normal_form(*base_, std::move(f), gb_); }

bool PolyQuotRing::is_zero(const Poly& f) const { return reduce(f).zero(); }

bool PolyQuotRing::equal(const Poly& a, const Poly& b) const { return is_zero(base_->sub(a, b)); }

Poly PolyQuotRing::parse(const std::string& text) const { return reduce(base_->parse(text)); }

std::string PolyQuotRing::str(const Poly& f) const { return base_->str(f); }

std::optional<long> PolyQuotRing::vec_dim(long cap) const {
  // standard monomials: not divisible by any Groebner lead; downward closed
  std::set<Mono> seen;
  std::deque<Mono> queue;
  Mono unit(size_t(base_->nvars()), 0);
  auto standard = [&](const Mono& m) {
    for (const Poly& g : gb_)
      if (mono_divides(g.lead().m, m)) return false;
    return true;
  };
  if (standard(unit)) {
    seen.insert(unit);
    queue.push_back(unit);
  }
  while (!queue.empty()) {
    Mono m = queue.front();
    queue.pop_front();
    for (int i = 0; i < base_->nvars(); ++i) {
      Mono next = m;
      ++next[size_t(i)];
      if (!standard(next) || !seen.insert(next).second) continue;
      if (long(seen.size()) > cap) return std::nullopt;
      queue.push_back(next);
    }
  }
  return long(seen.size());
}

std::string PolyQuotRing::canonical_serialization() const {
  std::ostringstream os;
  os << "polyquot;k=" << base_->field().str() << ";vars=";
  for (int i = 0; i < base_->nvars(); ++i) os << (i ? "," : "") << base_->vars()[size_t(i)];
  os << ";gb=";
  for (size_t i = 0; i < gb_.size(); ++i) os << (i ? "|" : "") << base_->str(gb_[i]);
  return os.str();
}

QuotPtr make_poly_ring(Field k, std::vector<std::string> vars, std::vector<std::string> rels,
                       std::string name) {
  return std::make_shared<PolyQuotRing>(std::move(k), std::move(vars), rels, std::move(name));
}

// ---- ideals -------------------------------------------------------------------

QIdeal ideal(QuotPtr a, std::vector<Poly> gens) {
  QIdeal out{std::move(a), {}};
  for (Poly& f : gens) {
    Poly r = out.ring->reduce(std::move(f));
    if (!r.zero()) out.gens.push_back(std::move(r));
  }
  return out;
}

namespace {

std::vector<Poly> lifted_gens(const QIdeal& i) {
  std::vector<Poly> out = i.gens;
  out.insert(out.end(), i.ring->gb().begin(), i.ring->gb().end());
  return out;
}

std::vector<Poly> lifted_gb(const QIdeal& i) { return groebner(*i.ring->base(), lifted_gens(i)); }

void require_same_ring(const QIdeal& i, const QIdeal& j) {
  if (i.ring != j.ring) throw InvalidObjectError("ideals live in different rings");
}

// replace the generators by the ring-reduced lifted Groebner basis
QIdeal normalized(QIdeal i) {
  std::vector<Poly> gb = lifted_gb(i);
  i.gens.clear();
  for (Poly& f : gb) {
    Poly r = i.ring->reduce(std::move(f));
    if (!r.zero()) i.gens.push_back(std::move(r));
  }
  return i;
}

}  // namespace

QIdeal ideal_sum(const QIdeal& i, const QIdeal& j) {
  require_same_ring(i, j);
  std::vector<Poly> gens = i.gens;
  gens.insert(gens.end(), j.gens.begin(), j.gens.end());
  return normalized(ideal(i.ring, std::move(gens)));
}

QIdeal ideal_product(const QIdeal& i, const QIdeal& j) {
  require_same_ring(i, j);
  std::vector<Poly> gens;
  for (const Poly& f : i.gens)
    for (const Poly& g : j.gens) gens.push_back(i.ring->base()->mul(f, g));
  return normalized(ideal(i.ring, std::move(gens)));
}

QIdeal ideal_power(const QIdeal& i, int n) {
  if (n < 0) throw InvalidObjectError("negative ideal power");
  QIdeal out = ideal(i.ring, {i.ring->base()->one()});
  for (int k = 0; k < n; ++k) out = ideal_product(out, i);
  return out;
}

QIdeal ideal_intersection(const QIdeal& i, const QIdeal& j) {
  require_same_ring(i, j);
  // h lies in both lifted ideals iff (h, -a, -b) is a syzygy of the columns
  // (1,1), (f_t, 0), (0, g_t); the first coordinates of the syzygies generate
  const PolyRing& r = *i.ring->base();
  std::vector<VPoly> cols;
  cols.push_back(VPoly{r.one(), r.one()});
  for (const Poly& f : lifted_gens(i)) cols.push_back(VPoly{f, r.zero()});
  for (const Poly& g : lifted_gens(j)) cols.push_back(VPoly{r.zero(), g});
  std::vector<Poly> gens;
  for (const VPoly& s : syzygies(r, cols, 2)) gens.push_back(s[0]);
  return normalized(ideal(i.ring, std::move(gens)));
}

bool ideal_contains(const QIdeal& i, const Poly& f) {
  return normal_form(*i.ring->base(), f, lifted_gb(i)).zero();
}

bool ideal_contains_ideal(const QIdeal& i, const QIdeal& j) {
  require_same_ring(i, j);
  std::vector<Poly> gb = lifted_gb(i);
  for (const Poly& g : j.gens)
    if (!normal_form(*i.ring->base(), g, gb).zero()) return false;
  return true;
}

bool ideal_equal(const QIdeal& i, const QIdeal& j) {
  return ideal_contains_ideal(i, j) && ideal_contains_ideal(j, i);
}

bool ideal_is_zero(const QIdeal& i) {
  for (const Poly& f : i.gens)
    if (!i.ring->is_zero(f)) return false;
  return true;
}

namespace {

// radical membership by the Rabinowitsch trick: f nilpotent in R/I iff
// 1 is in I + (1 - z f) after adjoining a fresh variable z
bool element_is_nilpotent(const QuotPtr& a, const Poly& f) {
  if (a->is_zero(f)) return true;
  const PolyRing& r = *a->base();
  int n = r.nvars();
  std::vector<std::string> vars = r.vars();
  vars.push_back("@z");
  PolyRing ext(r.field(), std::move(vars));
  auto embed = [&](const Poly& g) {
    Poly out;
    for (const Term& t : g.t) {
      Mono m = t.m;
      m.push_back(0);
      out.t.push_back(Term{std::move(m), t.c});
    }
    return out;
  };
  std::vector<Poly> gens;
  for (const Poly& g : a->gb()) gens.push_back(embed(g));
  gens.push_back(ext.sub(ext.one(), ext.mul(ext.var(n), embed(f))));
  std::vector<Poly> gb = groebner(ext, gens);
  return normal_form(ext, ext.one(), gb).zero();
}

}  // namespace

bool ideal_is_nilpotent(const QIdeal& i) {
  for (const Poly& f : i.gens)
    if (!element_is_nilpotent(i.ring, f)) return false;
  return true;
}

// ---- ring maps ------------------------------------------------------------------

namespace {

Poly substitute(const QHomData& h, const Poly& f) {
  const PolyRing& tr = *h.tgt->base();
  Poly out;
  for (const Term& t : f.t) {
    Poly val = tr.constant(t.c);
    for (size_t i = 0; i < t.m.size(); ++i)
      if (t.m[i] > 0) val = h.tgt->reduce(tr.mul(val, tr.power(h.images[i], t.m[i])));
    out = tr.add(out, val);
  }
  return h.tgt->reduce(out);
}

}  // namespace

QHomData poly_hom(QuotPtr src, QuotPtr tgt, std::vector<Poly> images, std::string name) {
  if (src->base()->field().p != tgt->base()->field().p)
    throw InvalidObjectError("ring map between different coefficient fields");
  if (int(images.size()) != src->base()->nvars())
    throw InvalidObjectError("ring map needs one image per source variable");
  QHomData h{std::move(src), std::move(tgt), std::move(images), std::move(name)};
  for (Poly& f : h.images) f = h.tgt->reduce(std::move(f));
  for (const Poly& r : h.src->given_rels()) {
    if (!substitute(h, r).zero())
      throw InvalidObjectError("ring map does not kill the relation " + h.src->base()->str(r));
  }
  return h;
}

QHomData poly_hom(QuotPtr src, QuotPtr tgt, const std::vector<std::string>& images,
                  std::string name) {
  std::vector<Poly> imgs;
  for (const std::string& s : images) imgs.push_back(tgt->base()->parse(s));
  return poly_hom(std::move(src), std::move(tgt), std::move(imgs), std::move(name));
}

Poly apply_hom(const QHomData& h, const Poly& f) { return substitute(h, f); }

QHomData compose(const QHomData& outer, const QHomData& inner) {
  if (inner.tgt != outer.src) throw InvalidObjectError("ring maps do not compose");
  std::vector<Poly> images;
  for (const Poly& f : inner.images) images.push_back(substitute(outer, f));
  std::string name = outer.name.empty() || inner.name.empty() ? std::string()
                                                              : outer.name + " o " + inner.name;
  return QHomData{inner.src, outer.tgt, std::move(images), std::move(name)};
}

namespace {

// graph ideal of h in k[s, t] with the target block s eliminated: Groebner
// elements without s give the kernel, and normal forms rewrite target
// elements into the image subalgebra when possible
struct GraphGB {
  std::shared_ptr<PolyRing> ext;
  int b = 0;  // target variable count, the eliminated prefix
  std::vector<Poly> gb;
};

GraphGB graph_gb(const QHomData& h) {
  const PolyRing& sr = *h.src->base();
  const PolyRing& tr = *h.tgt->base();
  int a = sr.nvars(), b = tr.nvars();
  std::vector<std::string> vars;
  for (int i = 0; i < b; ++i) vars.push_back("@s" + std::to_string(i));
  for (int i = 0; i < a; ++i) vars.push_back("@t" + std::to_string(i));
  GraphGB g;
  g.b = b;
  g.ext = std::make_shared<PolyRing>(sr.field(), std::move(vars), MonoOrder{b});
  auto embed_tgt = [&](const Poly& f) {
    Poly out;
    for (const Term& t : f.t) {
      Mono m = t.m;
      m.resize(size_t(a + b), 0);
      out.t.push_back(Term{std::move(m), t.c});
    }
    return out;
  };
  auto embed_src = [&](const Poly& f) {
    Poly out;
    for (const Term& t : f.t) {
      Mono m(size_t(b), 0);
      m.insert(m.end(), t.m.begin(), t.m.end());
      out.t.push_back(Term{std::move(m), t.c});
    }
    return out;
  };
  std::vector<Poly> gens;
  for (const Poly& f : h.tgt->gb()) gens.push_back(embed_tgt(f));
  for (const Poly& f : h.src->gb()) gens.push_back(embed_src(f));
  for (int i = 0; i < a; ++i)
    gens.push_back(g.ext->sub(g.ext->var(b + i), embed_tgt(h.images[size_t(i)])));
  g.gb = groebner(*g.ext, gens);
  return g;
}

bool src_only(const Poly& f, int b) {
  for (const Term& t : f.t)
    for (int i = 0; i < b; ++i)
      if (t.m[size_t(i)] > 0) return false;
  return true;
}

Poly strip_to_src(const Poly& f, int b) {
  Poly out;
  for (const Term& t : f.t) out.t.push_back(Term{Mono(t.m.begin() + b, t.m.end()), t.c});
  return out;
}

}  // namespace

bool is_surjective(const QHomData& h) {
  GraphGB g = graph_gb(h);
  for (int j = 0; j < g.b; ++j)
    if (!src_only(normal_form(*g.ext, g.ext->var(j), g.gb), g.b)) return false;
  return true;
}

QIdeal kernel_ideal(const QHomData& h) {
  GraphGB g = graph_gb(h);
  std::vector<Poly> gens;
  for (const Poly& f : g.gb)
    if (src_only(f, g.b)) gens.push_back(strip_to_src(f, g.b));
  return normalized(ideal(h.src, std::move(gens)));
}

// ---- squares ---------------------------------------------------------------------

PolySquare poly_square(QHomData f, QHomData g, QHomData fp, QHomData gp, std::string name) {
  if (f.src != g.src || fp.src != f.tgt || gp.src != g.tgt || fp.tgt != gp.tgt)
    throw InvalidObjectError("square maps do not share the required endpoints");
  QHomData top = compose(fp, f), bottom = compose(gp, g);
  for (size_t i = 0; i < top.images.size(); ++i)
    if (!fp.tgt->equal(top.images[i], bottom.images[i]))
      throw InvalidObjectError("square does not commute");
  return PolySquare{std::move(f), std::move(g), std::move(fp), std::move(gp), std::move(name)};
}

PolyVerdict is_pullback(const PolySquare& sq) {
  if (!is_surjective(sq.gp)) throw UnsupportedError("kernel criterion needs B -> B' surjective");
  if (!is_surjective(sq.f)) return {false, "A -> A' is not surjective"};

  QIdeal kf = kernel_ideal(sq.f);
  QIdeal kg = kernel_ideal(sq.g);
  QIdeal meet = ideal_intersection(kf, kg);
  if (!ideal_is_zero(meet))
    return {false, "ker(A -> A') meets ker(A -> B) in the nonzero element " +
                       sq.f.src->str(meet.gens.front())};

  // image of ker f generates ker gp as an ideal: necessary for the restriction
  // ker(A -> A') -> ker(B -> B') to be onto
  QIdeal kgp = kernel_ideal(sq.gp);
  std::vector<Poly> image_gens;
  for (const Poly& k : kf.gens) image_gens.push_back(apply_hom(sq.g, k));
  QIdeal image_ideal = ideal(sq.g.tgt, image_gens);
  for (const Poly& u : kgp.gens)
    if (!ideal_contains(image_ideal, u))
      return {false, "ker(B -> B') is not generated by the image of ker(A -> A'); " +
                         sq.g.tgt->str(u) + " is missing"};

  // the generator test certifies the whole kernel only when the image of
  // ker f is closed under multiplication by B
  if (ideal_is_zero(kgp))
    return {true, "A -> A' is surjective and ker(A -> A') meets ker(A -> B) trivially; "
                  "ker(B -> B') vanishes"};
  if (is_surjective(sq.g))
    return {true,
            "A -> A' is surjective, the kernels meet trivially, and ker(A -> A') "
            "maps onto ker(B -> B') along the surjection A -> B"};
  throw UnsupportedError(
      "pullback test undecided: cannot certify that ker(A -> A') covers all of ker(B -> B') "
      "when A -> B is not surjective");
}

PolyVerdict is_milnor(const PolySquare& sq) {
  PolyVerdict pb = is_pullback(sq);
  if (!pb.holds) return {false, "not a pullback: " + pb.evidence};
  return {true, "pullback square with B -> B' surjective"};
}

}  // namespace exl::poly
