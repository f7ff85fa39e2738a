#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "excision/error.hpp"
#include "excision/poly.hpp"

namespace exl::poly {

Rat Field::reduce(Rat c) const {
  if (p == 0) return c;
  // representative in [0, p) with denominator inverted mod p
  Int den = c.get_den();
  Int num = c.get_num() % p;
  if (num < 0) num += p;
  if (den != 1) {
    Int inv_den;
    if (mpz_invert(inv_den.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t()) == 0)
      throw InvalidObjectError("denominator not invertible modulo " + p.get_str());
    num = (num * inv_den) % p;
  }
  return Rat(num);
}

Rat Field::inv(const Rat& c) const {
  Rat r = reduce(c);
  if (r == 0) throw InvalidObjectError("division by zero in the coefficient field");
  if (p == 0) return 1 / r;
  Int inv_num;
  Int num = r.get_num();
  mpz_invert(inv_num.get_mpz_t(), num.get_mpz_t(), p.get_mpz_t());
  return Rat(inv_num);
}

bool Field::equal(const Rat& a, const Rat& b) const { return reduce(a) == reduce(b); }

std::string Field::str() const { return p == 0 ? "Q" : "F_" + p.get_str(); }

Field rationals() { return Field{0}; }

Field prime_field(const Int& p) {
  if (p < 2 || mpz_probab_prime_p(p.get_mpz_t(), 25) == 0)
    throw InvalidObjectError("coefficient modulus " + p.get_str() + " is not prime");
  return Field{p};
}

int total_degree(const Mono& m) {
  int d = 0;
  for (int e : m) d += e;
  return d;
}

bool mono_divides(const Mono& a, const Mono& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Mono mono_mul(const Mono& a, const Mono& b) {
  Mono c(a.size());
  for (size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  return c;
}

Mono mono_quot(const Mono& b, const Mono& a) {
  Mono c(a.size());
  for (size_t i = 0; i < a.size(); ++i) c[i] = b[i] - a[i];
  return c;
}

Mono mono_lcm(const Mono& a, const Mono& b) {
  Mono c(a.size());
  for (size_t i = 0; i < a.size(); ++i) c[i] = std::max(a[i], b[i]);
  return c;
}

bool mono_equal(const Mono& a, const Mono& b) { return a == b; }

namespace {

// -1, 0, 1 for the degrevlex comparison restricted to indices [lo, hi)
int drl_cmp(const Mono& a, const Mono& b, size_t lo, size_t hi) {
  int da = 0, db = 0;
  for (size_t i = lo; i < hi; ++i) {
    da += a[i];
    db += b[i];
  }
  if (da != db) return da < db ? -1 : 1;
  for (size_t i = hi; i > lo; --i) {
    if (a[i - 1] != b[i - 1]) return a[i - 1] > b[i - 1] ? -1 : 1;
  }
  return 0;
}

}  // namespace

bool degrevlex_less(const Mono& a, const Mono& b) { return drl_cmp(a, b, 0, a.size()) < 0; }

bool MonoOrder::less(const Mono& a, const Mono& b) const {
  if (elim > 0) {
    int c = drl_cmp(a, b, 0, size_t(elim));
    if (c != 0) return c < 0;
    return drl_cmp(a, b, size_t(elim), a.size()) < 0;
  }
  return drl_cmp(a, b, 0, a.size()) < 0;
}

int Poly::degree() const {
  int d = -1;
  for (const Term& x : t) d = std::max(d, total_degree(x.m));
  return d;
}

PolyRing::PolyRing(Field k, std::vector<std::string> vars, MonoOrder order)
    : k_(std::move(k)), vars_(std::move(vars)), order_(order) {
  std::set<std::string> seen;
  for (const std::string& v : vars_) {
    if (v.empty()) throw InvalidObjectError("empty variable name");
    if (!seen.insert(v).second) throw InvalidObjectError("duplicate variable " + v);
  }
  if (order_.elim < 0 || order_.elim > nvars())
    throw InvalidObjectError("elimination block exceeds the variable count");
}

Poly PolyRing::constant(Rat c) const { return monomial(Mono(vars_.size(), 0), std::move(c)); }

Poly PolyRing::var(int i) const {
  Mono m(vars_.size(), 0);
  m.at(size_t(i)) = 1;
  return monomial(std::move(m), 1);
}

Poly PolyRing::monomial(Mono m, Rat c) const {
  if (m.size() != vars_.size()) throw InvalidObjectError("monomial arity mismatch");
  c = k_.reduce(std::move(c));
  if (c == 0) return {};
  return Poly{{Term{std::move(m), std::move(c)}}};
}

Poly PolyRing::add(const Poly& a, const Poly& b) const {
  // merge of two strictly descending term lists
  Poly out;
  out.t.reserve(a.t.size() + b.t.size());
  size_t i = 0, j = 0;
  while (i < a.t.size() || j < b.t.size()) {
    if (j == b.t.size() || (i < a.t.size() && mono_less(b.t[j].m, a.t[i].m))) {
      out.t.push_back(a.t[i++]);
    } else if (i == a.t.size() || mono_less(a.t[i].m, b.t[j].m)) {
      out.t.push_back(b.t[j++]);
    } else {
      Rat c = k_.reduce(a.t[i].c + b.t[j].c);
      if (c != 0) out.t.push_back(Term{a.t[i].m, std::move(c)});
      ++i;
      ++j;
    }
  }
  return out;
}

Poly PolyRing::neg(const Poly& a) const {
  Poly out = a;
  for (Term& x : out.t) x.c = k_.reduce(-x.c);
  return out;
}

Poly PolyRing::sub(const Poly& a, const Poly& b) const { return add(a, neg(b)); }

Poly PolyRing::mul_term(const Poly& a, const Term& t) const {
  Rat c = k_.reduce(t.c);
  if (c == 0) return {};
  Poly out;
  out.t.reserve(a.t.size());
  for (const Term& x : a.t) {
    Rat cc = k_.reduce(x.c * c);
    if (cc != 0) out.t.push_back(Term{mono_mul(x.m, t.m), std::move(cc)});
  }
  return out;
}

Poly PolyRing::mul(const Poly& a, const Poly& b) const {
  Poly out;
  for (const Term& x : b.t) out = add(out, mul_term(a, x));
  return out;
}

Poly PolyRing::scale(const Poly& a, const Rat& c) const {
  return mul_term(a, Term{Mono(vars_.size(), 0), c});
}

Poly PolyRing::monic(const Poly& a) const {
  if (a.zero()) return a;
  return scale(a, k_.inv(a.lead().c));
}

Poly PolyRing::power(const Poly& a, int n) const {
  if (n < 0) throw InvalidObjectError("negative exponent");
  Poly out = one();
  Poly base = a;
  for (; n > 0; n >>= 1) {
    if (n & 1) out = mul(out, base);
    if (n > 1) base = mul(base, base);
  }
  return out;
}

bool PolyRing::equal(const Poly& a, const Poly& b) const { return sub(a, b).zero(); }

Poly PolyRing::from_expr(const expr::NodePtr& e) const {
  using K = expr::Node::Kind;
  switch (e->kind) {
    case K::Num:
      return constant(Rat(e->num));
    case K::Var: {
      for (int i = 0; i < nvars(); ++i)
        if (vars_[size_t(i)] == e->var) return var(i);
      throw ParseError("unknown variable " + e->var);
    }
    case K::Add:
      return add(from_expr(e->kids[0]), from_expr(e->kids[1]));
    case K::Sub:
      return sub(from_expr(e->kids[0]), from_expr(e->kids[1]));
    case K::Neg:
      return neg(from_expr(e->kids[0]));
    case K::Mul:
      return mul(from_expr(e->kids[0]), from_expr(e->kids[1]));
    case K::Pow: {
      if (e->exponent < 0) throw ParseError("negative exponent in polynomial");
      return power(from_expr(e->kids[0]), int(e->exponent));
    }
  }
  throw ParseError("unreachable expression kind");
}

Poly PolyRing::parse(const std::string& text) const { return from_expr(expr::parse(text)); }

std::string PolyRing::str(const Poly& a) const {
  if (a.zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const Term& x : a.t) {
    Rat c = x.c;
    if (first) {
      if (c < 0) {
        os << "-";
        c = -c;
      }
    } else {
      os << (c < 0 ? " - " : " + ");
      if (c < 0) c = -c;
    }
    first = false;
    std::string mono;
    for (size_t i = 0; i < x.m.size(); ++i) {
      if (x.m[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += vars_[i];
      if (x.m[i] > 1) mono += "^" + std::to_string(x.m[i]);
    }
    if (mono.empty()) {
      os << c;
    } else {
      if (c != 1) os << c << "*";
      os << mono;
    }
  }
  return os.str();
}

}  // namespace exl::poly
