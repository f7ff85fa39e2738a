// Coefficient bases, the graded-lex word order, and RewriteRing arithmetic.

#include <algorithm>
#include <set>
#include <sstream>

#include "excision/error.hpp"
#include "excision/rewrite.hpp"

namespace exl::rewrite {

Rat CoeffRing::reduce(const Rat& c) const {
  if (!integral) return f.reduce(c);
  Rat v = c;
  v.canonicalize();
  if (v.get_den() != 1) throw InvalidObjectError("coefficient " + v.get_str() + " is not an integer");
  return v;
}

bool CoeffRing::is_unit(const Rat& c) const {
  Rat v = reduce(c);
  if (integral) return v == 1 || v == -1;
  return v != 0;
}

Rat CoeffRing::inv(const Rat& c) const {
  Rat v = reduce(c);
  if (!integral) return f.inv(v);
  if (v == 1 || v == -1) return v;
  throw InvalidObjectError("coefficient " + v.get_str() + " is not a unit over Z");
}

bool CoeffRing::equal(const Rat& a, const Rat& b) const { return reduce(a) == reduce(b); }

std::string CoeffRing::str() const { return integral ? "Z" : f.str(); }

CoeffRing coeff_integers() { return CoeffRing{poly::rationals(), true}; }
CoeffRing coeff_rationals() { return CoeffRing{poly::rationals(), false}; }
CoeffRing coeff_prime_field(const Int& p) { return CoeffRing{poly::prime_field(p), false}; }

Word word_concat(const Word& a, const Word& b) {
  Word w = a;
  w.insert(w.end(), b.begin(), b.end());
  return w;
}

bool word_equal(const Word& a, const Word& b) { return a == b; }

bool word_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

long NCPoly::degree() const { return t.empty() ? -1 : long(t.front().w.size()); }

namespace {

bool term_less(const NCTerm& a, const NCTerm& b) { return word_less(a.w, b.w); }

// sort descending, merge equal words, drop zero coefficients
NCPoly canonical(const CoeffRing& k, std::vector<NCTerm> raw) {
  std::sort(raw.begin(), raw.end(), [](const NCTerm& a, const NCTerm& b) { return term_less(b, a); });
  NCPoly out;
  for (NCTerm& x : raw) {
    if (!out.t.empty() && word_equal(out.t.back().w, x.w)) {
      out.t.back().c = k.reduce(out.t.back().c + x.c);
    } else {
      out.t.push_back({std::move(x.w), k.reduce(x.c)});
    }
    if (out.t.back().c == 0) out.t.pop_back();
  }
  return out;
}

}  // namespace

RewriteRing::RewriteRing(CoeffRing k, std::vector<std::string> gens, std::vector<Rule> rules,
                         bool certified, std::string name)
    : k_(k), gens_(std::move(gens)), rules_(std::move(rules)), certified_(certified),
      name_(std::move(name)) {
  if (gens_.empty()) throw InvalidObjectError("rewrite ring needs at least one generator");
  if (gens_.size() > 255) throw InvalidObjectError("too many generators");
  std::set<std::string> seen;
  for (const std::string& g : gens_) {
    if (g.empty()) throw InvalidObjectError("empty generator name");
    if (!seen.insert(g).second) throw InvalidObjectError("duplicate generator " + g);
  }
  for (Rule& rule : rules_) {
    if (rule.lhs.empty()) throw InvalidObjectError("rule rewrites the empty word");
    for (uint8_t a : rule.lhs)
      if (a >= gens_.size()) throw InvalidObjectError("rule letter out of range");
    std::vector<NCTerm> raw = rule.rhs.t;
    rule.rhs = canonical(k_, std::move(raw));
    for (const NCTerm& x : rule.rhs.t) {
      for (uint8_t a : x.w)
        if (a >= gens_.size()) throw InvalidObjectError("rule letter out of range");
      if (!word_less(x.w, rule.lhs))
        throw InvalidObjectError("rule does not decrease the word order: " + str(x.w) +
                                 " is not below " + str(rule.lhs));
    }
  }
}

NCPoly RewriteRing::constant(Rat c) const { return monomial({}, std::move(c)); }

NCPoly RewriteRing::gen(int i) const {
  if (i < 0 || i >= ngens()) throw InvalidObjectError("generator index out of range");
  return monomial({uint8_t(i)}, 1);
}

NCPoly RewriteRing::monomial(Word w, Rat c) const {
  for (uint8_t a : w)
    if (a >= gens_.size()) throw InvalidObjectError("letter out of range");
  Rat r = k_.reduce(c);
  if (r == 0) return {};
  NCPoly f;
  f.t.push_back({std::move(w), std::move(r)});
  return f;
}

NCPoly RewriteRing::add(const NCPoly& a, const NCPoly& b) const {
  NCPoly out;
  size_t i = 0, j = 0;
  while (i < a.t.size() || j < b.t.size()) {
    if (j == b.t.size() || (i < a.t.size() && word_less(b.t[j].w, a.t[i].w))) {
      out.t.push_back(a.t[i++]);
    } else if (i == a.t.size() || word_less(a.t[i].w, b.t[j].w)) {
      out.t.push_back(b.t[j++]);
    } else {
      Rat c = k_.reduce(a.t[i].c + b.t[j].c);
      if (c != 0) out.t.push_back({a.t[i].w, c});
      ++i, ++j;
    }
  }
  return out;
}

NCPoly RewriteRing::sub(const NCPoly& a, const NCPoly& b) const { return add(a, neg(b)); }

NCPoly RewriteRing::neg(const NCPoly& a) const {
  NCPoly out = a;
  for (NCTerm& x : out.t) x.c = k_.reduce(-x.c);
  return out;
}

NCPoly RewriteRing::mul(const NCPoly& a, const NCPoly& b) const {
  std::vector<NCTerm> raw;
  raw.reserve(a.t.size() * b.t.size());
  for (const NCTerm& x : a.t)
    for (const NCTerm& y : b.t) raw.push_back({word_concat(x.w, y.w), x.c * y.c});
  return canonical(k_, std::move(raw));
}

NCPoly RewriteRing::scale(const NCPoly& a, const Rat& c) const {
  Rat r = k_.reduce(c);
  if (r == 0) return {};
  NCPoly out = a;
  for (NCTerm& x : out.t) x.c = k_.reduce(x.c * r);
  std::erase_if(out.t, [](const NCTerm& x) { return x.c == 0; });
  return out;
}

NCPoly RewriteRing::power(const NCPoly& a, long e) const {
  if (e < 0) throw InvalidObjectError("negative exponent");
  NCPoly out = one();
  for (long i = 0; i < e; ++i) out = mul(out, a);
  return out;
}

namespace {

NCPoly from_expr(const RewriteRing& r, const expr::NodePtr& e) {
  using K = expr::Node::Kind;
  switch (e->kind) {
    case K::Num:
      return r.constant(Rat(e->num));
    case K::Var: {
      for (int i = 0; i < r.ngens(); ++i)
        if (r.gens()[size_t(i)] == e->var) return r.gen(i);
      throw ParseError("unknown generator " + e->var);
    }
    case K::Add:
      return r.add(from_expr(r, e->kids[0]), from_expr(r, e->kids[1]));
    case K::Sub:
      return r.sub(from_expr(r, e->kids[0]), from_expr(r, e->kids[1]));
    case K::Neg:
      return r.neg(from_expr(r, e->kids[0]));
    case K::Mul:
      return r.mul(from_expr(r, e->kids[0]), from_expr(r, e->kids[1]));
    case K::Pow: {
      if (e->exponent < 0) throw ParseError("negative exponent in word");
      return r.power(from_expr(r, e->kids[0]), e->exponent);
    }
  }
  throw ParseError("unreachable expression kind");
}

}  // namespace

NCPoly RewriteRing::parse(const std::string& text) const { return from_expr(*this, expr::parse(text)); }

Word RewriteRing::parse_word(const std::string& text) const {
  NCPoly f = parse(text);
  if (f.t.size() != 1 || f.t.front().c != 1)
    throw InvalidObjectError("expected a single word with coefficient 1: " + text);
  return f.t.front().w;
}

std::string RewriteRing::str(const Word& w) const {
  if (w.empty()) return "1";
  std::string out;
  size_t i = 0;
  while (i < w.size()) {
    size_t j = i;
    while (j < w.size() && w[j] == w[i]) ++j;
    if (!out.empty()) out += "*";
    out += gens_[w[i]];
    if (j - i > 1) out += "^" + std::to_string(j - i);
    i = j;
  }
  return out;
}

std::string RewriteRing::str(const NCPoly& f) const {
  if (f.zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const NCTerm& x : f.t) {
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
    if (x.w.empty()) {
      os << c;
    } else {
      if (c != 1) os << c << "*";
      os << str(x.w);
    }
  }
  return os.str();
}

}  // namespace exl::rewrite
