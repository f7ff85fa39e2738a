#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

#include "excision/error.hpp"
#include "excision/expr.hpp"
#include "excision/rings.hpp"

namespace exl::rings {
namespace {

using expr::Node;
using expr::NodePtr;

// commutative monomial as an exponent vector; compared in degrevlex
using Mono = std::vector<long>;

long total_deg(const Mono& m) {
  long d = 0;
  for (long e : m) d += e;
  return d;
}

struct MonoGreater {
  bool operator()(const Mono& a, const Mono& b) const {
    long da = total_deg(a), db = total_deg(b);
    if (da != db) return da > db;
    // degrevlex: at the last differing index, the smaller exponent wins
    for (int i = int(a.size()) - 1; i >= 0; --i)
      if (a[i] != b[i]) return a[i] < b[i];
    return false;
  }
};

bool divides(const Mono& l, const Mono& m) {
  for (size_t i = 0; i < l.size(); ++i)
    if (l[i] > m[i]) return false;
  return true;
}

Mono mono_mul(const Mono& a, const Mono& b) {
  Mono c(a.size());
  for (size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  return c;
}

Mono mono_div(const Mono& a, const Mono& b) {
  Mono c(a.size());
  for (size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
  return c;
}

Mono mono_lcm(const Mono& a, const Mono& b) {
  Mono c(a.size());
  for (size_t i = 0; i < a.size(); ++i) c[i] = std::max(a[i], b[i]);
  return c;
}

// polynomial over Z/N with coefficients kept in [1, N)
using Poly = std::map<Mono, Int, MonoGreater>;

struct PolyRing {
  Int n;       // modulus
  int nvars;

  Int cmod(const Int& c) const {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), c.get_mpz_t(), n.get_mpz_t());
    return r;
  }

  void add_term(Poly& p, const Mono& m, const Int& c) const {
    Int v = cmod(c);
    if (v == 0) return;
    auto it = p.find(m);
    if (it == p.end()) {
      p.emplace(m, v);
      return;
    }
    it->second = cmod(it->second + v);
    if (it->second == 0) p.erase(it);
  }

  Poly constant(const Int& c) const {
    Poly p;
    add_term(p, Mono(nvars, 0), c);
    return p;
  }

  Poly variable(int i) const {
    Poly p;
    Mono m(nvars, 0);
    m[i] = 1;
    add_term(p, m, 1);
    return p;
  }

  Poly add(const Poly& a, const Poly& b) const {
    Poly r = a;
    for (const auto& [m, c] : b) add_term(r, m, c);
    return r;
  }

  Poly scale(const Int& c, const Poly& a) const {
    Poly r;
    for (const auto& [m, v] : a) add_term(r, m, c * v);
    return r;
  }

  Poly sub(const Poly& a, const Poly& b) const { return add(a, scale(-1, b)); }

  Poly mul(const Poly& a, const Poly& b) const {
    Poly r;
    for (const auto& [ma, ca] : a)
      for (const auto& [mb, cb] : b) add_term(r, mono_mul(ma, mb), ca * cb);
    return r;
  }

  Poly mul_term(const Mono& m, const Int& c, const Poly& a) const {
    Poly r;
    for (const auto& [ma, ca] : a) add_term(r, mono_mul(m, ma), c * ca);
    return r;
  }
};

// monic rewriting rule: lead ~> tail
struct Rule {
  Mono lead;
  Poly tail;
};

Poly normal_form(const PolyRing& pr, Poly p, const std::vector<Rule>& rules) {
  for (;;) {
    bool reduced = false;
    for (auto it = p.begin(); it != p.end(); ++it) {
      for (const Rule& r : rules) {
        if (!divides(r.lead, it->first)) continue;
        Mono q = mono_div(it->first, r.lead);
        Int c = it->second;
        p.erase(it);
        Poly repl = pr.mul_term(q, c, r.tail);
        for (const auto& [mm, cc] : repl) pr.add_term(p, mm, cc);
        reduced = true;
        break;
      }
      if (reduced) break;
    }
    if (!reduced) return p;
  }
}

Poly eval_node(const PolyRing& pr, const NodePtr& node,
               const std::map<std::string, int>& var_index) {
  switch (node->kind) {
    case Node::Kind::Num:
      return pr.constant(node->num);
    case Node::Kind::Var: {
      auto it = var_index.find(node->var);
      if (it == var_index.end())
        throw InvalidObjectError("unknown generator '" + node->var + "' in relation");
      return pr.variable(it->second);
    }
    case Node::Kind::Add:
      return pr.add(eval_node(pr, node->kids[0], var_index),
                    eval_node(pr, node->kids[1], var_index));
    case Node::Kind::Sub:
      return pr.sub(eval_node(pr, node->kids[0], var_index),
                    eval_node(pr, node->kids[1], var_index));
    case Node::Kind::Neg:
      return pr.scale(-1, eval_node(pr, node->kids[0], var_index));
    case Node::Kind::Mul:
      return pr.mul(eval_node(pr, node->kids[0], var_index),
                    eval_node(pr, node->kids[1], var_index));
    case Node::Kind::Pow: {
      Poly base = eval_node(pr, node->kids[0], var_index);
      Poly acc = pr.constant(1);
      for (long k = 0; k < node->exponent; ++k) acc = pr.mul(acc, base);
      return acc;
    }
  }
  throw std::logic_error("unreachable expression node");
}

std::string mono_str(const Mono& m, const std::vector<std::string>& names) {
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!first) os << "*";
    first = false;
    os << names[i];
    if (m[i] > 1) os << "^" << m[i];
  }
  if (first) return "1";
  return os.str();
}

}  // namespace

PresentedRing present_finite_ring(const RingPresentation& pres, size_t cap) {
  if (pres.modulus < 2) throw InvalidObjectError("presentation modulus must be >= 2");
  PolyRing pr{pres.modulus, int(pres.gens.size())};
  std::map<std::string, int> var_index;
  for (size_t i = 0; i < pres.gens.size(); ++i) {
    if (var_index.count(pres.gens[i]))
      throw InvalidObjectError("duplicate generator '" + pres.gens[i] + "'");
    var_index[pres.gens[i]] = int(i);
  }

  // complete the relations to a confluent monic rewriting system
  std::vector<Rule> rules;
  std::deque<Poly> queue;
  for (const std::string& rel : pres.rels)
    queue.push_back(eval_node(pr, expr::parse(rel), var_index));
  bool zero_ring = false;
  while (!queue.empty() && !zero_ring) {
    Poly p = normal_form(pr, queue.front(), rules);
    queue.pop_front();
    if (p.empty()) continue;
    Mono lead = p.begin()->first;
    Int c = p.begin()->second;
    Int g = gcd(c, pres.modulus);
    if (g != 1) {
      if (total_deg(lead) == 0)
        throw UnsupportedError("relation forces a constant " + c.get_str() +
                               " to vanish, which changes the coefficient ring Z/" +
                               pres.modulus.get_str());
      throw UnsupportedError(
          "relation has leading coefficient " + c.get_str() + " not invertible mod " +
          pres.modulus.get_str() + "; only monic-reducible presentations are supported");
    }
    if (total_deg(lead) == 0) {
      zero_ring = true;  // an invertible constant lies in the ideal
      break;
    }
    Int cinv;
    mpz_invert(cinv.get_mpz_t(), c.get_mpz_t(), pres.modulus.get_mpz_t());
    Poly monic = pr.scale(cinv, p);
    Poly tail = pr.scale(-1, monic);
    tail.erase(lead);  // lead ~> -(rest of monic)
    for (const Rule& r : rules) {
      Mono m = mono_lcm(r.lead, lead);
      Poly s = pr.sub(pr.mul_term(mono_div(m, lead), 1, tail),
                      pr.mul_term(mono_div(m, r.lead), 1, r.tail));
      queue.push_back(std::move(s));
    }
    rules.push_back(Rule{lead, std::move(tail)});
    if (rules.size() > 512) throw LimitError("rewriting system exceeded 512 rules");
  }

  if (zero_ring) {
    RingPtr zr = make_ring(FiniteRing({}, {}, {}, {}, "0"));
    return PresentedRing{zr, std::vector<Coords>(pres.gens.size(), Coords{})};
  }

  // standard monomials by breadth-first search below the rule leads; the ring
  // order N^#monomials must stay within cap
  auto reducible = [&](const Mono& m) {
    for (const Rule& r : rules)
      if (divides(r.lead, m)) return true;
    return false;
  };
  std::map<Mono, int, MonoGreater> seen;
  std::deque<Mono> bfs;
  Mono one(pr.nvars, 0);
  seen.emplace(one, 0);
  bfs.push_back(one);
  Int order = pres.modulus;
  Int cap_int(static_cast<unsigned long>(cap));
  while (!bfs.empty()) {
    Mono m = bfs.front();
    bfs.pop_front();
    for (int i = 0; i < pr.nvars; ++i) {
      Mono m2 = m;
      m2[i] += 1;
      if (seen.count(m2) || reducible(m2)) continue;
      order *= pres.modulus;
      if (order > cap_int)
        throw LimitError("presented ring is infinite or its order exceeds the cap " +
                         cap_int.get_str());
      seen.emplace(m2, 0);
      bfs.push_back(m2);
    }
  }

  // basis sorted ascending so the constant monomial comes first
  std::vector<Mono> basis;
  for (const auto& kv : seen) basis.push_back(kv.first);
  std::reverse(basis.begin(), basis.end());
  std::map<Mono, int, MonoGreater> index;
  for (size_t k = 0; k < basis.size(); ++k) index[basis[k]] = int(k);

  int n = int(basis.size());
  auto poly_coords = [&](const Poly& p) {
    Coords c(n, 0);
    for (const auto& [m, v] : p) {
      auto it = index.find(m);
      if (it == index.end())
        throw std::logic_error("normal form left a non-standard monomial");
      c[it->second] = v;
    }
    return c;
  };

  std::vector<Int> dims(n, pres.modulus);
  std::vector<std::vector<Coords>> table(n, std::vector<Coords>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Poly p;
      pr.add_term(p, mono_mul(basis[i], basis[j]), 1);
      table[i][j] = poly_coords(normal_form(pr, std::move(p), rules));
    }
  Coords unit(n, 0);
  unit[index[one]] = 1;
  std::vector<std::string> names;
  for (const Mono& m : basis) names.push_back(mono_str(m, pres.gens));

  std::ostringstream nm;
  nm << "Z/" << pres.modulus.get_str();
  if (!pres.gens.empty()) {
    nm << "[";
    for (size_t i = 0; i < pres.gens.size(); ++i) nm << (i ? "," : "") << pres.gens[i];
    nm << "]";
    if (!pres.rels.empty()) {
      nm << "/(";
      for (size_t i = 0; i < pres.rels.size(); ++i) nm << (i ? ", " : "") << pres.rels[i];
      nm << ")";
    }
  }
  RingPtr ring = make_ring(FiniteRing(dims, table, unit, names, nm.str()));

  std::vector<Coords> gen_images;
  for (int i = 0; i < pr.nvars; ++i)
    gen_images.push_back(poly_coords(normal_form(pr, pr.variable(i), rules)));
  return PresentedRing{ring, std::move(gen_images)};
}

RingPtr make_finite_ring(const RingPresentation& pres, size_t cap) {
  return present_finite_ring(pres, cap).ring;
}

}  // namespace exl::rings
