// Normal forms, critical pairs, and bounded Knuth-Bendix completion.

#include <algorithm>
#include <optional>

#include "excision/error.hpp"
#include "excision/rewrite.hpp"

namespace exl::rewrite {

namespace {

struct Redex {
  size_t pos, rule;
};

std::optional<Redex> find_redex(const RewriteRing& r, const Word& w, Strategy s) {
  const std::vector<Rule>& rules = r.rules();
  if (s == Strategy::Leftmost) {
    for (size_t p = 0; p < w.size(); ++p)
      for (size_t i = 0; i < rules.size(); ++i) {
        const Word& l = rules[i].lhs;
        if (p + l.size() <= w.size() && std::equal(l.begin(), l.end(), w.begin() + long(p)))
          return Redex{p, i};
      }
  } else {
    for (size_t p = w.size(); p-- > 0;)
      for (size_t i = rules.size(); i-- > 0;) {
        const Word& l = rules[i].lhs;
        if (p + l.size() <= w.size() && std::equal(l.begin(), l.end(), w.begin() + long(p)))
          return Redex{p, i};
      }
  }
  return std::nullopt;
}

NCPoly collect(const CoeffRing& k, std::vector<NCTerm> raw) {
  std::sort(raw.begin(), raw.end(),
            [](const NCTerm& a, const NCTerm& b) { return word_less(b.w, a.w); });
  NCPoly out;
  for (NCTerm& x : raw) {
    if (!out.t.empty() && word_equal(out.t.back().w, x.w)) {
      out.t.back().c = k.reduce(out.t.back().c + x.c);
    } else {
      out.t.push_back(std::move(x));
    }
    if (out.t.back().c == 0) out.t.pop_back();
  }
  return out;
}

}  // namespace

NCPoly normal_form(const RewriteRing& r, const NCPoly& f, Strategy s, long cap) {
  // every replacement is strictly smaller in graded-lex, which concatenation
  // respects, so the multiset of pending words is well-founded
  std::vector<NCTerm> acc;
  std::vector<NCTerm> work(f.t.begin(), f.t.end());
  long steps = 0;
  while (!work.empty()) {
    NCTerm t = std::move(work.back());
    work.pop_back();
    std::optional<Redex> rd = find_redex(r, t.w, s);
    if (!rd) {
      acc.push_back(std::move(t));
      continue;
    }
    if (++steps > cap) throw LimitError("rewriting exceeded the step budget");
    const Rule& rule = r.rules()[rd->rule];
    Word prefix(t.w.begin(), t.w.begin() + long(rd->pos));
    Word suffix(t.w.begin() + long(rd->pos + rule.lhs.size()), t.w.end());
    for (const NCTerm& x : rule.rhs.t) {
      Rat c = r.coeff().reduce(t.c * x.c);
      if (c == 0) continue;
      work.push_back({word_concat(word_concat(prefix, x.w), suffix), c});
    }
  }
  return collect(r.coeff(), std::move(acc));
}

bool is_zero(const RewriteRing& r, const NCPoly& f) { return normal_form(r, f).zero(); }

bool equal(const RewriteRing& r, const NCPoly& a, const NCPoly& b) {
  if (!r.certified())
    throw UnsupportedError("rewrite system " + r.name() +
                           " is not certified complete; normal forms are not canonical");
  return is_zero(r, r.sub(a, b));
}

std::vector<CriticalPair> critical_pairs(const RewriteRing& r) {
  const std::vector<Rule>& rules = r.rules();
  std::vector<CriticalPair> out;
  for (size_t i = 0; i < rules.size(); ++i) {
    const Word& li = rules[i].lhs;
    for (size_t j = 0; j < rules.size(); ++j) {
      const Word& lj = rules[j].lhs;
      // proper overlap: nonempty suffix of li equals a proper prefix of lj
      size_t kmax = std::min(li.size(), lj.size()) - 1;
      for (size_t k = 1; k <= kmax; ++k) {
        if (!std::equal(li.end() - long(k), li.end(), lj.begin())) continue;
        Word tail(lj.begin() + long(k), lj.end());
        Word head(li.begin(), li.end() - long(k));
        CriticalPair cp;
        cp.word = word_concat(li, tail);
        cp.left = r.mul(rules[i].rhs, r.monomial(tail, 1));
        cp.right = r.mul(r.monomial(head, 1), rules[j].rhs);
        out.push_back(std::move(cp));
      }
      // containment: lj occurs inside li
      if (i == j || lj.size() > li.size()) continue;
      for (size_t p = 0; p + lj.size() <= li.size(); ++p) {
        if (!std::equal(lj.begin(), lj.end(), li.begin() + long(p))) continue;
        if (lj.size() == li.size() && i > j) continue;  // duplicate lhs, keep one side
        Word prefix(li.begin(), li.begin() + long(p));
        Word suffix(li.begin() + long(p + lj.size()), li.end());
        CriticalPair cp;
        cp.word = li;
        cp.left = rules[i].rhs;
        cp.right = r.mul(r.mul(r.monomial(prefix, 1), rules[j].rhs), r.monomial(suffix, 1));
        out.push_back(std::move(cp));
      }
    }
  }
  return out;
}

namespace {

std::vector<Rule> parse_rules(const CoeffRing& k, const std::vector<std::string>& gens,
                              const std::vector<std::pair<std::string, std::string>>& given) {
  RewriteRing probe(k, gens, {}, false, "");
  std::vector<Rule> rules;
  for (const auto& [lhs, rhs] : given) rules.push_back({probe.parse_word(lhs), probe.parse(rhs)});
  return rules;
}

// first unresolved pair, if any
std::optional<NCPoly> unresolved(const RewriteRing& r) {
  for (const CriticalPair& cp : critical_pairs(r)) {
    NCPoly d = normal_form(r, r.sub(cp.left, cp.right));
    if (!d.zero()) return d;
  }
  return std::nullopt;
}

}  // namespace

RwPtr make_rewrite_ring(CoeffRing k, std::vector<std::string> gens,
                        const std::vector<std::pair<std::string, std::string>>& rules,
                        std::string name) {
  std::vector<Rule> parsed = parse_rules(k, gens, rules);
  return make_rewrite_ring(k, std::move(gens), std::move(parsed), std::move(name));
}

RwPtr make_rewrite_ring(CoeffRing k, std::vector<std::string> gens, std::vector<Rule> rules,
                        std::string name) {
  RewriteRing probe(k, gens, rules, false, name);
  bool complete = !unresolved(probe).has_value();
  return std::make_shared<RewriteRing>(k, std::move(gens), std::move(rules), complete,
                                       std::move(name));
}

RwPtr complete_rewrite_system(CoeffRing k, std::vector<std::string> gens,
                              const std::vector<std::pair<std::string, std::string>>& rules,
                              std::string name, int rule_budget) {
  std::vector<Rule> current = parse_rules(k, gens, rules);
  for (;;) {
    RewriteRing probe(k, gens, current, false, name);
    std::optional<NCPoly> d = unresolved(probe);
    if (!d) return std::make_shared<RewriteRing>(k, std::move(gens), std::move(current), true,
                                                 std::move(name));
    const NCTerm& lead = d->lead();
    if (lead.w.empty())
      throw UnsupportedError("completion derived the constant relation " + probe.str(*d) +
                             " = 0; the presented ring is trivial");
    if (!k.is_unit(lead.c))
      throw UnsupportedError("cannot orient " + probe.str(*d) + ": leading coefficient " +
                             k.reduce(lead.c).get_str() + " is not a unit over " + k.str());
    NCPoly rest = probe.sub(probe.monomial(lead.w, lead.c), *d);
    current.push_back({lead.w, probe.scale(rest, k.inv(lead.c))});
    if (int(current.size()) > rule_budget)
      throw LimitError("rewrite completion exceeded the rule budget");
  }
}

namespace {

bool redex_at_suffix(const RewriteRing& r, const Word& w) {
  for (const Rule& rule : r.rules()) {
    if (rule.lhs.size() > w.size()) continue;
    if (std::equal(rule.lhs.begin(), rule.lhs.end(), w.end() - long(rule.lhs.size()))) return true;
  }
  return false;
}

void extend_irreducible(const RewriteRing& r, Word& w, int d, std::vector<Word>& out) {
  if (int(w.size()) == d) {
    if (out.size() >= 200000) throw LimitError("irreducible word enumeration exceeded the budget");
    out.push_back(w);
    return;
  }
  for (int a = 0; a < r.ngens(); ++a) {
    w.push_back(uint8_t(a));
    // any completion of a word with a reducible suffix stays reducible
    if (!redex_at_suffix(r, w)) extend_irreducible(r, w, d, out);
    w.pop_back();
  }
}

}  // namespace

std::vector<Word> irreducible_words(const RewriteRing& r, int d) {
  if (d < 0) throw InvalidObjectError("negative degree");
  std::vector<Word> out;
  Word w;
  extend_irreducible(r, w, d, out);
  return out;
}

}  // namespace exl::rewrite
