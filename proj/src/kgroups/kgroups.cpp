// K_0 via primitive idempotents and K_1 via a Schreier presentation of the
// unit group: every unit gets an exponent vector over greedily chosen
// generators, and expr(u) + e_j - expr(u g_j) generate the full relation
// lattice because the exponent table is a transversal of the kernel.

#include <map>

#include "excision/error.hpp"
#include "excision/kgroups.hpp"

namespace exl::kgroups {

namespace {

void need_commutative(const RingPtr& r, const char* what) {
  if (!r->commutative())
    throw UnsupportedError(std::string(what) + " is computed through units and idempotents, "
                           "which needs a commutative ring; " + r->name() + " is not");
}

}  // namespace

K0Data k0(RingPtr r) {
  need_commutative(r, "K_0");
  std::vector<Coords> comps = rings::primitive_idempotents(r);
  FgGroup group = FgGroup::free_group(int(comps.size()));
  return K0Data{std::move(r), std::move(comps), std::move(group)};
}

std::vector<Int> idempotent_class(const K0Data& k, const Coords& e) {
  if (!k.ring->is_idempotent(e))
    throw InvalidObjectError("class of a non-idempotent element " + k.ring->elem_str(e));
  std::vector<Int> out;
  // e restricted to a local component is 0 or the component's unit
  for (const Coords& c : k.components) out.push_back(k.ring->is_zero(k.ring->mul(c, e)) ? 0 : 1);
  return out;
}

const std::vector<Int>& K1Data::log_of(const Coords& u) const {
  for (size_t i = 0; i < units.size(); ++i)
    if (ring->equal(units[i], u)) return logs[i];
  throw InvalidObjectError(ring->elem_str(u) + " is not a unit of " + ring->name());
}

K1Data k1(RingPtr r) {
  need_commutative(r, "K_1");
  std::vector<Coords> units = rings::unit_elements(r);

  std::map<Coords, std::vector<Int>> expr;
  expr[r->reduce(r->unit())] = {};
  std::vector<Coords> gens;

  auto close = [&]() {
    bool grew = true;
    while (grew) {
      grew = false;
      std::vector<std::pair<Coords, std::vector<Int>>> found;
      for (const auto& [elem, ex] : expr)
        for (size_t j = 0; j < gens.size(); ++j) {
          Coords p = r->mul(elem, gens[j]);
          if (expr.count(p) || std::any_of(found.begin(), found.end(),
                                           [&](const auto& f) { return f.first == p; }))
            continue;
          std::vector<Int> pe = ex;
          pe.resize(gens.size(), 0);
          pe[j] += 1;
          found.emplace_back(std::move(p), std::move(pe));
        }
      for (auto& f : found) {
        expr.emplace(std::move(f.first), std::move(f.second));
        grew = true;
      }
    }
  };

  for (const Coords& u : units) {
    if (expr.count(r->reduce(u))) continue;
    gens.push_back(r->reduce(u));
    close();
  }

  int k = int(gens.size());
  std::vector<std::vector<Int>> relcols;
  for (const auto& [elem, ex] : expr) {
    for (size_t j = 0; j < gens.size(); ++j) {
      std::vector<Int> rel = ex;
      rel.resize(size_t(k), 0);
      rel[j] += 1;
      std::vector<Int> pe = expr.at(r->mul(elem, gens[j]));
      pe.resize(size_t(k), 0);
      for (int i = 0; i < k; ++i) rel[size_t(i)] -= pe[size_t(i)];
      relcols.push_back(std::move(rel));
    }
  }
  IntMat rels = relcols.empty() ? IntMat(k, 0) : IntMat::from_cols(relcols);
  FgGroup group(k, rels);
  if (group.order() != Int(units.size()))
    throw InvalidObjectError("unit group presentation of " + r->name() +
                             " disagrees with the unit count");

  std::vector<std::vector<Int>> logs;
  for (const Coords& u : units) {
    std::vector<Int> ex = expr.at(r->reduce(u));
    ex.resize(size_t(k), 0);
    logs.push_back(std::move(ex));
  }
  return K1Data{std::move(r), std::move(units), std::move(gens), std::move(group),
                std::move(logs)};
}

GroupHom induced_on_units(const K1Data& src, const K1Data& tgt, const rings::RingHom& f) {
  if (f.src().get() != src.ring.get() || f.tgt().get() != tgt.ring.get())
    throw InvalidObjectError("unit map endpoints do not match the ring hom " + f.name());
  IntMat m(int(tgt.gens.size()), int(src.gens.size()));
  for (size_t i = 0; i < src.gens.size(); ++i) {
    const std::vector<Int>& col = tgt.log_of(f.apply(src.gens[i]));
    for (size_t j = 0; j < col.size(); ++j) m.at(int(j), int(i)) = col[j];
  }
  return GroupHom(src.group, tgt.group, std::move(m));
}

}  // namespace exl::kgroups
