#include <fstream>
#include <json.hpp>
#include <sstream>

#include "excision/error.hpp"
#include "excision/homalg.hpp"

namespace exl::homalg {

using lin::mat_vec;
using lin::preimage_lattice;
using lin::solve_int;
using lin::vec_is_zero;

IntMat FreeResolution::augmentation() const {
  int n = ring->ngens(), a = target.add.ngens();
  int k0 = ranks.empty() ? 0 : ranks[0];
  IntMat eps(a, k0 * n);
  for (int j = 0; j < k0; ++j)
    for (int u = 0; u < n; ++u)
      eps.set_col(j * n + u, mat_vec(target.act[u], target.mod_gens[j]));
  return eps;
}

namespace {

uint64_t fnv1a64(const std::string& s) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string mat_blob(const IntMat& m) {
  std::ostringstream os;
  os << m.rows() << "x" << m.cols() << ":";
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) os << m.at(i, j).get_str() << ",";
  return os.str();
}

// kernel of an additive map out of R^k, re-presented on the canonical
// generators of the kernel subgroup (a full abelian generating set, no
// module-level minimization)
RingMat kernel_columns(const RingPtr& ring, int k, const IntMat& add_map,
                       const IntMat& tgt_rels) {
  int n = ring->ngens();
  IntMat ker = preimage_lattice(add_map, tgt_rels);
  FgGroup kg(ker.cols(), preimage_lattice(ker, free_rels(ring, k)));
  std::vector<std::vector<Coords>> cols;
  for (int t = 0; t < kg.canon_dim(); ++t) {
    std::vector<Int> z = mat_vec(ker, kg.canon_generator(t));
    std::vector<Coords> col(k);
    bool zero = true;
    for (int s = 0; s < k; ++s) {
      col[s] = ring->reduce(Coords(z.begin() + s * n, z.begin() + (s + 1) * n));
      if (!vec_is_zero(col[s])) zero = false;
    }
    if (!zero) cols.push_back(std::move(col));
  }
  RingMat d(ring, k, int(cols.size()));
  for (int c = 0; c < int(cols.size()); ++c)
    for (int s = 0; s < k; ++s) d.e[s][c] = std::move(cols[c][s]);
  return d;
}

}  // namespace

std::string ResolutionCache::key_for(const FinModule& m, int length) {
  std::ostringstream os;
  os << m.ring->canonical_serialization() << "|side=" << (m.side == Side::Right ? "r" : "l")
     << "|rels=" << mat_blob(m.add.rels());
  for (const IntMat& a : m.act) os << "|act=" << mat_blob(a);
  os << "|gens=";
  for (const auto& g : m.mod_gens)
    for (const Int& x : g) os << x.get_str() << ",";
  os << "|len=" << length;
  std::ostringstream key;
  key << std::hex << fnv1a64(os.str());
  return key.str();
}

std::optional<FreeResolution> ResolutionCache::load(const std::string& key,
                                                    const FinModule& target) const {
  std::filesystem::path p = dir_ / (key + ".res.json");
  std::ifstream in(p);
  if (!in) return std::nullopt;
  nlohmann::json j;
  try {
    in >> j;
    FreeResolution res;
    res.ring = target.ring;
    res.target = target;
    for (const auto& r : j.at("ranks")) res.ranks.push_back(r.get<int>());
    for (const auto& dj : j.at("d")) {
      int rows = dj.at("rows").get<int>(), cols = dj.at("cols").get<int>();
      RingMat m(target.ring, rows, cols);
      const auto& ent = dj.at("e");
      size_t idx = 0;
      for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
          Coords x;
          for (const auto& s : ent.at(idx)) x.emplace_back(s.get<std::string>());
          if (int(x.size()) != target.ring->ngens()) return std::nullopt;
          m.e[r][c] = std::move(x);
          ++idx;
        }
      res.d.push_back(std::move(m));
    }
    if (res.ranks.size() != res.d.size() + 1) return std::nullopt;
    if (!res.ranks.empty() && res.ranks[0] != int(target.mod_gens.size())) return std::nullopt;
    return res;
  } catch (...) {
    return std::nullopt;
  }
}

void ResolutionCache::store(const std::string& key, const FreeResolution& r) const {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  nlohmann::ordered_json j;
  j["ranks"] = r.ranks;
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const RingMat& m : r.d) {
    nlohmann::ordered_json dj;
    dj["rows"] = m.rows;
    dj["cols"] = m.cols;
    nlohmann::ordered_json ent = nlohmann::ordered_json::array();
    for (int rr = 0; rr < m.rows; ++rr)
      for (int c = 0; c < m.cols; ++c) {
        nlohmann::ordered_json coords = nlohmann::ordered_json::array();
        for (const Int& x : m.e[rr][c]) coords.push_back(x.get_str());
        ent.push_back(std::move(coords));
      }
    dj["e"] = std::move(ent);
    arr.push_back(std::move(dj));
  }
  j["d"] = std::move(arr);
  std::filesystem::path tmp = dir_ / (key + ".tmp");
  std::filesystem::path fin = dir_ / (key + ".res.json");
  {
    std::ofstream out(tmp);
    out << j.dump();
  }
  std::filesystem::rename(tmp, fin, ec);
  if (ec) std::filesystem::remove(tmp, ec);
}

FreeResolution free_resolution(const FinModule& m, int length, const ResolutionCache* cache) {
  std::string key;
  if (cache) {
    key = ResolutionCache::key_for(m, length);
    if (auto hit = cache->load(key, m)) return *hit;
  }
  FreeResolution res;
  res.ring = m.ring;
  res.target = m;
  res.ranks.push_back(int(m.mod_gens.size()));
  for (int t = 0; t < length; ++t) {
    IntMat add_map = (t == 0) ? res.augmentation() : res.d[t - 1].additive();
    IntMat tgt_rels = (t == 0) ? m.add.rels() : free_rels(m.ring, res.ranks[t - 1]);
    RingMat next = kernel_columns(m.ring, res.ranks[t], add_map, tgt_rels);
    res.ranks.push_back(next.cols);
    res.d.push_back(std::move(next));
    if (t > 0 && !res.d[t - 1].mul(res.d[t]).is_zero())
      throw std::logic_error("resolution differential fails d.d = 0");
  }
  if (cache) cache->store(key, res);
  return res;
}

std::vector<RingMat> lift_to_resolutions(const FreeResolution& p, const FreeResolution& q,
                                         const IntMat& phi) {
  const RingPtr& ring = p.ring;
  int n = ring->ngens();
  if (phi.rows() != q.target.add.ngens() || phi.cols() != p.target.add.ngens())
    throw std::invalid_argument("lift: module hom matrix shape mismatch");
  int len = int(std::min(p.d.size(), q.d.size())) + 1;
  std::vector<RingMat> f;
  IntMat q_eps = q.augmentation();

  auto to_ring_col = [&](const std::vector<Int>& z, int k) {
    std::vector<Coords> col(k);
    for (int s = 0; s < k; ++s)
      col[s] = ring->reduce(Coords(z.begin() + s * n, z.begin() + (s + 1) * n));
    return col;
  };

  for (int t = 0; t < len; ++t) {
    RingMat ft(ring, q.ranks[t], p.ranks[t]);
    for (int j = 0; j < p.ranks[t]; ++j) {
      std::vector<Int> rhs;
      if (t == 0) {
        rhs = mat_vec(phi, p.target.mod_gens[j]);  // phi(eps_p(e_j))
      } else {
        // f_{t-1}(d_p(e_j)) in additive coordinates of Q_{t-1}
        std::vector<Int> dcol(p.ranks[t - 1] * n, 0);
        for (int s = 0; s < p.ranks[t - 1]; ++s)
          for (int u = 0; u < n; ++u) dcol[s * n + u] = p.d[t - 1].e[s][j][u];
        rhs = mat_vec(f.back().additive(), dcol);
      }
      IntMat sys = (t == 0) ? q_eps.hstack(q.target.add.rels())
                            : q.d[t - 1].additive().hstack(free_rels(ring, q.ranks[t - 1]));
      auto sol = solve_int(sys, rhs);
      if (!sol) throw std::logic_error("lift: comparison solve failed (resolution too short?)");
      std::vector<Int> x(sol->begin(), sol->begin() + q.ranks[t] * n);
      auto col = to_ring_col(x, q.ranks[t]);
      for (int s = 0; s < q.ranks[t]; ++s) ft.e[s][j] = col[s];
    }
    f.push_back(std::move(ft));
  }
  return f;
}

}  // namespace exl::homalg
