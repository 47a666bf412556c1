#include "retro/chem/fingerprint.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "retro/util/hash.hpp"

namespace retro::chem {

namespace {

std::uint64_t atom_seed_feature(const MolGraph& g, int degree, int i) {
  const Atom& a = g.atoms[i];
  std::uint64_t h = kHashSeed;
  h = hash_combine(h, hash_bytes(a.element));
  h = hash_combine(h, a.aromatic ? 1 : 0);
  h = hash_combine(h, static_cast<std::uint64_t>(degree));
  h = hash_combine(h, static_cast<std::uint64_t>(static_cast<std::int64_t>(a.charge) + 64));
  h = hash_combine(h, static_cast<std::uint64_t>(static_cast<std::int64_t>(a.explicit_h) + 64));
  return h;
}

}  // namespace

Fingerprint morgan_fingerprint(const MolGraph& g, int radius) {
  if (radius < 0)
    throw std::invalid_argument("fingerprint radius must be >= 0");
  g.validate();

  auto adj = g.adjacency();
  int n = g.atom_count();

  std::vector<std::uint64_t> current(n);
  for (int i = 0; i < n; ++i)
    current[i] = atom_seed_feature(g, static_cast<int>(adj[i].size()), i);

  Fingerprint fp;
  fp.radius = radius;
  fp.features.insert(current.begin(), current.end());

  for (int iter = 1; iter <= radius; ++iter) {
    std::vector<std::uint64_t> next(n);
    for (int i = 0; i < n; ++i) {
      std::vector<std::pair<int, std::uint64_t>> env;
      env.reserve(adj[i].size());
      for (auto [bi, u] : adj[i]) {
        const Bond& b = g.bonds[bi];
        int label = (static_cast<int>(b.order) << 2) | static_cast<int>(b.dir);
        env.emplace_back(label, current[u]);
      }
      std::sort(env.begin(), env.end());
      std::uint64_t h = hash_combine(kHashSeed, static_cast<std::uint64_t>(iter));
      h = hash_combine(h, current[i]);
      for (auto [label, feature] : env) {
        h = hash_combine(h, static_cast<std::uint64_t>(label));
        h = hash_combine(h, feature);
      }
      next[i] = h;
    }
    current = std::move(next);
    fp.features.insert(current.begin(), current.end());
  }
  return fp;
}

double tanimoto(const Fingerprint& a, const Fingerprint& b) {
  if (a.radius != b.radius)
    throw std::invalid_argument("tanimoto requires fingerprints of equal radius");
  if (a.features.empty() && b.features.empty())
    return 1.0;
  std::size_t common = 0;
  auto it = a.features.begin();
  auto jt = b.features.begin();
  while (it != a.features.end() && jt != b.features.end()) {
    if (*it < *jt)
      ++it;
    else if (*jt < *it)
      ++jt;
    else {
      ++common;
      ++it;
      ++jt;
    }
  }
  std::size_t unioned = a.features.size() + b.features.size() - common;
  return static_cast<double>(common) / static_cast<double>(unioned);
}

}  // namespace retro::chem
