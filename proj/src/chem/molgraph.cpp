#include "retro/chem/molgraph.hpp"

#include <set>
#include <stdexcept>
#include <vector>

#include "retro/chem/elements.hpp"

namespace retro::chem {

void MolGraph::validate() const {
  if (atoms.empty())
    throw std::invalid_argument("molecule has no atoms");
  for (const auto& a : atoms) {
    if (!is_known_element(a.element))
      throw std::invalid_argument("unknown element: " + a.element);
    if (a.aromatic && !can_be_aromatic(a.element))
      throw std::invalid_argument("element cannot be aromatic: " + a.element);
    if (a.explicit_h == kImplicitH &&
        (a.charge != 0 || a.stereo != AtomStereo::None || !is_organic_subset(a.element)))
      throw std::invalid_argument(
          "atom requiring bracket notation must carry an explicit H count");
    if (a.explicit_h < kImplicitH || a.explicit_h > 9)
      throw std::invalid_argument("explicit H count out of range");
    if (a.charge < -15 || a.charge > 15)
      throw std::invalid_argument("formal charge out of range");
  }
  std::set<std::pair<int, int>> seen;
  for (const auto& b : bonds) {
    if (b.a < 0 || b.b < 0 || b.a >= atom_count() || b.b >= atom_count())
      throw std::invalid_argument("bond endpoint out of range");
    if (b.a == b.b)
      throw std::invalid_argument("self bond");
    if (b.dir != BondDir::None && b.order != BondOrder::Single)
      throw std::invalid_argument("direction marker on non-single bond");
    auto key = std::minmax(b.a, b.b);
    if (!seen.insert(key).second)
      throw std::invalid_argument("duplicate bond between the same atom pair");
  }
}

std::vector<std::vector<std::pair<int, int>>> MolGraph::adjacency() const {
  std::vector<std::vector<std::pair<int, int>>> adj(atoms.size());
  for (int i = 0; i < bond_count(); ++i) {
    adj[bonds[i].a].emplace_back(i, bonds[i].b);
    adj[bonds[i].b].emplace_back(i, bonds[i].a);
  }
  return adj;
}

bool MolGraph::connected() const {
  if (atoms.empty())
    return false;
  auto adj = adjacency();
  std::vector<bool> seen(atoms.size(), false);
  std::vector<int> stack{0};
  seen[0] = true;
  int visited = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (auto [bi, u] : adj[v]) {
      if (!seen[u]) {
        seen[u] = true;
        ++visited;
        stack.push_back(u);
      }
    }
  }
  return visited == atom_count();
}

}  // namespace retro::chem
