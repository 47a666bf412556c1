#include "retro/chem/complexity.hpp"

#include <algorithm>
#include <cmath>

#include "retro/chem/elements.hpp"

namespace retro::chem {

namespace {
constexpr double kSizeWeight = 0.8;
constexpr double kRingWeight = 0.3;
constexpr double kStereoWeight = 0.2;
}  // namespace

double complexity_score(const MolGraph& g) {
  g.validate();
  int heavy = g.atom_count();
  // Cyclomatic ring count; single-component graphs everywhere in this
  // codebase, so bonds - atoms + 1.
  int rings = std::max(0, g.bond_count() - g.atom_count() + 1);
  int stereo = 0;
  for (const auto& a : g.atoms)
    if (a.stereo != AtomStereo::None)
      ++stereo;
  for (const auto& b : g.bonds)
    if (b.dir != BondDir::None)
      ++stereo;
  double raw = 1.0 + kSizeWeight * std::log(static_cast<double>(heavy)) +
               kRingWeight * rings + kStereoWeight * stereo;
  return std::clamp(raw, 1.0, 5.0);
}

double molecular_weight(const MolGraph& g) {
  g.validate();
  auto adj = g.adjacency();
  double total = 0.0;
  const double h_weight = *atomic_weight("H");
  for (int i = 0; i < g.atom_count(); ++i) {
    const Atom& a = g.atoms[i];
    total += atomic_weight(a.element).value_or(0.0);
    if (a.explicit_h >= 0) {
      total += h_weight * a.explicit_h;
      continue;
    }
    // Implicit hydrogens: lowest standard valence covering the bond order
    // sum (aromatic bonds count 1.5).
    double order_sum = 0.0;
    for (auto [bi, u] : adj[i]) {
      switch (g.bonds[bi].order) {
        case BondOrder::Single: order_sum += 1.0; break;
        case BondOrder::Double: order_sum += 2.0; break;
        case BondOrder::Triple: order_sum += 3.0; break;
        case BondOrder::Aromatic: order_sum += 1.5; break;
      }
    }
    int need = static_cast<int>(std::ceil(order_sum - 1e-9));
    int count = 0;
    const int* valences = default_valences(a.element, &count);
    for (int k = 0; k < count; ++k) {
      if (valences[k] >= need) {
        total += h_weight * (valences[k] - need);
        break;
      }
    }
  }
  return total;
}

}  // namespace retro::chem
