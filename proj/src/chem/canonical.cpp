#include "retro/chem/canonical.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "retro/chem/elements.hpp"
#include "retro/chem/smiles.hpp"

namespace retro::chem {

namespace {

int bond_label(const Bond& b) {
  return (static_cast<int>(b.order) << 2) | static_cast<int>(b.dir);
}

using Adjacency = std::vector<std::vector<std::pair<int, int>>>;

// Invariant tuple ordering atoms before refinement. Comparison order is the
// documented tie-break: element, degree, charge, H count, aromatic, stereo.
using AtomInvariant = std::tuple<std::string, int, int, int, bool, int>;

AtomInvariant atom_invariant(const MolGraph& g, const Adjacency& adj, int i) {
  const Atom& a = g.atoms[i];
  return {a.element, static_cast<int>(adj[i].size()), a.charge, a.explicit_h,
          a.aromatic, static_cast<int>(a.stereo)};
}

std::vector<int> dense_ranks_by_key(const std::vector<std::vector<int>>& keys) {
  int n = static_cast<int>(keys.size());
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i)
    order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](int x, int y) { return keys[x] < keys[y]; });
  std::vector<int> ranks(n, 0);
  int rank = 0;
  for (int k = 0; k < n; ++k) {
    if (k > 0 && keys[order[k]] != keys[order[k - 1]])
      ++rank;
    ranks[order[k]] = rank;
  }
  return ranks;
}

class Canonicalizer {
 public:
  explicit Canonicalizer(const MolGraph& g) : g_(g), adj_(g.adjacency()) {}

  std::string run() {
    auto ranks = initial_ranks();
    std::vector<int> best_ranks;
    std::string best;
    search(std::move(ranks), best, best_ranks);
    return best;
  }

  std::vector<int> final_ranks() {
    auto ranks = initial_ranks();
    std::vector<int> best_ranks;
    std::string best;
    search(std::move(ranks), best, best_ranks);
    return best_ranks;
  }

 private:
  std::vector<int> initial_ranks() const {
    int n = g_.atom_count();
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i)
      order[i] = i;
    std::vector<AtomInvariant> inv(n);
    for (int i = 0; i < n; ++i)
      inv[i] = atom_invariant(g_, adj_, i);
    std::sort(order.begin(), order.end(),
              [&](int x, int y) { return inv[x] < inv[y]; });
    std::vector<int> ranks(n, 0);
    int rank = 0;
    for (int k = 0; k < n; ++k) {
      if (k > 0 && inv[order[k]] != inv[order[k - 1]])
        ++rank;
      ranks[order[k]] = rank;
    }
    return ranks;
  }

  void refine(std::vector<int>& ranks) const {
    int n = g_.atom_count();
    while (true) {
      std::vector<std::vector<int>> keys(n);
      for (int i = 0; i < n; ++i) {
        std::vector<std::pair<int, int>> sig;
        sig.reserve(adj_[i].size());
        for (auto [bi, u] : adj_[i])
          sig.emplace_back(bond_label(g_.bonds[bi]), ranks[u]);
        std::sort(sig.begin(), sig.end());
        auto& key = keys[i];
        key.push_back(ranks[i]);
        for (auto [bl, r] : sig) {
          key.push_back(bl);
          key.push_back(r);
        }
      }
      auto next = dense_ranks_by_key(keys);
      if (next == ranks)
        return;
      ranks = std::move(next);
    }
  }

  void search(std::vector<int> ranks, std::string& best,
              std::vector<int>& best_ranks) const {
    refine(ranks);
    int tied_rank = tied_cell_rank(ranks);
    if (tied_rank < 0) {
      std::string s = emit(ranks);
      if (best.empty() || s < best) {
        best = s;
        best_ranks = ranks;
      }
      return;
    }
    for (int i = 0; i < g_.atom_count(); ++i) {
      if (ranks[i] != tied_rank)
        continue;
      search(individualize(ranks, i), best, best_ranks);
    }
  }

  // Smallest rank shared by more than one atom, or -1 when discrete.
  int tied_cell_rank(const std::vector<int>& ranks) const {
    int n = g_.atom_count();
    std::vector<int> count(n, 0);
    for (int r : ranks)
      ++count[r];
    int best = -1;
    for (int i = 0; i < n; ++i)
      if (count[ranks[i]] > 1 && (best < 0 || ranks[i] < best))
        best = ranks[i];
    return best;
  }

  static std::vector<int> individualize(const std::vector<int>& ranks, int i) {
    std::vector<int> next(ranks.size());
    for (std::size_t j = 0; j < ranks.size(); ++j)
      next[j] = ranks[j] * 2;
    next[i] -= 1;
    return next;
  }

  // --- emission ---

  struct EmitState {
    std::vector<bool> visited;
    // back edges keyed by bond index: ring digit assigned at open time
    std::map<int, int> ring_digit;
    std::set<int> free_digits;
    std::vector<std::vector<int>> opens;   // per atom: bond indices opening here
    std::vector<std::vector<int>> closes;  // per atom: bond indices closing here
  };

  std::string emit(const std::vector<int>& ranks) const {
    int n = g_.atom_count();
    int root = 0;
    for (int i = 0; i < n; ++i)
      if (ranks[i] < ranks[root])
        root = i;

    // Pass 1: DFS in rank order; classify tree vs ring-closure bonds and
    // note, per atom, which ring bonds open (ancestor side) and close
    // (descendant side) there.
    std::vector<bool> visited(n, false);
    std::vector<bool> bond_is_tree(g_.bond_count(), false);
    std::vector<bool> bond_seen(g_.bond_count(), false);
    EmitState st;
    st.opens.resize(n);
    st.closes.resize(n);
    collect(root, -1, ranks, visited, bond_is_tree, bond_seen, st);

    for (int d = 1; d < 100; ++d)
      st.free_digits.insert(d);
    st.visited.assign(n, false);

    std::string out;
    write_atom(root, -1, ranks, bond_is_tree, st, out);
    return out;
  }

  void collect(int v, int parent_bond, const std::vector<int>& ranks,
               std::vector<bool>& visited, std::vector<bool>& bond_is_tree,
               std::vector<bool>& bond_seen, EmitState& st) const {
    visited[v] = true;
    for (auto [bi, u] : sorted_neighbors(v, ranks)) {
      if (bi == parent_bond || bond_seen[bi])
        continue;
      if (visited[u]) {
        // Ring bond: u is an ancestor; digit opens at u, closes at v.
        bond_seen[bi] = true;
        st.opens[u].push_back(bi);
        st.closes[v].push_back(bi);
      } else {
        bond_seen[bi] = true;
        bond_is_tree[bi] = true;
        collect(u, bi, ranks, visited, bond_is_tree, bond_seen, st);
      }
    }
  }

  std::vector<std::pair<int, int>> sorted_neighbors(int v, const std::vector<int>& ranks) const {
    auto nbrs = adj_[v];
    std::sort(nbrs.begin(), nbrs.end(), [&](const auto& x, const auto& y) {
      return ranks[x.second] < ranks[y.second];
    });
    return nbrs;
  }

  void write_atom(int v, int incoming_bond, const std::vector<int>& ranks,
                  const std::vector<bool>& bond_is_tree, EmitState& st,
                  std::string& out) const {
    st.visited[v] = true;
    out += atom_token(g_.atoms[v]);

    // Ring closures first (digits already assigned at the open side),
    // ordered by digit; then ring opens, ordered by the far atom's rank.
    std::vector<int> closes = st.closes[v];
    std::sort(closes.begin(), closes.end(), [&](int x, int y) {
      return st.ring_digit.at(x) < st.ring_digit.at(y);
    });
    for (int bi : closes)
      out += digit_token(st.ring_digit.at(bi));

    std::vector<int> opens = st.opens[v];
    std::sort(opens.begin(), opens.end(), [&](int x, int y) {
      return ranks[other_end(x, v)] < ranks[other_end(y, v)];
    });
    for (int bi : opens) {
      if (st.free_digits.empty())
        throw std::runtime_error("too many simultaneously open ring closures");
      int d = *st.free_digits.begin();
      st.free_digits.erase(st.free_digits.begin());
      st.ring_digit[bi] = d;
      out += bond_token(g_.bonds[bi], g_.atoms[bi_a(bi)], g_.atoms[bi_b(bi)]);
      out += digit_token(d);
    }
    for (int bi : closes) {
      st.free_digits.insert(st.ring_digit.at(bi));
    }

    // Tree children in rank order; all but the last wrapped in parens.
    std::vector<std::pair<int, int>> children;
    for (auto [bi, u] : sorted_neighbors(v, ranks))
      if (bond_is_tree[bi] && bi != incoming_bond && !st.visited[u])
        children.emplace_back(bi, u);
    for (std::size_t k = 0; k < children.size(); ++k) {
      auto [bi, u] = children[k];
      bool last = k + 1 == children.size();
      if (!last)
        out += '(';
      out += bond_token(g_.bonds[bi], g_.atoms[v], g_.atoms[u]);
      write_atom(u, bi, ranks, bond_is_tree, st, out);
      if (!last)
        out += ')';
    }
  }

  int bi_a(int bi) const { return g_.bonds[bi].a; }
  int bi_b(int bi) const { return g_.bonds[bi].b; }
  int other_end(int bi, int v) const {
    return g_.bonds[bi].a == v ? g_.bonds[bi].b : g_.bonds[bi].a;
  }

  static std::string digit_token(int d) {
    if (d < 10)
      return std::string(1, static_cast<char>('0' + d));
    return "%" + std::to_string(d);
  }

  static std::string bond_token(const Bond& b, const Atom& x, const Atom& y) {
    switch (b.order) {
      case BondOrder::Single:
        if (b.dir == BondDir::Up)
          return "/";
        if (b.dir == BondDir::Down)
          return "\\";
        return (x.aromatic && y.aromatic) ? "-" : "";
      case BondOrder::Double:
        return "=";
      case BondOrder::Triple:
        return "#";
      case BondOrder::Aromatic:
        return (x.aromatic && y.aromatic) ? "" : ":";
    }
    return "";
  }

  static std::string atom_token(const Atom& a) {
    bool bare_ok = a.charge == 0 && a.stereo == AtomStereo::None &&
                   a.explicit_h == kImplicitH && is_organic_subset(a.element);
    std::string sym = a.element;
    if (a.aromatic)
      for (auto& c : sym)
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (bare_ok)
      return sym;
    std::string out = "[" + sym;
    if (a.stereo == AtomStereo::CCW)
      out += '@';
    else if (a.stereo == AtomStereo::CW)
      out += "@@";
    if (a.explicit_h == 1)
      out += 'H';
    else if (a.explicit_h > 1)
      out += 'H' + std::to_string(a.explicit_h);
    if (a.charge != 0) {
      out += a.charge > 0 ? '+' : '-';
      int mag = std::abs(a.charge);
      if (mag > 1)
        out += std::to_string(mag);
    }
    out += ']';
    return out;
  }

  const MolGraph& g_;
  Adjacency adj_;
};

}  // namespace

MoleculeKey canonicalize(const MolGraph& g) {
  g.validate();
  if (!g.connected())
    throw std::invalid_argument("cannot canonicalize a disconnected graph");
  return MoleculeKey{Canonicalizer(g).run()};
}

MoleculeKey canonical_key(std::string_view smiles) {
  return canonicalize(parse_smiles(smiles));
}

std::vector<int> canonical_ranks(const MolGraph& g) {
  g.validate();
  if (!g.connected())
    throw std::invalid_argument("cannot canonicalize a disconnected graph");
  return Canonicalizer(g).final_ranks();
}

}  // namespace retro::chem
