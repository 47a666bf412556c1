#include "retro/chem/smiles.hpp"

#include <cctype>
#include <map>
#include <optional>
#include <vector>

#include "retro/chem/elements.hpp"

namespace retro::chem {

namespace {

struct PendingBond {
  BondOrder order = BondOrder::Single;
  BondDir dir = BondDir::None;
  bool aromatic_default = false;  // true when no symbol was written
};

struct RingOpen {
  int atom = -1;
  std::optional<PendingBond> bond;
  std::size_t offset = 0;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  MolGraph run() {
    if (text_.empty())
      fail(0, "empty SMILES");
    while (pos_ < text_.size())
      step();
    if (!branch_stack_.empty())
      fail(branch_stack_.back().second, "unclosed branch");
    if (!ring_open_.empty())
      fail(ring_open_.begin()->second.offset, "dangling ring closure");
    if (pending_)
      fail(pending_offset_, "dangling bond symbol");
    graph_.validate();
    return std::move(graph_);
  }

 private:
  void step() {
    char c = text_[pos_];
    switch (c) {
      case '(': {
        if (prev_ < 0)
          fail(pos_, "branch before any atom");
        if (pending_)
          fail(pos_, "bond symbol before branch open");
        branch_stack_.emplace_back(prev_, pos_);
        ++pos_;
        return;
      }
      case ')': {
        if (branch_stack_.empty())
          fail(pos_, "unmatched branch close");
        if (pending_)
          fail(pos_, "dangling bond symbol before branch close");
        prev_ = branch_stack_.back().first;
        branch_stack_.pop_back();
        ++pos_;
        return;
      }
      case '-': case '=': case '#': case ':': case '/': case '\\': {
        if (pending_)
          fail(pos_, "two consecutive bond symbols");
        pending_ = bond_from_symbol(c);
        pending_offset_ = pos_;
        ++pos_;
        return;
      }
      case '%': {
        std::size_t at = pos_;
        if (pos_ + 2 >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])) ||
            !std::isdigit(static_cast<unsigned char>(text_[pos_ + 2])))
          fail(at, "%% ring closure needs two digits");
        int num = (text_[pos_ + 1] - '0') * 10 + (text_[pos_ + 2] - '0');
        pos_ += 3;
        ring_closure(num, at);
        return;
      }
      case '.':
        fail(pos_, "dot-separated components are not supported");
        return;
      case '>':
        fail(pos_, "reaction arrows are not supported");
        return;
      case '[': {
        int idx = parse_bracket_atom();
        link_atom(idx);
        return;
      }
      default:
        break;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t at = pos_;
      ++pos_;
      ring_closure(c - '0', at);
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      int idx = parse_organic_atom();
      link_atom(idx);
      return;
    }
    fail(pos_, "unexpected character");
  }

  PendingBond bond_from_symbol(char c) {
    switch (c) {
      case '-': return {BondOrder::Single, BondDir::None, false};
      case '=': return {BondOrder::Double, BondDir::None, false};
      case '#': return {BondOrder::Triple, BondDir::None, false};
      case ':': return {BondOrder::Aromatic, BondDir::None, false};
      case '/': return {BondOrder::Single, BondDir::Up, false};
      default:  return {BondOrder::Single, BondDir::Down, false};
    }
  }

  void link_atom(int idx) {
    if (prev_ >= 0)
      add_bond(prev_, idx, pending_);
    else if (pending_)
      fail(pending_offset_, "bond symbol before first atom");
    pending_.reset();
    prev_ = idx;
  }

  void add_bond(int a, int b, const std::optional<PendingBond>& pb) {
    Bond bond;
    bond.a = a;
    bond.b = b;
    if (pb) {
      bond.order = pb->order;
      bond.dir = pb->dir;
    } else {
      bond.order = (graph_.atoms[a].aromatic && graph_.atoms[b].aromatic)
                       ? BondOrder::Aromatic
                       : BondOrder::Single;
    }
    for (const auto& existing : graph_.bonds) {
      if ((existing.a == a && existing.b == b) || (existing.a == b && existing.b == a))
        fail(pos_, "duplicate bond between the same atom pair");
    }
    graph_.bonds.push_back(bond);
  }

  void ring_closure(int num, std::size_t at) {
    if (prev_ < 0)
      fail(at, "ring closure before any atom");
    auto it = ring_open_.find(num);
    if (it == ring_open_.end()) {
      ring_open_[num] = RingOpen{prev_, pending_, at};
      pending_.reset();
      return;
    }
    RingOpen open = it->second;
    ring_open_.erase(it);
    if (open.atom == prev_)
      fail(at, "ring closure to the same atom");
    std::optional<PendingBond> bond;
    if (open.bond && pending_) {
      if (open.bond->order != pending_->order || open.bond->dir != pending_->dir)
        fail(at, "conflicting bond symbols on ring closure");
      bond = pending_;
    } else if (open.bond) {
      bond = open.bond;
    } else if (pending_) {
      bond = pending_;
    }
    add_bond(open.atom, prev_, bond);
    pending_.reset();
  }

  int parse_organic_atom() {
    std::size_t at = pos_;
    char c = text_[pos_];
    Atom atom;
    // Two-letter symbols first.
    if ((c == 'C' || c == 'B') && pos_ + 1 < text_.size()) {
      char d = text_[pos_ + 1];
      if (c == 'C' && d == 'l') {
        atom.element = "Cl";
        pos_ += 2;
        return push_atom(atom);
      }
      if (c == 'B' && d == 'r') {
        atom.element = "Br";
        pos_ += 2;
        return push_atom(atom);
      }
    }
    switch (c) {
      case 'B': case 'C': case 'N': case 'O': case 'P': case 'S': case 'F': case 'I':
        atom.element = std::string(1, c);
        break;
      case 'b': case 'c': case 'n': case 'o': case 'p': case 's':
        atom.element = std::string(1, static_cast<char>(std::toupper(c)));
        atom.aromatic = true;
        break;
      default:
        fail(at, "unknown atom symbol outside brackets");
    }
    ++pos_;
    return push_atom(atom);
  }

  int parse_bracket_atom() {
    std::size_t at = pos_;
    ++pos_;  // '['
    if (pos_ >= text_.size())
      fail(at, "unterminated bracket atom");
    if (std::isdigit(static_cast<unsigned char>(text_[pos_])))
      fail(pos_, "isotope specifications are not supported");
    if (text_[pos_] == '*')
      fail(pos_, "wildcard atoms are not supported");

    Atom atom;
    atom.explicit_h = 0;

    // Element symbol: an upper-case letter optionally followed by a lower
    // case one, or a lower-case aromatic symbol (c n o p s b se as).
    char c = text_[pos_];
    if (std::isupper(static_cast<unsigned char>(c))) {
      // A bracket holds exactly one atom, so a lower-case continuation that
      // forms a known element is always that element ([Sc] is scandium).
      std::string sym(1, c);
      if (pos_ + 1 < text_.size() && std::islower(static_cast<unsigned char>(text_[pos_ + 1])) &&
          is_known_element(sym + text_[pos_ + 1])) {
        sym += text_[pos_ + 1];
      }
      if (!is_known_element(sym))
        fail(pos_, "unknown element in bracket atom");
      atom.element = sym;
      pos_ += sym.size();
    } else if (std::islower(static_cast<unsigned char>(c))) {
      std::string sym(1, c);
      if ((c == 's' || c == 'a') && pos_ + 1 < text_.size() &&
          (text_[pos_ + 1] == 'e' || text_[pos_ + 1] == 's')) {
        std::string two = sym + text_[pos_ + 1];
        if (two == "se" || two == "as")
          sym = two;
      }
      std::string canonical(sym);
      canonical[0] = static_cast<char>(std::toupper(canonical[0]));
      if (!is_known_element(canonical) || !can_be_aromatic(sym))
        fail(pos_, "unknown aromatic symbol in bracket atom");
      atom.element = canonical;
      atom.aromatic = true;
      pos_ += sym.size();
    } else {
      fail(pos_, "expected element symbol in bracket atom");
    }

    // Stereo marker.
    if (pos_ < text_.size() && text_[pos_] == '@') {
      if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '@') {
        atom.stereo = AtomStereo::CW;
        pos_ += 2;
      } else {
        atom.stereo = AtomStereo::CCW;
        ++pos_;
      }
    }

    // Hydrogen count.
    if (pos_ < text_.size() && text_[pos_] == 'H') {
      ++pos_;
      if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        atom.explicit_h = text_[pos_] - '0';
        ++pos_;
      } else {
        atom.explicit_h = 1;
      }
    }

    // Charge.
    if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
      char sign = text_[pos_];
      int magnitude = 1;
      ++pos_;
      if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        magnitude = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
          magnitude = magnitude * 10 + (text_[pos_] - '0');
          if (magnitude > 15)
            fail(pos_, "invalid charge magnitude");
          ++pos_;
        }
      } else {
        while (pos_ < text_.size() && text_[pos_] == sign) {
          ++magnitude;
          ++pos_;
        }
        if (magnitude > 15)
          fail(pos_, "invalid charge magnitude");
      }
      atom.charge = sign == '+' ? magnitude : -magnitude;
    }

    if (pos_ >= text_.size() || text_[pos_] != ']')
      fail(pos_ < text_.size() ? pos_ : text_.size(), "expected ']' in bracket atom");
    ++pos_;
    return push_atom(atom);
  }

  int push_atom(const Atom& atom) {
    graph_.atoms.push_back(atom);
    return graph_.atom_count() - 1;
  }

  [[noreturn]] void fail(std::size_t offset, const std::string& what) {
    throw SmilesError(offset, what);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  MolGraph graph_;
  int prev_ = -1;
  std::optional<PendingBond> pending_;
  std::size_t pending_offset_ = 0;
  std::vector<std::pair<int, std::size_t>> branch_stack_;  // (atom, '(' offset)
  std::map<int, RingOpen> ring_open_;
};

}  // namespace

MolGraph parse_smiles(std::string_view text) {
  return Parser(text).run();
}

}  // namespace retro::chem
