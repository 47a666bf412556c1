#pragma once

#include <cstdint>
#include <string>
#include <unordered_set>

#include "retro/chem/molgraph.hpp"

namespace retro::harness {

using chem::MoleculeKey;

// Building-block membership set. Keys are canonical; lookup is exact-key
// equality. Immutable after load; shared across searches.
class Inventory {
 public:
  Inventory() = default;

  // Newline-delimited SMILES, optionally .gz compressed. Every line is
  // canonicalized; unparseable lines are counted, not fatal. Throws on an
  // unreadable file.
  static Inventory load(const std::string& path);

  void add(MoleculeKey key) { members_.insert(std::move(key)); }
  bool contains(const MoleculeKey& key) const { return members_.contains(key); }
  std::size_t size() const { return members_.size(); }
  std::int64_t bad_lines() const { return bad_lines_; }
  const std::string& source_path() const { return source_path_; }
  const std::unordered_set<MoleculeKey>& members() const { return members_; }

 private:
  std::unordered_set<MoleculeKey> members_;
  std::int64_t bad_lines_ = 0;
  std::string source_path_;
};

}  // namespace retro::harness
