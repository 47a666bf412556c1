#include "retro/harness/inventory.hpp"

#include <stdexcept>

#include "retro/chem/canonical.hpp"
#include "retro/util/text_io.hpp"

namespace retro::harness {

Inventory Inventory::load(const std::string& path) {
  Inventory inv;
  inv.source_path_ = path;
  bool opened = for_each_line(path, [&](std::string&& line) {
    // Allow a trailing name column after whitespace, as in .smi files.
    auto end = line.find_first_of(" \t");
    std::string smiles = end == std::string::npos ? line : line.substr(0, end);
    if (smiles.empty())
      return;
    try {
      inv.members_.insert(chem::canonical_key(smiles));
    } catch (const std::exception&) {
      inv.bad_lines_ += 1;
    }
  });
  if (!opened)
    throw std::runtime_error("cannot open inventory file: " + path);
  return inv;
}

}  // namespace retro::harness
