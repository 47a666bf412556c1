#pragma once

#include <ostream>
#include <string>

#include "retro/tree/and_or_tree.hpp"

namespace retro::harness {

// DOT digraph of the search tree: OR nodes as ellipses labeled with the
// canonical SMILES and colored by status (inventory / solved / open), AND
// nodes as boxes labeled with mean value, visits and depth. Node order is
// stable (arena order).
void export_dot(const tree::AndOrTree& t, std::ostream& out);

// Throws std::runtime_error when the path is unwritable.
void export_dot_file(const tree::AndOrTree& t, const std::string& path);

}  // namespace retro::harness
