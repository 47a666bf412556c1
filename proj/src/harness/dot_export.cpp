#include "retro/harness/dot_export.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace retro::harness {

namespace {

std::string escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (c == '"' || c == '\\')
      out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

void export_dot(const tree::AndOrTree& t, std::ostream& out) {
  out << "digraph andor {\n";
  out << "  rankdir=TB;\n";
  for (tree::OrId v = 0; v < t.or_count(); ++v) {
    const auto& node = t.or_node(v);
    const char* color = node.in_inventory ? "lightblue"
                        : node.solved     ? "palegreen"
                                          : "lightcoral";
    out << "  or" << v << " [shape=ellipse, style=filled, fillcolor=" << color
        << ", label=\"" << escape(node.molecule.smiles) << "\"];\n";
  }
  for (tree::AndId a = 0; a < t.and_count(); ++a) {
    const auto& node = t.and_node(a);
    char label[64];
    std::snprintf(label, sizeof label, "v\xCC\x84=%.3f, n=%d, d=%d", node.mean_value,
                  node.visits, node.depth);
    out << "  and" << a << " [shape=box, style=filled, fillcolor="
        << (node.solved ? "palegreen" : "white") << ", label=\"" << label << "\"];\n";
  }
  for (tree::AndId a = 0; a < t.and_count(); ++a) {
    const auto& node = t.and_node(a);
    out << "  or" << node.parent << " -> and" << a << ";\n";
    for (tree::OrId c : node.children)
      out << "  and" << a << " -> or" << c << ";\n";
  }
  out << "}\n";
}

void export_dot_file(const tree::AndOrTree& t, const std::string& path) {
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("cannot write DOT file: " + path);
  export_dot(t, out);
}

}  // namespace retro::harness
