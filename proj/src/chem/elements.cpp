#include "retro/chem/elements.hpp"

#include <array>
#include <string_view>
#include <unordered_map>

namespace retro::chem {

namespace {

struct ElementInfo {
  std::string_view symbol;
  double weight;  // standard atomic weight; 0 when conventional value is unused
};

// Symbols H..Og with standard atomic weights (abridged, 2021 IUPAC values;
// most stable isotope mass for elements without a standard weight).
constexpr std::array<ElementInfo, 118> kElements{{
    {"H", 1.008},    {"He", 4.0026},  {"Li", 6.94},    {"Be", 9.0122},
    {"B", 10.81},    {"C", 12.011},   {"N", 14.007},   {"O", 15.999},
    {"F", 18.998},   {"Ne", 20.180},  {"Na", 22.990},  {"Mg", 24.305},
    {"Al", 26.982},  {"Si", 28.085},  {"P", 30.974},   {"S", 32.06},
    {"Cl", 35.45},   {"Ar", 39.948},  {"K", 39.098},   {"Ca", 40.078},
    {"Sc", 44.956},  {"Ti", 47.867},  {"V", 50.942},   {"Cr", 51.996},
    {"Mn", 54.938},  {"Fe", 55.845},  {"Co", 58.933},  {"Ni", 58.693},
    {"Cu", 63.546},  {"Zn", 65.38},   {"Ga", 69.723},  {"Ge", 72.630},
    {"As", 74.922},  {"Se", 78.971},  {"Br", 79.904},  {"Kr", 83.798},
    {"Rb", 85.468},  {"Sr", 87.62},   {"Y", 88.906},   {"Zr", 91.224},
    {"Nb", 92.906},  {"Mo", 95.95},   {"Tc", 97.0},    {"Ru", 101.07},
    {"Rh", 102.91},  {"Pd", 106.42},  {"Ag", 107.87},  {"Cd", 112.41},
    {"In", 114.82},  {"Sn", 118.71},  {"Sb", 121.76},  {"Te", 127.60},
    {"I", 126.90},   {"Xe", 131.29},  {"Cs", 132.91},  {"Ba", 137.33},
    {"La", 138.91},  {"Ce", 140.12},  {"Pr", 140.91},  {"Nd", 144.24},
    {"Pm", 145.0},   {"Sm", 150.36},  {"Eu", 151.96},  {"Gd", 157.25},
    {"Tb", 158.93},  {"Dy", 162.50},  {"Ho", 164.93},  {"Er", 167.26},
    {"Tm", 168.93},  {"Yb", 173.05},  {"Lu", 174.97},  {"Hf", 178.49},
    {"Ta", 180.95},  {"W", 183.84},   {"Re", 186.21},  {"Os", 190.23},
    {"Ir", 192.22},  {"Pt", 195.08},  {"Au", 196.97},  {"Hg", 200.59},
    {"Tl", 204.38},  {"Pb", 207.2},   {"Bi", 208.98},  {"Po", 209.0},
    {"At", 210.0},   {"Rn", 222.0},   {"Fr", 223.0},   {"Ra", 226.0},
    {"Ac", 227.0},   {"Th", 232.04},  {"Pa", 231.04},  {"U", 238.03},
    {"Np", 237.0},   {"Pu", 244.0},   {"Am", 243.0},   {"Cm", 247.0},
    {"Bk", 247.0},   {"Cf", 251.0},   {"Es", 252.0},   {"Fm", 257.0},
    {"Md", 258.0},   {"No", 259.0},   {"Lr", 266.0},   {"Rf", 267.0},
    {"Db", 268.0},   {"Sg", 269.0},   {"Bh", 270.0},   {"Hs", 277.0},
    {"Mt", 278.0},   {"Ds", 281.0},   {"Rg", 282.0},   {"Cn", 285.0},
    {"Nh", 286.0},   {"Fl", 289.0},   {"Mc", 290.0},   {"Lv", 293.0},
    {"Ts", 294.0},   {"Og", 294.0},
}};

const std::unordered_map<std::string_view, double>& weight_table() {
  static const auto* table = [] {
    auto* m = new std::unordered_map<std::string_view, double>();
    for (const auto& e : kElements)
      m->emplace(e.symbol, e.weight);
    return m;
  }();
  return *table;
}

}  // namespace

bool is_known_element(std::string_view symbol) {
  return weight_table().contains(symbol);
}

bool is_organic_subset(std::string_view symbol) {
  return symbol == "B" || symbol == "C" || symbol == "N" || symbol == "O" ||
         symbol == "P" || symbol == "S" || symbol == "F" || symbol == "Cl" ||
         symbol == "Br" || symbol == "I";
}

bool can_be_aromatic(std::string_view symbol) {
  return symbol == "b" || symbol == "c" || symbol == "n" || symbol == "o" ||
         symbol == "p" || symbol == "s" || symbol == "B" || symbol == "C" ||
         symbol == "N" || symbol == "O" || symbol == "P" || symbol == "S" ||
         symbol == "Se" || symbol == "As" || symbol == "se" || symbol == "as";
}

std::optional<double> atomic_weight(std::string_view symbol) {
  auto it = weight_table().find(symbol);
  if (it == weight_table().end())
    return std::nullopt;
  return it->second;
}

const int* default_valences(std::string_view symbol, int* count) {
  static constexpr int kB[] = {3};
  static constexpr int kC[] = {4};
  static constexpr int kN[] = {3, 5};
  static constexpr int kO[] = {2};
  static constexpr int kP[] = {3, 5};
  static constexpr int kS[] = {2, 4, 6};
  static constexpr int kHalogen[] = {1};
  *count = 0;
  const int* list = nullptr;
  if (symbol == "B") { list = kB; *count = 1; }
  else if (symbol == "C") { list = kC; *count = 1; }
  else if (symbol == "N") { list = kN; *count = 2; }
  else if (symbol == "O") { list = kO; *count = 1; }
  else if (symbol == "P") { list = kP; *count = 2; }
  else if (symbol == "S") { list = kS; *count = 3; }
  else if (symbol == "F" || symbol == "Cl" || symbol == "Br" || symbol == "I") {
    list = kHalogen;
    *count = 1;
  }
  return list;
}

}  // namespace retro::chem
