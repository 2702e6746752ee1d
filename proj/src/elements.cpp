//
// Project fragretro
// SPDX-License-Identifier: Apache-2.0
//

#include "fragretro/elements.h"

#include <array>

namespace fragretro {
namespace {

constexpr std::array<std::string_view, kMaxElement + 1> kSymbols = {
  "*",  "H",  "He", "Li", "Be", "B",  "C",  "N",  "O",  "F",  "Ne", "Na",
  "Mg", "Al", "Si", "P",  "S",  "Cl", "Ar", "K",  "Ca", "Sc", "Ti", "V",
  "Cr", "Mn", "Fe", "Co", "Ni", "Cu", "Zn", "Ga", "Ge", "As", "Se", "Br",
  "Kr", "Rb", "Sr", "Y",  "Zr", "Nb", "Mo", "Tc", "Ru", "Rh", "Pd", "Ag",
  "Cd", "In", "Sn", "Sb", "Te", "I",  "Xe", "Cs", "Ba", "La", "Ce", "Pr",
  "Nd", "Pm", "Sm", "Eu", "Gd", "Tb", "Dy", "Ho", "Er", "Tm", "Yb", "Lu",
  "Hf", "Ta", "W",  "Re", "Os", "Ir", "Pt", "Au", "Hg", "Tl", "Pb", "Bi",
  "Po", "At", "Rn", "Fr", "Ra", "Ac", "Th", "Pa", "U",  "Np", "Pu", "Am",
  "Cm", "Bk", "Cf", "Es", "Fm", "Md", "No", "Lr", "Rf", "Db", "Sg", "Bh",
  "Hs", "Mt", "Ds", "Rg", "Cn", "Nh", "Fl", "Mc", "Lv", "Ts", "Og",
};

constexpr std::array<int, 1> kOne { 1 };
constexpr std::array<int, 1> kTwo { 2 };
constexpr std::array<int, 1> kThree { 3 };
constexpr std::array<int, 1> kFour { 4 };
constexpr std::array<int, 2> kNitrogen { 3, 5 };
constexpr std::array<int, 3> kSulfur { 2, 4, 6 };

}  // namespace

std::string_view element_symbol(int atomic_number) {
  if (atomic_number < 0 || atomic_number > kMaxElement)
    return "?";
  return kSymbols[atomic_number];
}

std::optional<int> element_from_symbol(std::string_view symbol) {
  for (int z = 0; z <= kMaxElement; ++z) {
    if (kSymbols[z] == symbol)
      return z;
  }
  return std::nullopt;
}

bool is_organic_subset(int z) {
  switch (z) {
  case 5:
  case 6:
  case 7:
  case 8:
  case 9:
  case 15:
  case 16:
  case 17:
  case 35:
  case 53:
    return true;
  default:
    return false;
  }
}

bool may_be_aromatic(int z) {
  switch (z) {
  case 5:
  case 6:
  case 7:
  case 8:
  case 15:
  case 16:
  case 33:
  case 34:
    return true;
  default:
    return false;
  }
}

std::span<const int> default_valences(int z) {
  switch (z) {
  case 1:
    return kOne;
  case 5:
    return kThree;
  case 6:
    return kFour;
  case 7:
  case 15:
    return kNitrogen;
  case 8:
    return kTwo;
  case 16:
    return kSulfur;
  case 9:
  case 17:
  case 35:
  case 53:
    return kOne;
  default:
    return {};
  }
}

}  // namespace fragretro
