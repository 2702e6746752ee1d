//
// Project fragretro
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <optional>
#include <span>
#include <string_view>

namespace fragretro {

// Atomic number 0 is reserved for the wildcard ("*") atom.
inline constexpr int kWildcard = 0;
inline constexpr int kMaxElement = 118;

std::string_view element_symbol(int atomic_number);

// Exact, case-sensitive symbol lookup ("Cl", not "CL").
std::optional<int> element_from_symbol(std::string_view symbol);

// Members of the SMILES organic subset may be written without brackets.
bool is_organic_subset(int atomic_number);

// Elements that may be spelled in lowercase (aromatic) form.
bool may_be_aromatic(int atomic_number);

// Default valences in ascending order; empty for elements without a
// valence model (their hydrogens are never inferred).
std::span<const int> default_valences(int atomic_number);

}  // namespace fragretro
