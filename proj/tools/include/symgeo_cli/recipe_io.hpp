#pragma once

#include <string>
#include <string_view>

#include "symgeo/manifold.hpp"

namespace symgeo::cli {

inline constexpr int kRecipeVersion = 1;
inline constexpr int kMaxRecipeDepth = 64;

// Text form:
//
//   recipe-version 1
//   node fibre_sum {
//     genus = 1
//     surface_m = "F"
//     note = "free text"
//     node elliptic_surface as base { n = 1  p = 1  q = 1 }
//     ref base
//   }
//
// `as <label>` names a node; `ref <label>` reuses a finished labelled node.
std::string serialize_recipe(const ConstructionRecipe& recipe);

// Strict: unknown operations, unknown keys, wrong value kinds, wrong input
// counts, cyclic refs and nesting deeper than kMaxRecipeDepth are errors.
// Messages carry "line:col".
ConstructionRecipe parse_recipe(std::string_view text);

}  // namespace symgeo::cli
