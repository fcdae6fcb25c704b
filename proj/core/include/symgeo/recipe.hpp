#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "symgeo/manifold.hpp"

namespace symgeo {

enum class ParamKind { integer, text, integer_list };
std::string_view to_string(ParamKind k) noexcept;

struct ParamSpec {
    std::string key;
    ParamKind kind = ParamKind::integer;
    bool required = true;
};

struct OperationSchema {
    std::string name;
    std::size_t inputs = 0;
    std::vector<ParamSpec> params;

    const ParamSpec* find(std::string_view key) const;
};

const OperationSchema* find_schema(std::string_view op);

// Shape check of a single node (operation, keys, value kinds, input count);
// throws ErrorCode::unknown_operation or ErrorCode::parse_error.
void check_recipe_node(const ConstructionRecipe& node);

// Names of every operation a recipe node may use.
const std::vector<std::string>& registered_operations();
bool is_registered_operation(std::string_view op);

// Re-runs a recipe tree. Parameters are type-checked strictly: unknown or
// missing keys and wrong input counts raise ErrorCode::parse_error.
ManifoldDescriptor execute_recipe(const ConstructionRecipe& recipe);

}  // namespace symgeo
