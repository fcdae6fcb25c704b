#include "symgeo/errors.hpp"

namespace symgeo {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::basis_mismatch: return "basis_mismatch";
        case ErrorCode::name_collision: return "name_collision";
        case ErrorCode::invalid_divisor_list: return "invalid_divisor_list";
        case ErrorCode::invalid_parameter: return "invalid_parameter";
        case ErrorCode::precondition: return "precondition";
        case ErrorCode::genus_mismatch: return "genus_mismatch";
        case ErrorCode::nonzero_self_intersection: return "nonzero_self_intersection";
        case ErrorCode::divisible_class: return "divisible_class";
        case ErrorCode::not_torus: return "not_torus";
        case ErrorCode::use_knot_surgery: return "use_knot_surgery";
        case ErrorCode::not_elliptic: return "not_elliptic";
        case ErrorCode::undeclared_triple: return "undeclared_triple";
        case ErrorCode::multiple_fibres_not_coprime: return "multiple_fibres_not_coprime";
        case ErrorCode::outside_persson_sector: return "outside_persson_sector";
        case ErrorCode::exceptional_point: return "exceptional_point";
        case ErrorCode::inconsistent_branch_data: return "inconsistent_branch_data";
        case ErrorCode::pluri_map_unknown: return "pluri_map_unknown";
        case ErrorCode::cover_divisibility: return "cover_divisibility";
        case ErrorCode::spin_parity_obstruction: return "spin_parity_obstruction";
        case ErrorCode::not_almost_complex: return "not_almost_complex";
        case ErrorCode::overflow: return "overflow";
        case ErrorCode::unknown_operation: return "unknown_operation";
        case ErrorCode::parse_error: return "parse_error";
    }
    return "unknown";
}

}  // namespace symgeo
