#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace symgeo {

enum class ErrorCode {
    basis_mismatch,
    name_collision,
    invalid_divisor_list,
    invalid_parameter,
    precondition,
    genus_mismatch,
    nonzero_self_intersection,
    divisible_class,
    not_torus,
    use_knot_surgery,
    not_elliptic,
    undeclared_triple,
    multiple_fibres_not_coprime,
    outside_persson_sector,
    exceptional_point,
    inconsistent_branch_data,
    pluri_map_unknown,
    cover_divisibility,
    spin_parity_obstruction,
    not_almost_complex,
    overflow,
    unknown_operation,
    parse_error,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace symgeo
