#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sba {

enum class ErrorCode {
    duplicate_label,
    size_out_of_range,
    mixed_algebra,
    outside_interval,
    invalid_argument,
    cycle_in_order,
    axiom_a_violation,
    axiom_b_violation,
    nonpositive_mass,
    empty_measure_list,
    not_divided,
    order_mismatch,
    empty_polytope,
    embedding_not_faithful,
    closure_collapse,
    not_linear,
    zero_denominator,
    condition_on_zero,
    unsupported_size,
    inconsistent_scale,
    parse_error,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace sba
