#include "sba/error.hpp"

namespace sba {

std::string_view to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::duplicate_label: return "DuplicateLabel";
    case ErrorCode::size_out_of_range: return "SizeOutOfRange";
    case ErrorCode::mixed_algebra: return "MixedAlgebra";
    case ErrorCode::outside_interval: return "OutsideInterval";
    case ErrorCode::invalid_argument: return "InvalidArgument";
    case ErrorCode::cycle_in_order: return "CycleInOrder";
    case ErrorCode::axiom_a_violation: return "AxiomA-Violation";
    case ErrorCode::axiom_b_violation: return "AxiomB-Violation";
    case ErrorCode::nonpositive_mass: return "NonpositiveMass";
    case ErrorCode::empty_measure_list: return "EmptyMeasureList";
    case ErrorCode::not_divided: return "NotDivided";
    case ErrorCode::order_mismatch: return "OrderMismatch";
    case ErrorCode::empty_polytope: return "EmptyPolytope";
    case ErrorCode::embedding_not_faithful: return "EmbeddingNotFaithful";
    case ErrorCode::closure_collapse: return "ClosureCollapse";
    case ErrorCode::not_linear: return "NotLinear";
    case ErrorCode::zero_denominator: return "ZeroDenominator";
    case ErrorCode::condition_on_zero: return "ConditionOnZero";
    case ErrorCode::unsupported_size: return "UnsupportedSize";
    case ErrorCode::inconsistent_scale: return "InconsistentScale";
    case ErrorCode::parse_error: return "ParseError";
    }
    return "Error";
}

}  // namespace sba
