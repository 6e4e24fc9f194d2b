#pragma once

#include "sba/scaling.hpp"

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sba {

/// On-disk form of a scaling: atoms, named classes of subsets, cover pairs.
struct ScalingDocument {
    std::vector<std::string> atoms;
    std::vector<std::pair<std::string, std::vector<std::vector<std::string>>>> classes;  // in file order
    std::vector<std::pair<std::string, std::string>> order;
    friend bool operator==(const ScalingDocument&, const ScalingDocument&) = default;
};

/// Throws parse_error with a line/column or field path in the message.
ScalingDocument parse_document(std::string_view json_text);
std::string serialize_document(const ScalingDocument& doc);

/// Throws parse_error on schema problems (subset missing or repeated,
/// unknown class or atom), cycle_in_order, and with `verify` the axiom errors.
Scaling to_scaling(const ScalingDocument& doc, bool verify = true);

/// Normal form: classes in class order, subsets by mask, cover pairs only.
ScalingDocument to_document(const Scaling& s);

/// Reads a file; throws parse_error if it cannot be opened.
ScalingDocument load_document(const std::string& path);

}  // namespace sba
