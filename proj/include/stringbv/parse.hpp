#pragma once

#include <string>
#include <string_view>

#include "stringbv/algebra.hpp"

namespace sbv {

/// Parses an element literal such as "x1*x2 + 3*y2^2*x1 - y3" against the
/// generator names of `spec`. Products are normal-formed, so repeated
/// exterior factors go through the square rules. Errors carry the column.
Element parse_element(const AlgebraSpec& spec, std::string_view text);

}  // namespace sbv
