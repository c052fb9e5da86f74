#pragma once

// Shared nlohmann-json builders for the wire schemas. Private to the
// library; public headers expose strings only, so consumers of the
// installed package never need the vendored json header.

#include <json.hpp>

#include "tt/errors.hpp"
#include "tt/grid.hpp"
#include "tt/margins.hpp"

namespace tt::detail {

using nlohmann::json;

json table_json(const IntMat& t);
IntMat table_from(const json& j);

json real_matrix_json(const RealMat& x);
RealMat real_matrix_from(const json& j);

json margins_json(const Margins& m);
Margins margins_from(const json& j);

// Parses with json exceptions rewrapped as tt::InvalidArgument.
json parse_or_throw(const std::string& text, const char* what);

}  // namespace tt::detail
