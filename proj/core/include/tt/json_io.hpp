#pragma once

#include <string>

#include "tt/entry_set.hpp"
#include "tt/grid.hpp"
#include "tt/margins.hpp"

namespace tt {

// Canonical JSON forms (keys sorted, no trailing newline):
//   margins:      {"cols":[...],"rows":[...]}
//   int table:    {"entries":[... row-major ...],"m":rows,"n":cols}
//   real matrix:  same shape with doubles
//   entry set:    [[i,j],...] with 1-based indices
// Parsers validate shape and invariants and throw tt errors on bad input.

std::string margins_to_json(const Margins& margins);
Margins margins_from_json(const std::string& text);

std::string table_to_json(const IntMat& table);
IntMat table_from_json(const std::string& text);

std::string real_matrix_to_json(const RealMat& x);
RealMat real_matrix_from_json(const std::string& text);

std::string entry_set_to_json(const EntrySet& s);
EntrySet entry_set_from_json(const std::string& text);

}  // namespace tt
