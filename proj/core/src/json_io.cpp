#include "tt/json_io.hpp"

#include <string>

#include "json_detail.hpp"

namespace tt {

namespace detail {

json parse_or_throw(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("bad JSON for ") + what + ": " + e.what());
  }
}

namespace {

// get<vector<int64>> would silently truncate floats, so integer-valued
// arrays are checked element by element first.
void require_integer_array(const json& arr, const char* what) {
  if (!arr.is_array())
    throw InvalidArgument(std::string(what) + " must be an array");
  for (const auto& v : arr)
    if (!v.is_number_integer())
      throw InvalidArgument(std::string(what) + " must hold integers only");
}

}  // namespace

json table_json(const IntMat& t) {
  json j;
  j["m"] = t.rows();
  j["n"] = t.cols();
  j["entries"] = t.raw();
  return j;
}

IntMat table_from(const json& j) {
  try {
    const int m = j.at("m").get<int>();
    const int n = j.at("n").get<int>();
    require_integer_array(j.at("entries"), "table entries");
    const auto entries = j.at("entries").get<std::vector<std::int64_t>>();
    if (m < 1 || n < 1)
      throw InvalidArgument("table dimensions must be positive");
    if (entries.size() != static_cast<std::size_t>(m) * n)
      throw ShapeMismatch("table entry list length does not match m*n");
    IntMat t(m, n);
    t.raw() = entries;
    return t;
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("bad table JSON: ") + e.what());
  }
}

json real_matrix_json(const RealMat& x) {
  json j;
  j["m"] = x.rows();
  j["n"] = x.cols();
  j["entries"] = x.raw();
  return j;
}

RealMat real_matrix_from(const json& j) {
  try {
    const int m = j.at("m").get<int>();
    const int n = j.at("n").get<int>();
    const auto entries = j.at("entries").get<std::vector<double>>();
    if (m < 1 || n < 1)
      throw InvalidArgument("matrix dimensions must be positive");
    if (entries.size() != static_cast<std::size_t>(m) * n)
      throw ShapeMismatch("matrix entry list length does not match m*n");
    RealMat x(m, n);
    x.raw() = entries;
    return x;
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("bad matrix JSON: ") + e.what());
  }
}

json margins_json(const Margins& m) {
  json j;
  j["rows"] = m.row_sums;
  j["cols"] = m.col_sums;
  return j;
}

Margins margins_from(const json& j) {
  try {
    require_integer_array(j.at("rows"), "row sums");
    require_integer_array(j.at("cols"), "column sums");
    return validate_margins(j.at("rows").get<std::vector<std::int64_t>>(),
                            j.at("cols").get<std::vector<std::int64_t>>());
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("bad margins JSON: ") + e.what());
  }
}

}  // namespace detail

std::string margins_to_json(const Margins& margins) {
  return detail::margins_json(margins).dump();
}

Margins margins_from_json(const std::string& text) {
  return detail::margins_from(detail::parse_or_throw(text, "margins"));
}

std::string table_to_json(const IntMat& table) {
  return detail::table_json(table).dump();
}

IntMat table_from_json(const std::string& text) {
  return detail::table_from(detail::parse_or_throw(text, "table"));
}

std::string real_matrix_to_json(const RealMat& x) {
  return detail::real_matrix_json(x).dump();
}

RealMat real_matrix_from_json(const std::string& text) {
  return detail::real_matrix_from(detail::parse_or_throw(text, "matrix"));
}

std::string entry_set_to_json(const EntrySet& s) {
  detail::json j = detail::json::array();
  for (const auto& [i, k] : s.cells()) j.push_back({i + 1, k + 1});
  return j.dump();
}

EntrySet entry_set_from_json(const std::string& text) {
  const detail::json j = detail::parse_or_throw(text, "entry set");
  try {
    std::vector<EntrySet::Index> cells;
    for (const auto& pair : j) {
      if (!pair.is_array() || pair.size() != 2)
        throw InvalidArgument("entry set cells must be [i, j] pairs");
      detail::require_integer_array(pair, "entry set cell");
      const int i = pair[0].get<int>();
      const int k = pair[1].get<int>();
      if (i < 1 || k < 1)
        throw InvalidArgument("entry set indices are 1-based and positive");
      cells.emplace_back(i - 1, k - 1);
    }
    return EntrySet(std::move(cells));
  } catch (const detail::json::exception& e) {
    throw InvalidArgument(std::string("bad entry set JSON: ") + e.what());
  }
}

}  // namespace tt
