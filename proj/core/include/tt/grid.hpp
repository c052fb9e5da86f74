#pragma once

#include <cstdint>
#include <initializer_list>
#include <vector>

#include "tt/errors.hpp"

namespace tt {

// Dense row-major rectangular array. This is deliberately minimal: the
// library does elementwise work only, so there is no linear algebra here.
template <typename T>
class Grid {
 public:
  Grid() = default;

  Grid(int rows, int cols, T fill = T{})
      : rows_(rows), cols_(cols),
        data_(checked_size(rows, cols), fill) {}

  static Grid from_rows(std::initializer_list<std::initializer_list<T>> rows) {
    Grid g;
    g.rows_ = static_cast<int>(rows.size());
    g.cols_ = g.rows_ == 0 ? 0 : static_cast<int>(rows.begin()->size());
    g.data_.reserve(static_cast<std::size_t>(g.rows_) * g.cols_);
    for (const auto& row : rows) {
      if (static_cast<int>(row.size()) != g.cols_)
        throw ShapeMismatch("ragged row in Grid::from_rows");
      g.data_.insert(g.data_.end(), row.begin(), row.end());
    }
    return g;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::int64_t size() const { return static_cast<std::int64_t>(rows_) * cols_; }

  T& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  const T& operator()(int i, int j) const {
    return data_[static_cast<std::size_t>(i) * cols_ + j];
  }

  T& at(int i, int j) {
    check_index(i, j);
    return (*this)(i, j);
  }
  const T& at(int i, int j) const {
    check_index(i, j);
    return (*this)(i, j);
  }

  bool in_bounds(int i, int j) const {
    return i >= 0 && i < rows_ && j >= 0 && j < cols_;
  }

  template <typename U>
  bool same_shape(const Grid<U>& other) const {
    return rows_ == other.rows() && cols_ == other.cols();
  }

  std::vector<T>& raw() { return data_; }
  const std::vector<T>& raw() const { return data_; }

  auto begin() { return data_.begin(); }
  auto end() { return data_.end(); }
  auto begin() const { return data_.begin(); }
  auto end() const { return data_.end(); }

  friend bool operator==(const Grid& a, const Grid& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  static std::size_t checked_size(int rows, int cols) {
    if (rows < 0 || cols < 0)
      throw InvalidArgument("grid dimensions must be non-negative");
    return static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
  }

  void check_index(int i, int j) const {
    if (!in_bounds(i, j))
      throw IndexOutOfBounds("grid index (" + std::to_string(i) + "," +
                             std::to_string(j) + ") outside " +
                             std::to_string(rows_) + "x" + std::to_string(cols_));
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<T> data_;
};

using IntMat = Grid<std::int64_t>;
using RealMat = Grid<double>;

template <typename T>
std::vector<T> row_sums(const Grid<T>& g) {
  std::vector<T> out(static_cast<std::size_t>(g.rows()), T{});
  for (int i = 0; i < g.rows(); ++i)
    for (int j = 0; j < g.cols(); ++j) out[i] += g(i, j);
  return out;
}

template <typename T>
std::vector<T> col_sums(const Grid<T>& g) {
  std::vector<T> out(static_cast<std::size_t>(g.cols()), T{});
  for (int i = 0; i < g.rows(); ++i)
    for (int j = 0; j < g.cols(); ++j) out[j] += g(i, j);
  return out;
}

}  // namespace tt
