#pragma once

#include <cstdint>
#include <string>

#include "tt/counting.hpp"
#include "tt/grid.hpp"
#include "tt/margins.hpp"

namespace tt {

// Exact rational matrix with one common denominator: value_ij = num_ij / den.
// Everything in this module that must be exact is carried in this form;
// floors become integer floor-divisions.
struct RationalMat {
  IntMat num;
  std::int64_t den = 1;

  int rows() const { return num.rows(); }
  int cols() const { return num.cols(); }
};

// Matrices with zero row and column sums form a lattice of rank
// (m-1)(n-1), with basis element (i,j) carrying +1 at (i,j) and (i+1,j+1),
// -1 at (i+1,j) and (i,j+1). The coordinates of x in this basis are the
// top-left partial sums:
//   c_ij = sum_{i' <= i, j' <= j} x_{i'j'},  1 <= i <= m-1, 1 <= j <= n-1,
// and reconstruction is the second difference of the (zero-padded)
// coordinate array.

// Coordinates of a real matrix with (approximately) zero margins. Throws
// NotInSubspace if any row or column sum exceeds `tol` in absolute value.
RealMat lattice_coords(const RealMat& x, double tol = 1e-9);

// Exact variant. Margins must vanish exactly.
RationalMat lattice_coords(const RationalMat& x);

// Inverse of lattice_coords: maps an (m-1) x (n-1) coordinate array to the
// m x n zero-margin matrix it represents.
template <typename T>
Grid<T> reconstruct_from_coords(const Grid<T>& c);

extern template Grid<std::int64_t> reconstruct_from_coords(const IntMat&);
extern template Grid<double> reconstruct_from_coords(const RealMat&);

// Entrywise floor(num/den), exact for negative values too.
IntMat floor_coords(const RationalMat& coords);

// Lattice rounding: the unique integer matrix y with anchor's margins such
// that x - y has all lattice coordinates in [0, 1). anchor must be an
// integer matrix whose margins equal x's (MarginMismatch otherwise, checked
// exactly).
IntMat round_to_lattice(const RationalMat& x, const IntMat& anchor);

// Deterministic base table for given margins: fill greedily in row-major
// order with min(remaining row, remaining column).
IntMat northwest_corner_table(const Margins& margins);

// The data defining the margin-contraction map T for a scale factor t:
//   d1 = ceil(d0 / t) + 2 entrywise,   b = d1 - d0/t  (so 2 <= b_ij < 3),
//   T(D) = round-to-lattice of (D/t + b) with anchor d1.
// Every T(D) has d1's margins; those margins sit between r_i/t + 2n and
// r_i/t + 3n (rows; columns likewise), and each target has at most
// t^((m-1)(n-1)) preimages.
struct ScalingContext {
  std::int64_t t = 1;
  IntMat d0;       // base table with the source margins
  IntMat d1;       // anchor table, margins = `scaled`
  Margins source;
  Margins scaled;

  RationalMat offset() const;  // b = d1 - d0/t, denominator t

  static ScalingContext create(const Margins& margins, std::int64_t t);
};

// Applies T. d must have the source margins.
IntMat t_scale(const ScalingContext& ctx, const IntMat& d);

// Number of source tables mapping to y, by full enumeration of the source
// fiber (CapExceeded if the source family is larger than `cap`).
BigInt preimage_count(const ScalingContext& ctx, const IntMat& y,
                      std::uint64_t cap);

// floor(N / (mn)^6): the scale factor used when contracting very large
// totals down to polynomial size. Returns 0 when N < (mn)^6; callers need
// t >= 1 for a usable context.
std::int64_t suggested_scale(const Margins& margins);

// JSON round-trip for contexts ({t, d0, d1, source and scaled margins}).
std::string scaling_context_to_json(const ScalingContext& ctx);
ScalingContext scaling_context_from_json(const std::string& json_text);

}  // namespace tt
