#include "tt/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "json_detail.hpp"
#include "tt/errors.hpp"

namespace tt {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  // b > 0; round toward minus infinity.
  std::int64_t q = a / b;
  if ((a % b) != 0 && a < 0) --q;
  return q;
}

void require_zero_margins_exact(const IntMat& num) {
  for (std::int64_t s : row_sums(num))
    if (s != 0) throw NotInSubspace("row sums must vanish exactly");
  for (std::int64_t s : col_sums(num))
    if (s != 0) throw NotInSubspace("column sums must vanish exactly");
}

}  // namespace

RealMat lattice_coords(const RealMat& x, double tol) {
  for (double s : row_sums(x))
    if (std::abs(s) > tol)
      throw NotInSubspace("row sum " + std::to_string(s) +
                          " exceeds tolerance " + std::to_string(tol));
  for (double s : col_sums(x))
    if (std::abs(s) > tol)
      throw NotInSubspace("column sum " + std::to_string(s) +
                          " exceeds tolerance " + std::to_string(tol));

  RealMat coords(std::max(x.rows() - 1, 0), std::max(x.cols() - 1, 0));
  // Running top-left partial sums, restricted to the leading block.
  std::vector<double> acc(static_cast<std::size_t>(x.cols()), 0.0);
  for (int i = 0; i < coords.rows(); ++i) {
    double run = 0.0;
    for (int j = 0; j < coords.cols(); ++j) {
      acc[j] += x(i, j);
      run += acc[j];
      coords(i, j) = run;
    }
  }
  return coords;
}

RationalMat lattice_coords(const RationalMat& x) {
  if (x.den < 1) throw InvalidArgument("rational denominator must be >= 1");
  require_zero_margins_exact(x.num);

  RationalMat coords;
  coords.den = x.den;
  coords.num = IntMat(std::max(x.rows() - 1, 0), std::max(x.cols() - 1, 0));
  std::vector<std::int64_t> acc(static_cast<std::size_t>(x.cols()), 0);
  for (int i = 0; i < coords.num.rows(); ++i) {
    std::int64_t run = 0;
    for (int j = 0; j < coords.num.cols(); ++j) {
      acc[j] += x.num(i, j);
      run += acc[j];
      coords.num(i, j) = run;
    }
  }
  return coords;
}

template <typename T>
Grid<T> reconstruct_from_coords(const Grid<T>& c) {
  Grid<T> out(c.rows() + 1, c.cols() + 1);
  auto at = [&](int i, int j) -> T {
    if (i < 0 || j < 0 || i >= c.rows() || j >= c.cols()) return T{};
    return c(i, j);
  };
  for (int i = 0; i < out.rows(); ++i)
    for (int j = 0; j < out.cols(); ++j)
      out(i, j) = at(i, j) - at(i - 1, j) - at(i, j - 1) + at(i - 1, j - 1);
  return out;
}

template Grid<std::int64_t> reconstruct_from_coords(const IntMat&);
template Grid<double> reconstruct_from_coords(const RealMat&);

IntMat floor_coords(const RationalMat& coords) {
  if (coords.den < 1) throw InvalidArgument("rational denominator must be >= 1");
  IntMat out(coords.rows(), coords.cols());
  for (int i = 0; i < out.rows(); ++i)
    for (int j = 0; j < out.cols(); ++j)
      out(i, j) = floor_div(coords.num(i, j), coords.den);
  return out;
}

IntMat round_to_lattice(const RationalMat& x, const IntMat& anchor) {
  if (x.rows() != anchor.rows() || x.cols() != anchor.cols())
    throw ShapeMismatch("anchor shape does not match the point being rounded");

  // diff = x - anchor must have exactly zero margins, i.e. x and the anchor
  // share margins; everything below is exact integer arithmetic.
  RationalMat diff;
  diff.den = x.den;
  diff.num = IntMat(x.rows(), x.cols());
  for (int i = 0; i < x.rows(); ++i)
    for (int j = 0; j < x.cols(); ++j)
      diff.num(i, j) = x.num(i, j) - x.den * anchor(i, j);
  try {
    const RationalMat coords = lattice_coords(diff);
    const IntMat rounded = reconstruct_from_coords(floor_coords(coords));
    IntMat y(anchor.rows(), anchor.cols());
    for (int i = 0; i < y.rows(); ++i)
      for (int j = 0; j < y.cols(); ++j) y(i, j) = anchor(i, j) + rounded(i, j);
    return y;
  } catch (const NotInSubspace&) {
    throw MarginMismatch("anchor margins differ from the point's margins");
  }
}

IntMat northwest_corner_table(const Margins& margins) {
  IntMat d(margins.rows(), margins.cols());
  std::vector<std::int64_t> row_left = margins.row_sums;
  std::vector<std::int64_t> col_left = margins.col_sums;
  for (int i = 0; i < d.rows(); ++i)
    for (int j = 0; j < d.cols(); ++j) {
      const std::int64_t v = std::min(row_left[i], col_left[j]);
      d(i, j) = v;
      row_left[i] -= v;
      col_left[j] -= v;
    }
  return d;
}

RationalMat ScalingContext::offset() const {
  RationalMat b;
  b.den = t;
  b.num = IntMat(d1.rows(), d1.cols());
  for (int i = 0; i < d1.rows(); ++i)
    for (int j = 0; j < d1.cols(); ++j)
      b.num(i, j) = t * d1(i, j) - d0(i, j);
  return b;
}

ScalingContext ScalingContext::create(const Margins& margins, std::int64_t t) {
  if (t < 1) throw InvalidArgument("scale factor t must be >= 1");
  ScalingContext ctx;
  ctx.t = t;
  ctx.source = margins;
  ctx.d0 = northwest_corner_table(margins);
  ctx.d1 = IntMat(margins.rows(), margins.cols());
  for (int i = 0; i < ctx.d1.rows(); ++i)
    for (int j = 0; j < ctx.d1.cols(); ++j)
      ctx.d1(i, j) = (ctx.d0(i, j) + t - 1) / t + 2;  // ceil(d0/t) + 2
  ctx.scaled = margins_of(ctx.d1);
  return ctx;
}

IntMat t_scale(const ScalingContext& ctx, const IntMat& d) {
  require_margins(d, ctx.source);
  // The point to round is d/t + b = (d - d0)/t + d1, kept over denominator t.
  RationalMat x;
  x.den = ctx.t;
  x.num = IntMat(d.rows(), d.cols());
  for (int i = 0; i < d.rows(); ++i)
    for (int j = 0; j < d.cols(); ++j)
      x.num(i, j) = d(i, j) - ctx.d0(i, j) + ctx.t * ctx.d1(i, j);
  return round_to_lattice(x, ctx.d1);
}

BigInt preimage_count(const ScalingContext& ctx, const IntMat& y,
                      std::uint64_t cap) {
  BigInt hits = 0;
  for (const IntMat& d : enumerate_tables(ctx.source, cap))
    if (t_scale(ctx, d) == y) ++hits;
  return hits;
}

std::int64_t suggested_scale(const Margins& margins) {
  const BigInt cells = BigInt(margins.rows()) * margins.cols();
  BigInt denom = 1;
  for (int k = 0; k < 6; ++k) denom *= cells;
  const BigInt t = BigInt(margins.total) / denom;
  return t.convert_to<std::int64_t>();
}

std::string scaling_context_to_json(const ScalingContext& ctx) {
  detail::json j;
  j["t"] = ctx.t;
  j["d0"] = detail::table_json(ctx.d0);
  j["d1"] = detail::table_json(ctx.d1);
  j["source"] = detail::margins_json(ctx.source);
  j["scaled"] = detail::margins_json(ctx.scaled);
  return j.dump();
}

ScalingContext scaling_context_from_json(const std::string& json_text) {
  const detail::json j = detail::parse_or_throw(json_text, "scaling context");
  try {
    ScalingContext ctx;
    ctx.t = j.at("t").get<std::int64_t>();
    if (ctx.t < 1) throw InvalidArgument("scale factor t must be >= 1");
    ctx.d0 = detail::table_from(j.at("d0"));
    ctx.d1 = detail::table_from(j.at("d1"));
    ctx.source = detail::margins_from(j.at("source"));
    ctx.scaled = detail::margins_from(j.at("scaled"));
    require_margins(ctx.d0, ctx.source);
    require_margins(ctx.d1, ctx.scaled);
    return ctx;
  } catch (const detail::json::exception& e) {
    throw InvalidArgument(std::string("bad scaling context JSON: ") + e.what());
  }
}

}  // namespace tt
