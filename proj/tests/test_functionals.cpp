#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "test_util.hpp"
#include "tt/tt.hpp"

using namespace tt;
using ttt::mk;

TEST_CASE("g at hand-evaluated points") {
  CHECK(g_scalar(0.0) == 0.0);
  CHECK(ttt::close(g_scalar(1.0), 2.0 * std::log(2.0), 1e-15));
  // g(1/2) = (3/2) ln(3/2) + (1/2) ln 2
  CHECK(ttt::close(g_scalar(0.5), 1.5 * std::log(1.5) + 0.5 * std::log(2.0),
                   1e-15));
  CHECK_THROWS_AS(g_scalar(-0.1), NegativeEntry);
}

TEST_CASE("g is strictly concave and increasing on a grid") {
  double prev = -1.0;
  for (double x = 0.0; x <= 20.0; x += 0.25) {
    const double val = g_scalar(x);
    CHECK(val > prev);  // increasing
    prev = val;
  }
  // Midpoint concavity on pairs straddling several scales.
  for (double a : {0.0, 0.3, 1.0, 4.0, 9.0})
    for (double b : {0.1, 2.0, 7.5, 19.0}) {
      const double mid = g_scalar(0.5 * (a + b));
      CHECK(mid > 0.5 * (g_scalar(a) + g_scalar(b)) - 1e-12);
    }
}

TEST_CASE("g_value of the half matrix is ln(729/16)") {
  const RealMat z(2, 2, 0.5);
  CHECK(ttt::close(g_value(z), std::log(729.0 / 16.0), 1e-13));
  CHECK(ttt::close(g_value(z), 6.0 * std::log(3.0) - 4.0 * std::log(2.0),
                   1e-13));
}

TEST_CASE("independence table reproduces margins and known entries") {
  const Margins m = mk({3, 1}, {2, 1, 1});
  const RealMat y = independence_table(m);
  CHECK(ttt::close(y(0, 0), 1.5, 1e-15));
  CHECK(ttt::close(y(1, 2), 0.25, 1e-15));

  const auto rs = row_sums(y);
  const auto cs = col_sums(y);
  for (int i = 0; i < m.rows(); ++i)
    CHECK(ttt::close_rel(rs[i], static_cast<double>(m.row_sums[i]), 1e-12));
  for (int j = 0; j < m.cols(); ++j)
    CHECK(ttt::close_rel(cs[j], static_cast<double>(m.col_sums[j]), 1e-12));
}

TEST_CASE("entropy of the flat 2x2 half matrix is ln 4") {
  const RealMat x(2, 2, 0.5);
  CHECK(ttt::close(entropy_H(x, 2.0), std::log(4.0), 1e-14));
  CHECK_THROWS_AS(entropy_H(x, 0.0), NonPositiveTotal);
  CHECK_THROWS_AS(entropy_H(x, -2.0), NonPositiveTotal);
}

TEST_CASE("entropy ignores zero cells") {
  const RealMat x = RealMat::from_rows({{2.0, 0.0}, {0.0, 2.0}});
  CHECK(ttt::close(entropy_H(x, 4.0), std::log(2.0), 1e-14));
}

TEST_CASE("independence maximizes entropy among tables with its margins") {
  const Margins m = mk({3, 1}, {2, 1, 1});
  const RealMat y = independence_table(m);
  const double h_y = entropy_H(y, static_cast<double>(m.total));
  for (const IntMat& d : enumerate_tables(m, 1000)) {
    RealMat xd(d.rows(), d.cols());
    for (int i = 0; i < d.rows(); ++i)
      for (int j = 0; j < d.cols(); ++j)
        xd(i, j) = static_cast<double>(d(i, j));
    CHECK(entropy_H(xd, static_cast<double>(m.total)) <= h_y + 1e-12);
  }
}

TEST_CASE("shuffle-measure mass of the 2x2 identity is 1/2") {
  const Margins m = mk({1, 1}, {1, 1});
  const IntMat id = IntMat::from_rows({{1, 0}, {0, 1}});
  CHECK(ttt::close(fisher_yates_log_mass(id, m), std::log(0.5), 1e-14));
  const IntMat anti = IntMat::from_rows({{0, 1}, {1, 0}});
  CHECK(ttt::close(fisher_yates_log_mass(anti, m), std::log(0.5), 1e-14));
}

TEST_CASE("shuffle-measure masses sum to one over a full family") {
  for (const Margins& m :
       {mk({2, 2}, {2, 2}), mk({3, 1}, {2, 1, 1}), mk({3, 2, 1}, {2, 2, 2})}) {
    double total = 0.0;
    for (const IntMat& d : enumerate_tables(m, 10000))
      total += std::exp(fisher_yates_log_mass(d, m));
    CHECK(ttt::close(total, 1.0, 1e-10));
  }
}

TEST_CASE("shuffle-measure rejects tables with other margins") {
  const Margins m = mk({1, 1}, {1, 1});
  const IntMat wrong = IntMat::from_rows({{1, 1}, {0, 0}});
  CHECK_THROWS_AS(fisher_yates_log_mass(wrong, m), MarginMismatch);
}
