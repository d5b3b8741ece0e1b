#include <doctest.h>

#include <cmath>
#include <random>

#include "purfit/errors.hpp"
#include "purfit/ipf.hpp"
#include "purfit/metrics.hpp"
#include "purfit/sampling.hpp"
#include "support/fixtures.hpp"

using namespace purfit;
using purfit::testing::t1;
using purfit::testing::t1_schema;

namespace {

// Two-cell distributions stretched over the 8-cell schema: mass split over
// (y=0) and (y=1) halves, uniform within each half.
JointTable two_level(double p0) {
  std::vector<double> v(8);
  for (std::size_t a = 0; a < 4; ++a) v[a] = p0 / 4.0;
  for (std::size_t a = 4; a < 8; ++a) v[a] = (1.0 - p0) / 4.0;
  return JointTable(t1_schema(), v);
}

}  // namespace

TEST_CASE("KL divergence in nats") {
  auto p = two_level(0.5);
  auto q = two_level(0.25);
  CHECK(kl_divergence(p, p) == 0.0);
  // 0.5 ln 2 + 0.5 ln(2/3)
  CHECK(kl_divergence(p, q) == doctest::Approx(0.143841).epsilon(1e-5));

  JointTable point0(t1_schema(), {1, 0, 0, 0, 0, 0, 0, 0});
  JointTable point1(t1_schema(), {0, 1, 0, 0, 0, 0, 0, 0});
  CHECK(std::isinf(kl_divergence(point0, point1)));
}

TEST_CASE("KL divergence is non-negative and vanishes only at equality") {
  std::mt19937_64 gen(41);
  for (int trial = 0; trial < 30; ++trial) {
    JointTable p = purfit::testing::random_positive_table(t1_schema(), gen);
    JointTable q = purfit::testing::random_positive_table(t1_schema(), gen);
    const double d = kl_divergence(p, q);
    CHECK(d >= 0.0);
    double gap = 0.0;
    for (std::size_t a = 0; a < p.size(); ++a) gap = std::max(gap, std::abs(p[a] - q[a]));
    if (gap > 1e-3) CHECK(d > 0.0);
  }
}

TEST_CASE("entropy in nats") {
  JointTable point(t1_schema(), {1, 0, 0, 0, 0, 0, 0, 0});
  CHECK(entropy(point) == 0.0);

  JointTable u(t1_schema(), std::vector<double>(8, 0.125));
  CHECK(entropy(u) == doctest::Approx(std::log(8.0)).epsilon(1e-12));

  JointTable half(t1_schema(), {0.5, 0.25, 0.25, 0, 0, 0, 0, 0});
  CHECK(entropy(half) == doctest::Approx(1.5 * std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("entropy equals log M minus KL to uniform on full support") {
  std::mt19937_64 gen(43);
  JointTable u(t1_schema(), std::vector<double>(8, 0.125));
  for (int trial = 0; trial < 10; ++trial) {
    JointTable p = purfit::testing::random_positive_table(t1_schema(), gen);
    CHECK(std::abs(entropy(p) - (std::log(8.0) - kl_divergence(p, u))) <= 1e-12);
  }
}

TEST_CASE("attributable disparity against a reference group") {
  // Independent table: zero disparity everywhere.
  JointTable u(t1_schema(), std::vector<double>(8, 0.125));
  auto flat = attributable_disparity(u, std::vector<std::string>{"a"});
  for (std::size_t y = 0; y < 2; ++y)
    for (std::size_t s = 0; s < 2; ++s) CHECK(flat.difference_at(y, s) == 0.0);

  auto report = attributable_disparity(t1(), std::vector<std::string>{"a"});
  CHECK(report.s0 == 0);
  CHECK(report.difference_at(1, 1) == doctest::Approx(-0.6).epsilon(1e-12));
  CHECK(report.difference_at(0, 1) == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(report.difference_at(0, 0) == 0.0);
  CHECK(report.difference_at(1, 0) == 0.0);

  auto q = project(t1(), build_constraints(t1(), ConstraintMode::pur)).table;
  auto fair = attributable_disparity(q, std::vector<std::string>{"a"});
  for (std::size_t y = 0; y < 2; ++y)
    for (std::size_t s = 0; s < 2; ++s)
      CHECK(std::abs(fair.difference_at(y, s)) <= 1e-10);
}

TEST_CASE("disparity entries for zero-mass groups are undefined") {
  JointTable lop(t1_schema(), {0.25, 0.25, 0.0, 0.0, 0.25, 0.25, 0.0, 0.0});
  auto report = attributable_disparity(lop, std::vector<std::string>{"a"});
  CHECK(report.defined[0]);
  CHECK_FALSE(report.defined[1]);
  CHECK_THROWS_AS(attributable_disparity(lop, std::vector<std::string>{"b"}),
                  ArgumentError);
}

TEST_CASE("disparity ratio relative to the reference group") {
  JointTable u(t1_schema(), std::vector<double>(8, 0.125));
  auto flat = disparity_ratio(u, "1", std::vector<std::string>{"a"});
  CHECK(flat.ratio[0] == 1.0);
  CHECK(flat.ratio[1] == doctest::Approx(1.0));

  auto report = disparity_ratio(t1(), "1", std::vector<std::string>{"a"});
  CHECK(report.ratio[0] == 1.0);
  CHECK(report.ratio[1] == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("ratio and difference views agree about parity") {
  std::mt19937_64 gen(47);
  for (int trial = 0; trial < 20; ++trial) {
    JointTable p = purfit::testing::random_positive_table(t1_schema(), gen);
    auto diff = attributable_disparity(p, std::vector<std::string>{"a"});
    auto ratio = disparity_ratio(p, "1", std::vector<std::string>{"a"});
    bool all_zero = true;
    for (std::size_t y = 0; y < 2; ++y)
      for (std::size_t s = 0; s < 2; ++s)
        all_zero &= std::abs(diff.difference_at(y, s)) <= 1e-12;
    bool all_one = true;
    for (std::size_t s = 0; s < 2; ++s)
      all_one &= std::abs(ratio.ratio[s] - 1.0) <= 1e-12;
    CHECK(all_zero == all_one);
  }
}

TEST_CASE("parity residual") {
  CHECK(parity_residual(t1()) == doctest::Approx(0.3).epsilon(1e-12));
  JointTable u(t1_schema(), std::vector<double>(8, 0.125));
  CHECK(parity_residual(u) == 0.0);

  SolverOptions opts;
  auto q = project(t1(), build_constraints(t1(), ConstraintMode::pur), opts).table;
  CHECK(parity_residual(q) <= 10 * opts.tolerance);
}

TEST_CASE("utility error compares Y-X marginals") {
  auto p = two_level(0.5);
  CHECK(utility_error(p, p) == 0.0);
  // Shift mass between the y-levels only: the Y-X marginal moves the same way.
  auto pred = two_level(0.25);
  CHECK(utility_error(p, pred) == doctest::Approx(0.143841).epsilon(1e-5));

  SolverOptions opts;
  auto q = project(t1(), build_constraints(t1(), ConstraintMode::pur), opts).table;
  CHECK(utility_error(t1(), q) <= 1e-10);
}
