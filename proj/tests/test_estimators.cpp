#include <cmath>

#include "doctest.h"

#include "binclust/distributions.hpp"
#include "binclust/estimators.hpp"
#include "test_util.hpp"

using namespace binclust;
using testutil::vec;

namespace {

Trace toy_trace(const std::vector<Partition>& partitions,
                const std::vector<std::vector<GroupParams>>& params) {
  Trace t;
  for (std::size_t r = 0; r < partitions.size(); ++r) {
    t.iterations.push_back(static_cast<long>(r + 1));
    t.partitions.push_back(partitions[r]);
    t.params_draws.push_back(params[r]);
    t.alpha_draws.push_back(1.0);
  }
  return t;
}

}  // namespace

TEST_CASE("modal partition counts visits") {
  const Trace t = toy_trace({{2, 1}, {2, 1}, {3}},
                            {{{0, 1}, {1, 1}}, {{0, 1}, {1, 1}}, {{0, 1}}});
  CHECK(modal_partition(t) == Partition{2, 1});
}

TEST_CASE("modal partition ties break toward fewer groups") {
  const Trace t = toy_trace({{3}, {2, 1}}, {{{0, 1}}, {{0, 1}, {1, 1}}});
  CHECK(modal_partition(t) == Partition{3});
}

TEST_CASE("modal partition tie at equal size breaks lexicographically") {
  const Trace t = toy_trace({{2, 1}, {1, 2}}, {{{0, 1}, {1, 1}}, {{0, 1}, {1, 1}}});
  CHECK(modal_partition(t) == Partition{1, 2});
}

TEST_CASE("empty trace is rejected") {
  Trace t;
  CHECK(testutil::code_of([&] { modal_partition(t); }) == ErrorCode::EmptyTrace);
  // an empty trace has no matching draw either
  CHECK(testutil::code_of([&] { conditional_param_estimates(t, {1}); }) ==
        ErrorCode::PartitionNeverVisited);
}

TEST_CASE("conditional estimates average only the matching draws") {
  const Trace t = toy_trace(
      {{2, 1}, {2, 1}, {3}},
      {{{1.0, 4.0}, {5.0, 1.0}}, {{3.0, 1.0}, {7.0, 0.25}}, {{100.0, 1.0}}});
  const std::vector<GroupEstimate> est = conditional_param_estimates(t, {2, 1});
  REQUIRE(est.size() == 2);
  CHECK(est[0].mean == doctest::Approx(2.0).epsilon(1e-14));
  // sd = mean of lambda^{-1/2}: (1/2 + 1) / 2
  CHECK(est[0].sd == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(est[1].mean == doctest::Approx(6.0).epsilon(1e-14));
  CHECK(est[1].sd == doctest::Approx(1.5).epsilon(1e-14));
}

TEST_CASE("asking for a partition that never occurred fails") {
  const Trace t = toy_trace({{3}}, {{{0, 1}}});
  CHECK(testutil::code_of([&] { conditional_param_estimates(t, {2, 1}); }) ==
        ErrorCode::PartitionNeverVisited);
  CHECK(testutil::code_of([&] {
          conditional_density(t, {2, 1}, vec({0.0}));
        }) == ErrorCode::PartitionNeverVisited);
}

TEST_CASE("single-draw single-group density is that draw's normal pdf") {
  const Trace t = toy_trace({{4}}, {{{1.5, 4.0}}});
  const Eigen::VectorXd grid = vec({0.0, 1.0, 1.5, 2.5});
  const Eigen::VectorXd f = conditional_density(t, {4}, grid);
  REQUIRE(f.size() == 4);
  for (long g = 0; g < 4; ++g) {
    const double z = (grid(g) - 1.5) * 2.0;
    CHECK(f(g) == doctest::Approx(2.0 * norm_pdf(z)).epsilon(1e-13));
  }
}

TEST_CASE("mixture density weights groups by size") {
  const Trace t = toy_trace({{1, 3}}, {{{0.0, 1.0}, {4.0, 1.0}}});
  const Eigen::VectorXd grid = vec({0.0, 4.0});
  const Eigen::VectorXd f = conditional_density(t, {1, 3}, grid);
  const double expect0 = 0.25 * norm_pdf(0.0) + 0.75 * norm_pdf(4.0);
  const double expect4 = 0.25 * norm_pdf(4.0) + 0.75 * norm_pdf(0.0);
  CHECK(f(0) == doctest::Approx(expect0).epsilon(1e-13));
  CHECK(f(1) == doctest::Approx(expect4).epsilon(1e-13));
}

TEST_CASE("density integrates to one on a wide grid") {
  const Trace t = toy_trace({{2, 2}, {2, 2}},
                            {{{-1.0, 1.0}, {2.0, 0.5}}, {{-0.5, 2.0}, {1.5, 1.0}}});
  const int m = 4001;
  Eigen::VectorXd grid = Eigen::VectorXd::LinSpaced(m, -15.0, 15.0);
  const Eigen::VectorXd f = conditional_density(t, {2, 2}, grid);
  double integral = 0.0;
  const double h = grid(1) - grid(0);
  for (long g = 0; g + 1 < m; ++g) integral += 0.5 * h * (f(g) + f(g + 1));
  CHECK(integral == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("mixing weights divide sizes by the total") {
  const std::vector<double> w = mixing_weights({150, 92, 117, 141}, 500);
  REQUIRE(w.size() == 4);
  CHECK(w[0] == doctest::Approx(0.300).epsilon(1e-14));
  CHECK(w[1] == doctest::Approx(0.184).epsilon(1e-14));
  CHECK(w[2] == doctest::Approx(0.234).epsilon(1e-14));
  CHECK(w[3] == doctest::Approx(0.282).epsilon(1e-14));
  CHECK(testutil::code_of([] { mixing_weights({2, 2}, 5); }) ==
        ErrorCode::InvalidParams);
}

TEST_CASE("default grid spans the extended layout") {
  BinLayout layout;
  layout.edges = vec({0.0, 1.0, 2.0, 10.0});
  const Eigen::VectorXd grid = default_grid(layout, 512);
  REQUIRE(grid.size() == 512);
  CHECK(grid(0) == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(grid(511) == doctest::Approx(10.5).epsilon(1e-12));
  for (long g = 1; g < 512; ++g) CHECK(grid(g) > grid(g - 1));
}
