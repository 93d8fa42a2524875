#include "doctest.h"

#include "binclust/types.hpp"
#include "test_util.hpp"

using namespace binclust;
using testutil::code_of;
using testutil::dataset;
using testutil::vec;

TEST_CASE("dataset validation enforces layout and frequency invariants") {
  CHECK(code_of([] { validate_dataset(dataset({0, 1, 2}, {3, 4})); }) == std::nullopt);

  CHECK(code_of([] { validate_dataset(dataset({0, 1, 1}, {3, 4})); }) ==
        ErrorCode::NonIncreasingEdges);
  CHECK(code_of([] { validate_dataset(dataset({0, 1, 2}, {3, -1})); }) ==
        ErrorCode::NegativeFrequency);
  CHECK(code_of([] { validate_dataset(dataset({0, 1, 2}, {3})); }) ==
        ErrorCode::NegativeFrequency);
  CHECK(code_of([] { validate_dataset(dataset({0, 1, 2}, {0, 0})); }) ==
        ErrorCode::EmptyDataset);

  BinnedDataset with_centers = dataset({0, 1, 2}, {1, 1});
  with_centers.layout.centers = vec({0.5, 1.5});
  CHECK(code_of([&] { validate_dataset(with_centers); }) == std::nullopt);
  with_centers.layout.centers = vec({0.5, 2.5});
  CHECK(code_of([&] { validate_dataset(with_centers); }) == ErrorCode::CenterOutsideBin);
  // upper edge belongs to its bin, lower does not
  with_centers.layout.centers = vec({1.0, 2.0});
  CHECK(code_of([&] { validate_dataset(with_centers); }) == std::nullopt);
  with_centers.layout.centers = vec({0.0, 1.5});
  CHECK(code_of([&] { validate_dataset(with_centers); }) == ErrorCode::CenterOutsideBin);
}

TEST_CASE("hyperparameter validation") {
  CHECK(code_of([] { validate_hyperparams(Hyperparams{}); }) == std::nullopt);
  Hyperparams h;
  h.c = 0.0;
  CHECK(code_of([&] { validate_hyperparams(h); }) == ErrorCode::InvalidParams);
  h = Hyperparams{};
  h.alpha_rate = -2.0;
  CHECK(code_of([&] { validate_hyperparams(h); }) == ErrorCode::InvalidParams);
}

TEST_CASE("chain state consistency checks") {
  const BinnedDataset ds = dataset({0, 1, 2}, {2, 1});
  ChainState state;
  state.y = vec({0.5, 0.9, 1.5});
  state.e = {1, 1, 2};
  state.partition = {3};
  state.params = {GroupParams{}};
  state.alpha = 1.0;
  CHECK(code_of([&] { check_state(state, ds); }) == std::nullopt);

  ChainState bad = state;
  bad.partition = {2, 2};
  CHECK(code_of([&] { check_state(bad, ds); }).has_value());

  bad = state;
  bad.y(1) = 1.2;  // bin 1 is (0, 1]
  CHECK(code_of([&] { check_state(bad, ds); }).has_value());

  bad = state;
  bad.params.clear();
  CHECK(code_of([&] { check_state(bad, ds); }).has_value());

  bad = state;
  bad.params[0].lambda = 0.0;
  CHECK(code_of([&] { check_state(bad, ds); }).has_value());
}
