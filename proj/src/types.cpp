#include "binclust/types.hpp"

#include <cmath>

namespace binclust {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonIncreasingEdges: return "NonIncreasingEdges";
    case ErrorCode::NegativeFrequency: return "NegativeFrequency";
    case ErrorCode::EmptyDataset: return "EmptyDataset";
    case ErrorCode::CenterOutsideBin: return "CenterOutsideBin";
    case ErrorCode::TooFewCenters: return "TooFewCenters";
    case ErrorCode::NonIncreasingCenters: return "NonIncreasingCenters";
    case ErrorCode::InvalidAlpha: return "InvalidAlpha";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::EmptyGroup: return "EmptyGroup";
    case ErrorCode::EmptyInterval: return "EmptyInterval";
    case ErrorCode::NumericalUnderflow: return "NumericalUnderflow";
    case ErrorCode::NoSplittableGroup: return "NoSplittableGroup";
    case ErrorCode::SingleGroup: return "SingleGroup";
    case ErrorCode::EmptyTrace: return "EmptyTrace";
    case ErrorCode::PartitionNeverVisited: return "PartitionNeverVisited";
    case ErrorCode::ValueOutOfRange: return "ValueOutOfRange";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NonContiguousEdges: return "NonContiguousEdges";
    case ErrorCode::IoError: return "IoError";
  }
  return "UnknownError";
}

long BinnedDataset::total_count() const {
  long n = 0;
  for (long f : freqs) n += f;
  return n;
}

void validate_hyperparams(const Hyperparams& hyper) {
  if (!(hyper.c > 0.0) || !(hyper.a > 0.0) || !(hyper.b > 0.0) ||
      !(hyper.alpha_shape > 0.0) || !(hyper.alpha_rate > 0.0)) {
    throw Error(ErrorCode::InvalidParams,
                "c, a, b, alpha_shape, alpha_rate must all be positive");
  }
  if (!std::isfinite(hyper.omega)) {
    throw Error(ErrorCode::InvalidParams, "omega must be finite");
  }
}

void validate_dataset(const BinnedDataset& dataset) {
  const auto& edges = dataset.layout.edges;
  const int m = dataset.layout.num_bins();
  if (m < 1) {
    throw Error(ErrorCode::NonIncreasingEdges, "need at least two edges");
  }
  for (int l = 0; l < m; ++l) {
    if (!(edges(l) < edges(l + 1))) {
      throw Error(ErrorCode::NonIncreasingEdges,
                  "edge " + std::to_string(l + 1) + " (" + std::to_string(edges(l + 1)) +
                      ") does not exceed edge " + std::to_string(l));
    }
  }
  if (dataset.layout.has_centers()) {
    if (dataset.layout.centers.size() != m) {
      throw Error(ErrorCode::CenterOutsideBin, "need one center per bin");
    }
    for (int l = 0; l < m; ++l) {
      const double tau = dataset.layout.centers(l);
      if (!(edges(l) < tau && tau <= edges(l + 1))) {
        throw Error(ErrorCode::CenterOutsideBin,
                    "center of bin " + std::to_string(l + 1) + " lies outside (" +
                        std::to_string(edges(l)) + ", " + std::to_string(edges(l + 1)) + "]");
      }
    }
  }
  if (static_cast<int>(dataset.freqs.size()) != m) {
    throw Error(ErrorCode::NegativeFrequency, "need one frequency per bin");
  }
  for (int l = 0; l < m; ++l) {
    if (dataset.freqs[l] < 0) {
      throw Error(ErrorCode::NegativeFrequency,
                  "frequency of bin " + std::to_string(l + 1) + " is negative");
    }
  }
  if (dataset.total_count() < 1) {
    throw Error(ErrorCode::EmptyDataset, "all frequencies are zero");
  }
}

void check_state(const ChainState& state, const BinnedDataset& dataset) {
  const long n = dataset.total_count();
  if (state.y.size() != n || static_cast<long>(state.e.size()) != n) {
    throw Error(ErrorCode::InvalidParams, "state length does not match dataset count");
  }
  if (partition_total(state.partition) != n) {
    throw Error(ErrorCode::InvalidParams, "partition sizes do not sum to n");
  }
  for (int s : state.partition) {
    if (s < 1) throw Error(ErrorCode::InvalidParams, "empty group in partition");
  }
  if (state.params.size() != state.partition.size()) {
    throw Error(ErrorCode::InvalidParams, "params length does not match group count");
  }
  for (const auto& p : state.params) {
    if (!(p.lambda > 0.0)) throw Error(ErrorCode::InvalidParams, "nonpositive precision");
  }
  if (!(state.alpha > 0.0)) {
    throw Error(ErrorCode::InvalidAlpha, "alpha must be positive");
  }
  const auto& edges = dataset.layout.edges;
  const int m = dataset.layout.num_bins();
  for (long i = 0; i < n; ++i) {
    const int l = state.e[i];
    if (l < 1 || l > m) {
      throw Error(ErrorCode::ValueOutOfRange, "bin index out of range at position " +
                                                  std::to_string(i + 1));
    }
    if (!(edges(l - 1) < state.y(i) && state.y(i) <= edges(l))) {
      throw Error(ErrorCode::ValueOutOfRange,
                  "latent value " + std::to_string(state.y(i)) + " escapes bin " +
                      std::to_string(l));
    }
  }
}

}  // namespace binclust
