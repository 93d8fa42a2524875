#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <vector>

namespace binclust {

enum class ErrorCode {
  NonIncreasingEdges,
  NegativeFrequency,
  EmptyDataset,
  CenterOutsideBin,
  TooFewCenters,
  NonIncreasingCenters,
  InvalidAlpha,
  InvalidParams,
  TooLarge,
  EmptyGroup,
  EmptyInterval,
  NumericalUnderflow,
  NoSplittableGroup,
  SingleGroup,
  EmptyTrace,
  PartitionNeverVisited,
  ValueOutOfRange,
  NonConvergence,
  ParseError,
  NonContiguousEdges,
  IoError,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

/// Bin geometry: m+1 strictly increasing edges, bin l is (edges[l-1], edges[l]].
/// Centers are optional representative values, one per bin.
struct BinLayout {
  Eigen::VectorXd edges;
  Eigen::VectorXd centers;  // size 0 when no centers were supplied

  int num_bins() const { return static_cast<int>(edges.size()) - 1; }
  double lower() const { return edges(0); }
  double upper() const { return edges(edges.size() - 1); }
  bool has_centers() const { return centers.size() > 0; }
};

/// The observed data: a bin layout plus one nonnegative frequency per bin.
struct BinnedDataset {
  BinLayout layout;
  std::vector<long> freqs;

  long total_count() const;
};

/// A composition (n_1,...,n_k) of n: contiguous index-ordered groups.
using Partition = std::vector<int>;

inline long partition_total(const Partition& sizes) {
  long n = 0;
  for (int s : sizes) n += s;
  return n;
}

/// Kernel parameters of one group: mean and precision.
struct GroupParams {
  double mu = 0.0;
  double lambda = 1.0;
};

/// Model hyperparameters: normal-gamma base measure (omega, c, a, b) and the
/// gamma hyperprior (shape, rate) on the total mass alpha.
struct Hyperparams {
  double omega = 0.0;
  double c = 1.0;
  double a = 1.1;
  double b = 1.0;
  double alpha_shape = 1.0;
  double alpha_rate = 1.1;
};

void validate_hyperparams(const Hyperparams& hyper);

/// One MCMC state. Owned by exactly one chain; never shared mutably.
struct ChainState {
  Eigen::VectorXd y;        // latent observations, one per index
  std::vector<int> e;       // 1-based bin membership per index
  Partition partition;      // group sizes, contiguous over indices
  std::vector<GroupParams> params;  // one per group
  double alpha = 1.0;

  long n() const { return y.size(); }
  int num_groups() const { return static_cast<int>(partition.size()); }
};

/// Proposal/acceptance tallies for one Metropolis move family.
struct MoveStats {
  long proposed = 0;
  long accepted = 0;
};

/// Recorded post-burn-in draws; all sequences share the same length.
struct Trace {
  std::vector<long> iterations;
  std::vector<Partition> partitions;
  std::vector<std::vector<GroupParams>> params_draws;
  std::vector<double> alpha_draws;

  MoveStats split_stats;
  MoveStats merge_stats;
  MoveStats shuffle_stats;

  std::size_t size() const { return partitions.size(); }
};

/// Per-group point estimate reported to the user.
struct GroupEstimate {
  double mean = 0.0;
  double sd = 0.0;
};

/// Checks every BinLayout/BinnedDataset invariant; throws Error on violation.
void validate_dataset(const BinnedDataset& dataset);

/// Checks ChainState consistency against its dataset (bin membership of every
/// y_i, partition sizes summing to n, params length). Throws on violation.
void check_state(const ChainState& state, const BinnedDataset& dataset);

}  // namespace binclust
