#pragma once

#include <cstdint>

#include "binclust/conjugate.hpp"
#include "binclust/distributions.hpp"
#include "binclust/types.hpp"

namespace binclust {

// Chain schedule and move mix. Each iteration runs one partition move whose
// family is drawn from (p_split_merge, p_shuffle), then one mandatory shuffle,
// then the latent, parameter, and total-mass updates. The default mix makes
// every iteration a split-or-merge followed by a shuffle.
struct SamplerConfig {
  long iterations = 30000;
  long burn_in = 20000;
  long thin = 1;
  std::uint64_t seed = 0;
  double p_split_merge = 1.0;
  double p_shuffle = 0.0;
};

void validate_config(const SamplerConfig& config);

enum class MoveKind { Split, Merge, Shuffle };

// A proposed partition move. `group` indexes the affected group (split) or the
// left group of the affected adjacent pair (merge, shuffle) in the CURRENT
// partition. log_proposal_ratio = log q(pi|pi') - log q(pi'|pi).
struct Proposal {
  MoveKind kind = MoveKind::Shuffle;
  Partition new_sizes;
  int group = 0;
  double log_proposal_ratio = 0.0;
};

// Initial state: memberships expanded from the frequencies, each y_i uniform
// inside its bin, one all-encompassing group with parameters drawn from that
// group's posterior, alpha from its gamma hyperprior.
ChainState init_state(const BinnedDataset& dataset, const Hyperparams& hyper, Rng& rng);

// Redraws every y_i from its group's normal kernel truncated to bin e_i.
// When the bin is numerically unreachable the draw falls back to the in-bin
// point nearest the kernel mean; the update never fails.
void update_latent(ChainState& state, const BinnedDataset& dataset, Rng& rng);

// Redraws every group's (mu, lambda) from its normal-gamma posterior.
void update_params(ChainState& state, const Hyperparams& hyper, Rng& rng);

// Total-mass update: eta ~ Beta(alpha+1, n), then alpha from the two-gamma
// mixture with mixing weight escobar_west_weight(...).
void update_alpha(ChainState& state, const Hyperparams& hyper, Rng& rng);

// Probability of the higher-shape gamma component in update_alpha:
// w / (1-w) = (alpha_shape + k - 1) / (n * (alpha_rate - log eta)).
double escobar_west_weight(double alpha_shape, double alpha_rate, int k, long n,
                           double eta);

// Split a uniformly chosen non-singleton group at a uniformly chosen internal
// cut. Throws NoSplittableGroup when every group is a singleton.
Proposal propose_split(const ChainState& state, Rng& rng);

// Merge a uniformly chosen adjacent pair. Throws SingleGroup when k = 1.
Proposal propose_merge(const ChainState& state, Rng& rng);

// Redraw the boundary of a uniformly chosen adjacent pair, uniform over the
// n_j + n_{j+1} - 1 splits keeping both groups nonempty. Symmetric, so
// log_proposal_ratio = 0. Throws SingleGroup when k = 1.
Proposal propose_shuffle(const ChainState& state, Rng& rng);

// Metropolis-Hastings accept/reject with the group parameters integrated out
// over the current latent y. On acceptance the affected groups get fresh
// parameters from their posteriors and true is returned.
bool accept_partition_move(ChainState& state, const Proposal& proposal,
                           const Hyperparams& hyper, Rng& rng);

// One partition phase: the mixed move then the mandatory shuffle. Latent y and
// alpha are untouched. Tallies go to `trace` when non-null.
void partition_sweep(ChainState& state, const Hyperparams& hyper,
                     const SamplerConfig& config, Rng& rng, Trace* trace);

// One full kernel iteration: partition phase, latent update, parameter update,
// alpha update.
void sweep(ChainState& state, const BinnedDataset& dataset, const Hyperparams& hyper,
           const SamplerConfig& config, Rng& rng, Trace* trace);

// Runs a chain from init_state and records post-burn-in, thinned draws.
Trace run_chain(const BinnedDataset& dataset, const Hyperparams& hyper,
                const SamplerConfig& config);

}  // namespace binclust
