#include "binclust/sampler.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "binclust/binning.hpp"
#include "binclust/partition_prior.hpp"

namespace binclust {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Prefix sums of y and y^2 for O(1) contiguous-group sufficient stats.
struct PrefixStats {
  std::vector<double> s1;
  std::vector<double> s2;

  explicit PrefixStats(const Eigen::VectorXd& y)
      : s1(static_cast<std::size_t>(y.size()) + 1, 0.0),
        s2(static_cast<std::size_t>(y.size()) + 1, 0.0) {
    for (Eigen::Index i = 0; i < y.size(); ++i) {
      s1[i + 1] = s1[i] + y(i);
      s2[i + 1] = s2[i] + y(i) * y(i);
    }
  }

  SufficientStats group(long start, long len) const {
    SufficientStats s;
    s.n = len;
    s.sum = s1[start + len] - s1[start];
    s.sumsq = s2[start + len] - s2[start];
    return s;
  }
};

long group_start(const Partition& sizes, int group) {
  long start = 0;
  for (int j = 0; j < group; ++j) start += sizes[j];
  return start;
}

int count_splittable(const Partition& sizes) {
  int s = 0;
  for (int nj : sizes) s += (nj >= 2);
  return s;
}

}  // namespace

void validate_config(const SamplerConfig& config) {
  if (config.iterations < 1 || config.burn_in < 0 ||
      config.burn_in >= config.iterations || config.thin < 1) {
    throw Error(ErrorCode::InvalidParams, "need 0 <= burn_in < iterations, thin >= 1");
  }
  if (config.p_split_merge < 0.0 || config.p_shuffle < 0.0 ||
      std::abs(config.p_split_merge + config.p_shuffle - 1.0) > 1e-12) {
    throw Error(ErrorCode::InvalidParams, "move probabilities must sum to 1");
  }
}

ChainState init_state(const BinnedDataset& dataset, const Hyperparams& hyper, Rng& rng) {
  validate_dataset(dataset);
  validate_hyperparams(hyper);

  ChainState state;
  state.e = expand_memberships(dataset.freqs);
  const long n = static_cast<long>(state.e.size());
  state.y.resize(n);
  for (long i = 0; i < n; ++i) {
    const int bin = state.e[static_cast<std::size_t>(i)];
    state.y(i) = rng.uniform(dataset.layout.edges(bin - 1), dataset.layout.edges(bin));
  }
  state.partition = {static_cast<int>(n)};
  state.params = {sample_group_params(posterior_params(ng_prior(hyper), state.y), rng)};
  state.alpha = sample_gamma(hyper.alpha_shape, hyper.alpha_rate, rng);
  return state;
}

void update_latent(ChainState& state, const BinnedDataset& dataset, Rng& rng) {
  long i = 0;
  for (int j = 0; j < state.num_groups(); ++j) {
    const double mu = state.params[static_cast<std::size_t>(j)].mu;
    const double sd = 1.0 / std::sqrt(state.params[static_cast<std::size_t>(j)].lambda);
    for (int r = 0; r < state.partition[static_cast<std::size_t>(j)]; ++r, ++i) {
      const int bin = state.e[static_cast<std::size_t>(i)];
      const double lo = dataset.layout.edges(bin - 1);
      const double hi = dataset.layout.edges(bin);
      try {
        state.y(i) = sample_truncated_normal(mu, sd, lo, hi, rng);
      } catch (const Error& err) {
        if (err.code() != ErrorCode::NumericalUnderflow) throw;
        // Unreachable tail: park y_i at the in-bin point nearest the mean.
        double fallback = mu;
        if (!(fallback > lo)) fallback = std::nextafter(lo, kInf);
        if (fallback > hi) fallback = hi;
        state.y(i) = fallback;
      }
    }
  }
}

void update_params(ChainState& state, const Hyperparams& hyper, Rng& rng) {
  const NormalGammaParams prior = ng_prior(hyper);
  long start = 0;
  for (int j = 0; j < state.num_groups(); ++j) {
    const int len = state.partition[static_cast<std::size_t>(j)];
    state.params[static_cast<std::size_t>(j)] =
        sample_group_params(posterior_params(prior, state.y.segment(start, len)), rng);
    start += len;
  }
}

double escobar_west_weight(double alpha_shape, double alpha_rate, int k, long n,
                           double eta) {
  const double odds = (alpha_shape + k - 1.0) /
                      (static_cast<double>(n) * (alpha_rate - std::log(eta)));
  return odds / (1.0 + odds);
}

void update_alpha(ChainState& state, const Hyperparams& hyper, Rng& rng) {
  const long n = state.n();
  const int k = state.num_groups();
  const double eta = sample_beta(state.alpha + 1.0, static_cast<double>(n), rng);
  const double rate = hyper.alpha_rate - std::log(eta);
  const double w = escobar_west_weight(hyper.alpha_shape, hyper.alpha_rate, k, n, eta);
  const double shape =
      (rng.uniform01() < w) ? hyper.alpha_shape + k : hyper.alpha_shape + k - 1.0;
  state.alpha = sample_gamma(shape, rate, rng);
}

Proposal propose_split(const ChainState& state, Rng& rng) {
  const Partition& sizes = state.partition;
  const int k = state.num_groups();
  const int splittable = count_splittable(sizes);
  if (splittable == 0) {
    throw Error(ErrorCode::NoSplittableGroup, "every group is a singleton");
  }

  int pick = static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(splittable)));
  int j = 0;
  for (;; ++j) {
    if (sizes[static_cast<std::size_t>(j)] >= 2 && pick-- == 0) break;
  }
  const int nj = sizes[static_cast<std::size_t>(j)];
  const int cut = 1 + static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(nj - 1)));

  Proposal p;
  p.kind = MoveKind::Split;
  p.group = j;
  p.new_sizes.reserve(sizes.size() + 1);
  p.new_sizes.assign(sizes.begin(), sizes.begin() + j);
  p.new_sizes.push_back(cut);
  p.new_sizes.push_back(nj - cut);
  p.new_sizes.insert(p.new_sizes.end(), sizes.begin() + j + 1, sizes.end());

  // Forward: branch x uniform group x uniform cut. Branch mass is 0.5 only
  // when a merge is also feasible from the current partition.
  const double log_fwd = (k >= 2 ? std::log(0.5) : 0.0) -
                         std::log(static_cast<double>(splittable)) -
                         std::log(static_cast<double>(nj - 1));
  // Reverse: merge the pair (j, j+1) among k adjacent pairs of the k+1-group
  // result; a split is feasible from the result iff it has a non-singleton.
  const double log_rev = (count_splittable(p.new_sizes) > 0 ? std::log(0.5) : 0.0) -
                         std::log(static_cast<double>(k));
  p.log_proposal_ratio = log_rev - log_fwd;
  return p;
}

Proposal propose_merge(const ChainState& state, Rng& rng) {
  const Partition& sizes = state.partition;
  const int k = state.num_groups();
  if (k < 2) throw Error(ErrorCode::SingleGroup, "nothing to merge");

  const int j = static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(k - 1)));
  const int merged = sizes[static_cast<std::size_t>(j)] + sizes[static_cast<std::size_t>(j) + 1];

  Proposal p;
  p.kind = MoveKind::Merge;
  p.group = j;
  p.new_sizes.reserve(sizes.size() - 1);
  p.new_sizes.assign(sizes.begin(), sizes.begin() + j);
  p.new_sizes.push_back(merged);
  p.new_sizes.insert(p.new_sizes.end(), sizes.begin() + j + 2, sizes.end());

  const double log_fwd = (count_splittable(sizes) > 0 ? std::log(0.5) : 0.0) -
                         std::log(static_cast<double>(k - 1));
  // Reverse: split the merged group (size >= 2, so always splittable) at the
  // remembered cut; a merge is feasible from the result iff k-1 >= 2.
  const double log_rev = (k - 1 >= 2 ? std::log(0.5) : 0.0) -
                         std::log(static_cast<double>(count_splittable(p.new_sizes))) -
                         std::log(static_cast<double>(merged - 1));
  p.log_proposal_ratio = log_rev - log_fwd;
  return p;
}

Proposal propose_shuffle(const ChainState& state, Rng& rng) {
  const Partition& sizes = state.partition;
  const int k = state.num_groups();
  if (k < 2) throw Error(ErrorCode::SingleGroup, "need two adjacent groups");

  const int j = static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(k - 1)));
  const int total = sizes[static_cast<std::size_t>(j)] + sizes[static_cast<std::size_t>(j) + 1];
  const int left = 1 + static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(total - 1)));

  Proposal p;
  p.kind = MoveKind::Shuffle;
  p.group = j;
  p.new_sizes = sizes;
  p.new_sizes[static_cast<std::size_t>(j)] = left;
  p.new_sizes[static_cast<std::size_t>(j) + 1] = total - left;
  p.log_proposal_ratio = 0.0;
  return p;
}

bool accept_partition_move(ChainState& state, const Proposal& proposal,
                           const Hyperparams& hyper, Rng& rng) {
  const NormalGammaParams prior = ng_prior(hyper);
  const PrefixStats stats(state.y);
  const int j = proposal.group;

  const int old_span = (proposal.kind == MoveKind::Split) ? 1 : 2;
  const int new_span = (proposal.kind == MoveKind::Merge) ? 1 : 2;
  const long start = group_start(state.partition, j);

  double log_accept = log_restricted_prior(proposal.new_sizes, state.alpha) -
                      log_restricted_prior(state.partition, state.alpha) +
                      proposal.log_proposal_ratio;
  {
    long off = start;
    for (int g = 0; g < old_span; ++g) {
      const int len = state.partition[static_cast<std::size_t>(j + g)];
      log_accept -= log_marginal_likelihood(prior, stats.group(off, len));
      off += len;
    }
  }
  {
    long off = start;
    for (int g = 0; g < new_span; ++g) {
      const int len = proposal.new_sizes[static_cast<std::size_t>(j + g)];
      log_accept += log_marginal_likelihood(prior, stats.group(off, len));
      off += len;
    }
  }

  if (std::log(rng.uniform01()) >= log_accept) return false;

  std::vector<GroupParams> params;
  params.reserve(proposal.new_sizes.size());
  params.insert(params.end(), state.params.begin(), state.params.begin() + j);
  {
    long off = start;
    for (int g = 0; g < new_span; ++g) {
      const int len = proposal.new_sizes[static_cast<std::size_t>(j + g)];
      params.push_back(
          sample_group_params(posterior_params(prior, stats.group(off, len)), rng));
      off += len;
    }
  }
  params.insert(params.end(), state.params.begin() + j + old_span, state.params.end());

  state.partition = proposal.new_sizes;
  state.params = std::move(params);
  return true;
}

namespace {

void tally(Trace* trace, MoveKind kind, bool accepted) {
  if (!trace) return;
  MoveStats& s = (kind == MoveKind::Split)   ? trace->split_stats
                 : (kind == MoveKind::Merge) ? trace->merge_stats
                                             : trace->shuffle_stats;
  ++s.proposed;
  s.accepted += accepted;
}

}  // namespace

void partition_sweep(ChainState& state, const Hyperparams& hyper,
                     const SamplerConfig& config, Rng& rng, Trace* trace) {
  const bool pick_sm =
      config.p_split_merge >= 1.0 || rng.uniform01() < config.p_split_merge;
  if (pick_sm) {
    const bool can_split = count_splittable(state.partition) > 0;
    const bool can_merge = state.num_groups() >= 2;
    if (can_split || can_merge) {
      const bool split =
          (can_split && can_merge) ? rng.uniform01() < 0.5 : can_split;
      const Proposal p = split ? propose_split(state, rng) : propose_merge(state, rng);
      tally(trace, p.kind, accept_partition_move(state, p, hyper, rng));
    }
  } else if (state.num_groups() >= 2) {
    const Proposal p = propose_shuffle(state, rng);
    tally(trace, p.kind, accept_partition_move(state, p, hyper, rng));
  }

  if (state.num_groups() >= 2) {
    const Proposal p = propose_shuffle(state, rng);
    tally(trace, p.kind, accept_partition_move(state, p, hyper, rng));
  }
}

void sweep(ChainState& state, const BinnedDataset& dataset, const Hyperparams& hyper,
           const SamplerConfig& config, Rng& rng, Trace* trace) {
  partition_sweep(state, hyper, config, rng, trace);
  update_latent(state, dataset, rng);
  update_params(state, hyper, rng);
  update_alpha(state, hyper, rng);
}

Trace run_chain(const BinnedDataset& dataset, const Hyperparams& hyper,
                const SamplerConfig& config) {
  validate_config(config);
  Rng rng(config.seed);
  ChainState state = init_state(dataset, hyper, rng);

  Trace trace;
  const long kept = (config.iterations - config.burn_in) / config.thin;
  trace.iterations.reserve(kept);
  trace.partitions.reserve(kept);
  trace.params_draws.reserve(kept);
  trace.alpha_draws.reserve(kept);

  for (long t = 1; t <= config.iterations; ++t) {
    sweep(state, dataset, hyper, config, rng, &trace);
    if (t > config.burn_in && (t - config.burn_in) % config.thin == 0) {
      trace.iterations.push_back(t);
      trace.partitions.push_back(state.partition);
      trace.params_draws.push_back(state.params);
      trace.alpha_draws.push_back(state.alpha);
    }
  }
  return trace;
}

}  // namespace binclust
