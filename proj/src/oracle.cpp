#include "binclust/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "binclust/binning.hpp"
#include "binclust/partition_prior.hpp"
#include "binclust/sampler.hpp"

namespace binclust {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLogSqrt2Pi = 0.9189385332046727;

// Log joint density of (lambda = e^u, mu, values) under the normal-gamma
// model, including the Jacobian of the log substitution.
double log_integrand(const NormalGammaParams& prior, const Eigen::VectorXd& values,
                     double u, double mu) {
  const double lambda = std::exp(u);
  double h = u;  // Jacobian d(lambda)/d(u)
  h += prior.a * std::log(prior.b) - std::lgamma(prior.a) + (prior.a - 1.0) * u -
       prior.b * lambda;
  double d = mu - prior.omega;
  h += 0.5 * (u - std::log(prior.c)) - kLogSqrt2Pi -
       lambda * d * d / (2.0 * prior.c);
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    d = values(i) - mu;
    h += 0.5 * u - kLogSqrt2Pi - 0.5 * lambda * d * d;
  }
  return h;
}

double simpson_weight(int i, int last) {
  if (i == 0 || i == last) return 1.0;
  return (i % 2 == 1) ? 4.0 : 2.0;
}

// log of the nested Simpson estimate with 16*2^level intervals per axis.
double quadrature_level(const NormalGammaParams& prior, const Eigen::VectorXd& values,
                        int level) {
  const NormalGammaParams post = posterior_params(prior, values);
  const double u_center = std::log(post.a / post.b);
  const double u_half = 40.0;
  const int last = 16 * (1 << level);
  const double du = 2.0 * u_half / last;

  double peak = -kInf;
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(last + 1) * (last + 1));
  for (int iu = 0; iu <= last; ++iu) {
    const double u = u_center - u_half + iu * du;
    const double mu_half = 12.0 * std::sqrt(post.c * std::exp(-u));
    const double dmu = 2.0 * mu_half / last;
    const double log_wu = std::log(simpson_weight(iu, last) * du / 3.0);
    for (int im = 0; im <= last; ++im) {
      const double mu = post.omega - mu_half + im * dmu;
      const double log_wm = std::log(simpson_weight(im, last) * dmu / 3.0);
      const double t = log_integrand(prior, values, u, mu) + log_wu + log_wm;
      peak = std::max(peak, t);
      terms.push_back(t);
    }
  }
  double total = 0.0;
  for (double t : terms) total += std::exp(t - peak);
  return peak + std::log(total);
}

}  // namespace

double log_quadrature_marginal(const NormalGammaParams& prior,
                               const Eigen::VectorXd& values) {
  const int max_level = 9;
  double previous = quadrature_level(prior, values, 0);
  for (int level = 1; level <= max_level; ++level) {
    const double current = quadrature_level(prior, values, level);
    if (std::abs(current - previous) < 1e-8 * std::max(1.0, std::abs(current))) {
      return current;
    }
    previous = current;
  }
  throw Error(ErrorCode::NonConvergence, "quadrature failed to stabilize");
}

double quadrature_marginal(const NormalGammaParams& prior,
                           const Eigen::VectorXd& values) {
  return std::exp(log_quadrature_marginal(prior, values));
}

std::map<Partition, double> enumerate_partition_posterior(const Eigen::VectorXd& y,
                                                          const Hyperparams& hyper,
                                                          double alpha) {
  const int n = static_cast<int>(y.size());
  if (n < 1) throw Error(ErrorCode::EmptyDataset, "need n >= 1");
  if (n > 10) throw Error(ErrorCode::TooLarge, "exhaustive enumeration capped at n = 10");
  const NormalGammaParams prior = ng_prior(hyper);

  const std::vector<Partition> compositions = enumerate_compositions(n);
  std::vector<double> lp(compositions.size());
  double peak = -kInf;
  for (std::size_t i = 0; i < compositions.size(); ++i) {
    const Partition& sizes = compositions[i];
    double v = log_restricted_prior(sizes, alpha);
    long start = 0;
    for (int nj : sizes) {
      v += log_marginal_likelihood(prior, Eigen::VectorXd(y.segment(start, nj)));
      start += nj;
    }
    lp[i] = v;
    peak = std::max(peak, v);
  }
  double total = 0.0;
  for (double v : lp) total += std::exp(v - peak);

  std::map<Partition, double> posterior;
  for (std::size_t i = 0; i < compositions.size(); ++i) {
    posterior[compositions[i]] = std::exp(lp[i] - peak) / total;
  }
  return posterior;
}

double effective_sample_size(const std::vector<double>& x) {
  const std::size_t n = x.size();
  if (n < 4) return static_cast<double>(n);
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(n);

  auto gamma = [&](std::size_t t) {
    double s = 0.0;
    for (std::size_t i = 0; i + t < n; ++i) s += (x[i] - mean) * (x[i + t] - mean);
    return s / static_cast<double>(n);
  };

  const double g0 = gamma(0);
  if (!(g0 > 0.0)) return static_cast<double>(n);

  // Sum autocovariances while Geyer's pairwise sums stay positive.
  double paired = 0.0;
  for (std::size_t t = 0; t + 1 < n; t += 2) {
    const double pair = gamma(t) + gamma(t + 1);
    if (pair <= 0.0) break;
    paired += pair;
  }
  const double total = 2.0 * paired - g0;
  if (!(total > 0.0)) return static_cast<double>(n);
  return std::clamp(static_cast<double>(n) * g0 / total, 1.0,
                    static_cast<double>(n));
}

namespace {

struct TestFunctions {
  std::array<double, 5> value{};
};

TestFunctions evaluate_functions(const ChainState& state) {
  TestFunctions f;
  const double n = static_cast<double>(state.n());
  f.value[0] = static_cast<double>(state.num_groups());
  f.value[1] = state.alpha;
  double weighted = 0.0;
  for (int j = 0; j < state.num_groups(); ++j) {
    weighted += state.partition[static_cast<std::size_t>(j)] *
                state.params[static_cast<std::size_t>(j)].mu;
  }
  f.value[2] = weighted / n;
  f.value[3] = state.y.mean();
  f.value[4] = state.y.squaredNorm() / n;
  return f;
}

// Ancestral draw of the full state: alpha, partition (by enumeration of the
// restricted prior), params from the base measure, y from the kernels,
// memberships by per-index binning.
ChainState ancestral_draw(const GewekeConfig& cfg, const BinLayout& layout,
                          const std::vector<Partition>& compositions, Rng& rng) {
  ChainState state;
  state.alpha = sample_gamma(cfg.hyper.alpha_shape, cfg.hyper.alpha_rate, rng);

  std::vector<double> lp(compositions.size());
  double peak = -kInf;
  for (std::size_t i = 0; i < compositions.size(); ++i) {
    lp[i] = log_restricted_prior(compositions[i], state.alpha);
    peak = std::max(peak, lp[i]);
  }
  double total = 0.0;
  for (double& v : lp) {
    v = std::exp(v - peak);
    total += v;
  }
  double u = rng.uniform01() * total;
  std::size_t pick = 0;
  for (; pick + 1 < lp.size(); ++pick) {
    u -= lp[pick];
    if (u <= 0.0) break;
  }
  state.partition = compositions[pick];

  const NormalGammaParams prior = ng_prior(cfg.hyper);
  state.params.clear();
  for (std::size_t j = 0; j < state.partition.size(); ++j) {
    state.params.push_back(sample_group_params(prior, rng));
  }

  state.y.resize(cfg.n);
  state.e.resize(static_cast<std::size_t>(cfg.n));
  long i = 0;
  for (std::size_t j = 0; j < state.partition.size(); ++j) {
    const double mu = state.params[j].mu;
    const double sd = 1.0 / std::sqrt(state.params[j].lambda);
    for (int r = 0; r < state.partition[j]; ++r, ++i) {
      state.y(i) = sample_normal(mu, sd, rng);
      state.e[static_cast<std::size_t>(i)] = locate_bin(layout, state.y(i));
    }
  }
  return state;
}

// Regenerates (y, e) from the current params: the data block of the joint.
void regenerate_data(ChainState& state, const BinLayout& layout, Rng& rng) {
  long i = 0;
  for (std::size_t j = 0; j < state.partition.size(); ++j) {
    const double mu = state.params[j].mu;
    const double sd = 1.0 / std::sqrt(state.params[j].lambda);
    for (int r = 0; r < state.partition[j]; ++r, ++i) {
      state.y(i) = sample_normal(mu, sd, rng);
      state.e[static_cast<std::size_t>(i)] = locate_bin(layout, state.y(i));
    }
  }
}

// Group-parameter update with the mean-shift term of the scale posterior
// dropped. Deliberately wrong; used to demonstrate the test's power.
void update_params_mutated(ChainState& state, const Hyperparams& hyper, Rng& rng) {
  const NormalGammaParams prior = ng_prior(hyper);
  long start = 0;
  for (int j = 0; j < state.num_groups(); ++j) {
    const int len = state.partition[static_cast<std::size_t>(j)];
    const SufficientStats stats =
        suff_stats(Eigen::VectorXd(state.y.segment(start, len)));
    NormalGammaParams post = posterior_params(prior, stats);
    const double n = static_cast<double>(stats.n);
    const double dev = stats.sum / n - prior.omega;
    post.b -= n * dev * dev / (2.0 * (prior.c * n + 1.0));
    state.params[static_cast<std::size_t>(j)] = sample_group_params(post, rng);
    start += len;
  }
}

}  // namespace

GewekeResult geweke_test(const GewekeConfig& config) {
  if (config.n < 2 || config.n > 10 || !(config.inner_edge > 0.0)) {
    throw Error(ErrorCode::InvalidParams, "joint test needs 2 <= n <= 10, inner_edge > 0");
  }
  validate_hyperparams(config.hyper);

  BinLayout layout;
  layout.edges.resize(4);
  layout.edges << -kInf, -config.inner_edge, config.inner_edge, kInf;

  BinnedDataset dataset;
  dataset.layout = layout;
  dataset.freqs.assign(3, 0);  // memberships live in the state, not here

  const std::vector<Partition> compositions = enumerate_compositions(config.n);
  const SamplerConfig kernel_config;  // default move mix

  Rng rng_mc = Rng::for_stream(config.seed, 1);
  Rng rng_sc = Rng::for_stream(config.seed, 2);

  const std::size_t samples = static_cast<std::size_t>(config.num_samples);
  std::array<std::vector<double>, 5> mc_series, sc_series;
  for (auto& s : mc_series) s.reserve(samples);
  for (auto& s : sc_series) s.reserve(samples);

  for (std::size_t s = 0; s < samples; ++s) {
    const ChainState draw = ancestral_draw(config, layout, compositions, rng_mc);
    const TestFunctions f = evaluate_functions(draw);
    for (int q = 0; q < 5; ++q) mc_series[q].push_back(f.value[q]);
  }

  ChainState state = ancestral_draw(config, layout, compositions, rng_sc);
  for (std::size_t s = 0; s < samples; ++s) {
    partition_sweep(state, config.hyper, kernel_config, rng_sc, nullptr);
    update_latent(state, dataset, rng_sc);
    if (config.mutate_scale_update) {
      update_params_mutated(state, config.hyper, rng_sc);
    } else {
      update_params(state, config.hyper, rng_sc);
    }
    update_alpha(state, config.hyper, rng_sc);
    regenerate_data(state, layout, rng_sc);
    const TestFunctions f = evaluate_functions(state);
    for (int q = 0; q < 5; ++q) sc_series[q].push_back(f.value[q]);
  }

  GewekeResult result;
  for (int q = 0; q < 5; ++q) {
    const std::vector<double>& mc = mc_series[q];
    const std::vector<double>& sc = sc_series[q];
    double mc_mean = 0.0, sc_mean = 0.0;
    for (double v : mc) mc_mean += v;
    for (double v : sc) sc_mean += v;
    mc_mean /= static_cast<double>(mc.size());
    sc_mean /= static_cast<double>(sc.size());
    double mc_var = 0.0, sc_var = 0.0;
    for (double v : mc) mc_var += (v - mc_mean) * (v - mc_mean);
    for (double v : sc) sc_var += (v - sc_mean) * (v - sc_mean);
    mc_var /= static_cast<double>(mc.size());
    sc_var /= static_cast<double>(sc.size());

    const double sc_ess = effective_sample_size(sc);
    const double se = std::sqrt(mc_var / static_cast<double>(mc.size()) +
                                sc_var / sc_ess);
    result.z[q] = (mc_mean - sc_mean) / se;
    result.ancestral_mean[q] = mc_mean;
    result.chain_mean[q] = sc_mean;
    result.chain_ess[q] = sc_ess;
  }
  return result;
}

}  // namespace binclust
