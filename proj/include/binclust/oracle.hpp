#pragma once

#include <Eigen/Core>
#include <array>
#include <cstdint>
#include <map>
#include <vector>

#include "binclust/conjugate.hpp"
#include "binclust/types.hpp"

namespace binclust {

// Marginal likelihood of a group by brute-force nested Simpson quadrature over
// (log lambda, mu), independent of the closed form it verifies. The lambda
// grid is log-spaced around the posterior mean; the mu grid is linear with a
// lambda-dependent width centered at the posterior mean. Refines until two
// successive estimates agree within 1e-8 relative; NonConvergence at the cap.
double log_quadrature_marginal(const NormalGammaParams& prior,
                               const Eigen::VectorXd& values);
double quadrature_marginal(const NormalGammaParams& prior,
                           const Eigen::VectorXd& values);

// Exact posterior over all 2^(n-1) compositions for fixed latent values and
// fixed alpha: restricted prior times per-group marginal likelihoods,
// normalized. Throws TooLarge for n > 10.
std::map<Partition, double> enumerate_partition_posterior(const Eigen::VectorXd& y,
                                                          const Hyperparams& hyper,
                                                          double alpha);

// Effective sample size by Geyer's initial-positive-sequence estimator,
// clamped to [1, N].
double effective_sample_size(const std::vector<double>& x);

// Joint-distribution check ("getting it right"): two simulators of the same
// joint law over (alpha, partition, group params, latent y, bin memberships)
// must agree on every test-function mean. The layout has infinite outer edges
// so the prior-data draw needs no truncation: y is plain normal and e = bin(y)
// per index.
//
// Marginal-conditional: iid ancestral draws (alpha from its gamma hyperprior,
// partition by enumeration of the restricted prior, params from the base
// measure, y from the kernels). Successive-conditional: alternates one full
// posterior sweep given the current memberships with a regeneration of (y, e)
// from the current params.
//
// Test functions: k, alpha, sum_j n_j mu_j / n, mean(y), mean(y^2).
struct GewekeConfig {
  int n = 6;
  double inner_edge = 1.0;  // bin edges: -inf, -inner_edge, +inner_edge, +inf
  Hyperparams hyper{0.0, 4.0, 3.0, 2.0, 1.0, 1.0};
  // sized so the slowest test function clears 2000 effective samples
  long num_samples = 80000;
  std::uint64_t seed = 1;
  // Breaks the scale part of the group-parameter update by dropping the
  // mean-shift term; the test must then fail. Exists to prove the test has
  // power to see such bugs.
  bool mutate_scale_update = false;
};

struct GewekeResult {
  std::array<double, 5> z{};
  std::array<double, 5> ancestral_mean{};
  std::array<double, 5> chain_mean{};
  std::array<double, 5> chain_ess{};
};

GewekeResult geweke_test(const GewekeConfig& config);

}  // namespace binclust
