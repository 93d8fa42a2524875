#pragma once

#include <Eigen/Core>

#include "binclust/distributions.hpp"
#include "binclust/types.hpp"

namespace binclust {

// Normal-gamma conjugate family for a group of real observations:
//   lambda ~ Gamma(a, b)            (shape, rate)
//   mu | lambda ~ Normal(omega, c / lambda)
//   y_i | mu, lambda ~ Normal(mu, 1 / lambda)
struct NormalGammaParams {
  double omega = 0.0;
  double c = 1.0;
  double a = 1.1;
  double b = 1.0;
};

NormalGammaParams ng_prior(const Hyperparams& hp);

struct SufficientStats {
  long n = 0;
  double sum = 0.0;
  double sumsq = 0.0;
};

// Accumulated in ascending value order, so any permutation of the same
// multiset produces bitwise-identical stats.
SufficientStats suff_stats(const Eigen::VectorXd& values);

// Closed-form posterior after observing the group. Both overloads agree
// bitwise: the value form routes through suff_stats.
NormalGammaParams posterior_params(const NormalGammaParams& prior,
                                   const SufficientStats& stats);
NormalGammaParams posterior_params(const NormalGammaParams& prior,
                                   const Eigen::VectorXd& values);

// Log marginal likelihood of the group with (mu, lambda) integrated out.
// Empty groups have marginal 1 (log 0).
double log_marginal_likelihood(const NormalGammaParams& prior,
                               const SufficientStats& stats);
double log_marginal_likelihood(const NormalGammaParams& prior,
                               const Eigen::VectorXd& values);

// Log density of one further observation given the current params: a Student-t
// with 2a degrees of freedom, location omega, squared scale b(1+c)/a. The
// marginal likelihood factorizes as a product of these along any ordering.
double log_predictive(const NormalGammaParams& params, double y);

// Draw (mu, lambda) from the normal-gamma law with the given params.
GroupParams sample_group_params(const NormalGammaParams& params, Rng& rng);

}  // namespace binclust
