#pragma once

#include <Eigen/Core>
#include <vector>

#include "binclust/types.hpp"

namespace binclust {

// Most frequently visited composition; ties broken by fewer groups, then
// lexicographically smallest sizes. Throws EmptyTrace on an empty trace.
Partition modal_partition(const Trace& trace);

// Per-group posterior means conditioned on the draws whose partition equals
// pi_hat: mean of mu_j and mean of lambda_j^{-1/2}. Groups are index-ordered,
// so no label alignment is needed. Throws PartitionNeverVisited when no draw
// matches.
std::vector<GroupEstimate> conditional_param_estimates(const Trace& trace,
                                                       const Partition& pi_hat);

// Conditional density estimate on the grid:
//   f(g) = mean over matching draws of sum_j (n_j/n) Normal(g; mu_j, 1/lambda_j).
Eigen::VectorXd conditional_density(const Trace& trace, const Partition& pi_hat,
                                    const Eigen::VectorXd& grid);

// Group sizes divided by the sample size.
std::vector<double> mixing_weights(const Partition& pi_hat, long n);

// Equally spaced evaluation grid spanning the binned range extended by 5% on
// each side.
Eigen::VectorXd default_grid(const BinLayout& layout, int points = 512);

}  // namespace binclust
