#pragma once

#include <vector>

#include "binclust/types.hpp"

namespace binclust {

// Log prior mass of an unordered label partition with group sizes `sizes`
// under the Dirichlet-process partition law with concentration alpha:
//   alpha^k / (alpha)_n * prod_j (n_j - 1)!
// Sizes must all be positive; alpha must be positive.
double log_eppf(const Partition& sizes, double alpha);

// Log prior mass of an ordered gap-free partition (a composition of n) under
// the restriction of the law above to contiguous clusterings:
//   (n! / k!) * alpha^k / (alpha)_n * prod_j 1/n_j
// Normalized over all 2^(n-1) compositions of n.
double log_restricted_prior(const Partition& sizes, double alpha);

// All compositions of n, ordered by first part size descending, recursing on
// the remainder. n=3 yields (3), (2,1), (1,2), (1,1,1). Throws TooLarge for
// n > 24 (2^23 vectors is already ~0.5 GB of bookkeeping).
std::vector<Partition> enumerate_compositions(int n);

}  // namespace binclust
