#pragma once

#include <Eigen/Core>
#include <vector>

#include "binclust/distributions.hpp"
#include "binclust/types.hpp"

namespace binclust {

// i.i.d. draws from the four-component reference mixture
//   0.3 N(8,1) + 0.2 N(16,6) + 0.2 N(24,1) + 0.3 N(30,4)
// (second parameter is the variance). When labels is non-null it receives the
// 0-based component index of each draw.
Eigen::VectorXd sample_reference_mixture(long n, Rng& rng,
                                         std::vector<int>* labels = nullptr);

// Unit-width bins covering (lo, hi], centers at the midpoints.
BinLayout unit_bin_layout(double lo, double hi);

// Counts values into the layout's half-open bins (t_{l-1}, t_l]. Any value
// outside (t_0, t_m] is ValueOutOfRange.
BinnedDataset bin_data(const Eigen::VectorXd& values, const BinLayout& layout);

}  // namespace binclust
