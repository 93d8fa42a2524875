#pragma once

#include "binclust/types.hpp"

namespace binclust {

/// Reconstructs bin edges from m >= 2 strictly increasing midpoints: interior
/// edges sit halfway between neighbours, outer edges mirror the first and last
/// gaps outward.
BinLayout edges_from_midpoints(const Eigen::VectorXd& centers);

/// Expands per-bin frequencies into the nondecreasing membership sequence
/// e_1,...,e_n (1-based bin indices); bin l occurs exactly freqs[l-1] times.
std::vector<int> expand_memberships(const std::vector<long>& freqs);

/// 1-based index of the half-open bin (t_{l-1}, t_l] containing v, or 0 when v
/// lies outside (t_0, t_m].
int locate_bin(const BinLayout& layout, double v);

}  // namespace binclust
