#include "binclust/binning.hpp"

#include <algorithm>

namespace binclust {

BinLayout edges_from_midpoints(const Eigen::VectorXd& centers) {
  const int m = static_cast<int>(centers.size());
  if (m < 2) {
    throw Error(ErrorCode::TooFewCenters,
                "edge reconstruction needs at least two midpoints, got " + std::to_string(m));
  }
  for (int l = 0; l + 1 < m; ++l) {
    if (!(centers(l) < centers(l + 1))) {
      throw Error(ErrorCode::NonIncreasingCenters,
                  "centers must be strictly increasing (position " + std::to_string(l + 2) + ")");
    }
  }
  BinLayout layout;
  layout.centers = centers;
  layout.edges.resize(m + 1);
  layout.edges(0) = centers(0) - (centers(1) - centers(0)) / 2.0;
  for (int l = 1; l < m; ++l) {
    layout.edges(l) = centers(l - 1) + (centers(l) - centers(l - 1)) / 2.0;
  }
  layout.edges(m) = centers(m - 1) + (centers(m - 1) - centers(m - 2)) / 2.0;
  return layout;
}

std::vector<int> expand_memberships(const std::vector<long>& freqs) {
  long n = 0;
  for (long f : freqs) {
    if (f < 0) throw Error(ErrorCode::NegativeFrequency, "negative frequency");
    n += f;
  }
  if (n < 1) throw Error(ErrorCode::EmptyDataset, "all frequencies are zero");
  std::vector<int> e;
  e.reserve(n);
  for (std::size_t l = 0; l < freqs.size(); ++l) {
    e.insert(e.end(), freqs[l], static_cast<int>(l) + 1);
  }
  return e;
}

int locate_bin(const BinLayout& layout, double v) {
  const auto& edges = layout.edges;
  const int m = layout.num_bins();
  if (!(v > edges(0)) || !(v <= edges(m))) return 0;
  // first edge >= v closes the bin containing v
  const double* begin = edges.data();
  const double* pos = std::lower_bound(begin, begin + m + 1, v);
  return static_cast<int>(pos - begin);
}

}  // namespace binclust
