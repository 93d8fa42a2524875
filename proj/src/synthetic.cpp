#include "binclust/synthetic.hpp"

#include <cmath>

#include "binclust/binning.hpp"

namespace binclust {

Eigen::VectorXd sample_reference_mixture(long n, Rng& rng, std::vector<int>* labels) {
  if (n < 1) throw Error(ErrorCode::EmptyDataset, "need n >= 1");
  static const double weight[4] = {0.3, 0.2, 0.2, 0.3};
  static const double mean[4] = {8.0, 16.0, 24.0, 30.0};
  static const double sd[4] = {1.0, 2.449489742783178, 1.0, 2.0};

  Eigen::VectorXd out(n);
  if (labels) {
    labels->clear();
    labels->reserve(static_cast<std::size_t>(n));
  }
  for (long i = 0; i < n; ++i) {
    const double u = rng.uniform01();
    int comp = 0;
    double cum = weight[0];
    while (comp < 3 && u > cum) cum += weight[++comp];
    out(i) = sample_normal(mean[comp], sd[comp], rng);
    if (labels) labels->push_back(comp);
  }
  return out;
}

BinLayout unit_bin_layout(double lo, double hi) {
  const int m = static_cast<int>(std::lround(hi - lo));
  if (m < 1 || std::abs(lo + m - hi) > 1e-9) {
    throw Error(ErrorCode::InvalidParams, "range is not a whole number of unit bins");
  }
  BinLayout layout;
  layout.edges = Eigen::VectorXd::LinSpaced(m + 1, lo, hi);
  layout.centers = Eigen::VectorXd::LinSpaced(m, lo + 0.5, hi - 0.5);
  return layout;
}

BinnedDataset bin_data(const Eigen::VectorXd& values, const BinLayout& layout) {
  BinnedDataset ds;
  ds.layout = layout;
  ds.freqs.assign(static_cast<std::size_t>(layout.num_bins()), 0);
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    const int bin = locate_bin(layout, values(i));
    if (bin == 0) {
      throw Error(ErrorCode::ValueOutOfRange,
                  "value " + std::to_string(values(i)) + " outside the binned range");
    }
    ++ds.freqs[static_cast<std::size_t>(bin - 1)];
  }
  return ds;
}

}  // namespace binclust
