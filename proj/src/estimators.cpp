#include "binclust/estimators.hpp"

#include <cmath>
#include <map>

namespace binclust {

namespace {

constexpr double kLogSqrt2Pi = 0.9189385332046727;

bool better_mode(const Partition& cand, long cand_count, const Partition& best,
                 long best_count) {
  if (cand_count != best_count) return cand_count > best_count;
  if (cand.size() != best.size()) return cand.size() < best.size();
  return cand < best;
}

}  // namespace

Partition modal_partition(const Trace& trace) {
  if (trace.size() == 0) throw Error(ErrorCode::EmptyTrace, "no recorded draws");
  std::map<Partition, long> counts;
  for (const Partition& p : trace.partitions) ++counts[p];

  const Partition* best = nullptr;
  long best_count = 0;
  for (const auto& [p, count] : counts) {
    if (!best || better_mode(p, count, *best, best_count)) {
      best = &p;
      best_count = count;
    }
  }
  return *best;
}

std::vector<GroupEstimate> conditional_param_estimates(const Trace& trace,
                                                       const Partition& pi_hat) {
  const int k = static_cast<int>(pi_hat.size());
  std::vector<GroupEstimate> est(static_cast<std::size_t>(k));
  long matches = 0;
  for (std::size_t t = 0; t < trace.size(); ++t) {
    if (trace.partitions[t] != pi_hat) continue;
    ++matches;
    for (int j = 0; j < k; ++j) {
      const GroupParams& gp = trace.params_draws[t][static_cast<std::size_t>(j)];
      est[static_cast<std::size_t>(j)].mean += gp.mu;
      est[static_cast<std::size_t>(j)].sd += 1.0 / std::sqrt(gp.lambda);
    }
  }
  if (matches == 0) {
    throw Error(ErrorCode::PartitionNeverVisited, "no draw matches the partition");
  }
  for (GroupEstimate& g : est) {
    g.mean /= static_cast<double>(matches);
    g.sd /= static_cast<double>(matches);
  }
  return est;
}

Eigen::VectorXd conditional_density(const Trace& trace, const Partition& pi_hat,
                                    const Eigen::VectorXd& grid) {
  if (grid.size() == 0) throw Error(ErrorCode::EmptyDataset, "empty grid");
  const long n = partition_total(pi_hat);
  Eigen::VectorXd density = Eigen::VectorXd::Zero(grid.size());
  long matches = 0;
  for (std::size_t t = 0; t < trace.size(); ++t) {
    if (trace.partitions[t] != pi_hat) continue;
    ++matches;
    for (std::size_t j = 0; j < pi_hat.size(); ++j) {
      const GroupParams& gp = trace.params_draws[t][j];
      const double weight = static_cast<double>(pi_hat[j]) / static_cast<double>(n);
      const double half_log_lambda = 0.5 * std::log(gp.lambda);
      for (Eigen::Index g = 0; g < grid.size(); ++g) {
        const double d = grid(g) - gp.mu;
        density(g) += weight * std::exp(half_log_lambda - kLogSqrt2Pi -
                                        0.5 * gp.lambda * d * d);
      }
    }
  }
  if (matches == 0) {
    throw Error(ErrorCode::PartitionNeverVisited, "no draw matches the partition");
  }
  return density / static_cast<double>(matches);
}

std::vector<double> mixing_weights(const Partition& pi_hat, long n) {
  if (n < 1 || partition_total(pi_hat) != n) {
    throw Error(ErrorCode::InvalidParams, "partition does not sum to n");
  }
  std::vector<double> w;
  w.reserve(pi_hat.size());
  for (int nj : pi_hat) w.push_back(static_cast<double>(nj) / static_cast<double>(n));
  return w;
}

Eigen::VectorXd default_grid(const BinLayout& layout, int points) {
  if (points < 2) throw Error(ErrorCode::InvalidParams, "need at least 2 grid points");
  const double span = layout.upper() - layout.lower();
  const double lo = layout.lower() - 0.05 * span;
  const double hi = layout.upper() + 0.05 * span;
  return Eigen::VectorXd::LinSpaced(points, lo, hi);
}

}  // namespace binclust
