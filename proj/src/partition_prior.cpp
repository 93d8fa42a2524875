#include "binclust/partition_prior.hpp"

#include <cmath>

namespace binclust {

namespace {

void check_sizes_alpha(const Partition& sizes, double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw Error(ErrorCode::InvalidAlpha, "concentration must be positive and finite");
  }
  if (sizes.empty()) throw Error(ErrorCode::EmptyGroup, "partition has no groups");
  for (int nj : sizes) {
    if (nj < 1) throw Error(ErrorCode::EmptyGroup, "group sizes must be positive");
  }
}

// log (alpha)_n = log Gamma(alpha + n) - log Gamma(alpha)
double log_pochhammer(double alpha, long n) {
  return std::lgamma(alpha + static_cast<double>(n)) - std::lgamma(alpha);
}

}  // namespace

double log_eppf(const Partition& sizes, double alpha) {
  check_sizes_alpha(sizes, alpha);
  const long n = partition_total(sizes);
  const int k = static_cast<int>(sizes.size());
  double lp = k * std::log(alpha) - log_pochhammer(alpha, n);
  for (int nj : sizes) lp += std::lgamma(static_cast<double>(nj));
  return lp;
}

double log_restricted_prior(const Partition& sizes, double alpha) {
  check_sizes_alpha(sizes, alpha);
  const long n = partition_total(sizes);
  const int k = static_cast<int>(sizes.size());
  double lp = std::lgamma(static_cast<double>(n) + 1.0) -
              std::lgamma(static_cast<double>(k) + 1.0) +
              k * std::log(alpha) - log_pochhammer(alpha, n);
  for (int nj : sizes) lp -= std::log(static_cast<double>(nj));
  return lp;
}

std::vector<Partition> enumerate_compositions(int n) {
  if (n < 1) throw Error(ErrorCode::EmptyDataset, "need n >= 1");
  if (n > 24) throw Error(ErrorCode::TooLarge, "composition count 2^(n-1) too large");
  std::vector<Partition> out;
  out.reserve(std::size_t{1} << (n - 1));
  Partition prefix;
  // First part largest first, recurse on the remainder.
  auto rec = [&](auto&& self, int rest) -> void {
    if (rest == 0) {
      out.push_back(prefix);
      return;
    }
    for (int first = rest; first >= 1; --first) {
      prefix.push_back(first);
      self(self, rest - first);
      prefix.pop_back();
    }
  };
  rec(rec, n);
  return out;
}

}  // namespace binclust
